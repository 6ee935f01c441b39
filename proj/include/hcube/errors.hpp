#ifndef HCUBE_ERRORS_HPP
#define HCUBE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hcube {

// Requested instance exceeds the hard representation caps (d > 20, > 2^20 vertices).
struct size_limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Distance query between vertices in different components.
struct no_path_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An exhaustive or streaming enumeration ran past its work budget.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cover instance with an uncoverable element.
struct infeasible_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Randomized construction failed to meet its bounds within max_retries.
struct construction_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Graph file rejected; line is 1-based.
struct parse_error : std::runtime_error {
  int line;
  parse_error(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

}  // namespace hcube

#endif
