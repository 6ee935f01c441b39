#ifndef HCUBE_NUMBERS_HPP
#define HCUBE_NUMBERS_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace hcube {

// Exact arbitrary-precision count.
using BigCount = boost::multiprecision::cpp_int;

// Exact rational.
using Rational = boost::multiprecision::cpp_rational;

// High-precision real for log-domain work (113-bit mantissa is plenty for
// integer parts up to 2^29 plus > 64 fractional bits, but we use 100 decimal
// digits so entropy comparisons at N = 30 have absurd margin).
using Real = boost::multiprecision::cpp_bin_float_100;

inline BigCount binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigCount r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

inline BigCount factorial(unsigned n) {
  BigCount r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

// value = numerator / 2^exponent, kept in lowest terms with exponent >= 0.
struct DyadicRational {
  BigCount numerator = 0;
  std::int64_t exponent = 0;

  void normalize() {
    if (numerator == 0) {
      exponent = 0;
      return;
    }
    while (exponent > 0 && (numerator & 1) == 0) {
      numerator >>= 1;
      --exponent;
    }
  }

  // this += num / 2^exp
  void add_term(const BigCount& num, std::int64_t exp) {
    if (exp >= exponent) {
      numerator = (numerator << static_cast<unsigned>(exp - exponent)) + num;
      exponent = exp;
    } else {
      numerator += num << static_cast<unsigned>(exponent - exp);
    }
    normalize();
  }

  bool operator==(const DyadicRational& o) const {
    return numerator == o.numerator && exponent == o.exponent;
  }

  Rational to_rational() const {
    BigCount den = BigCount(1) << static_cast<unsigned>(exponent);
    return Rational(numerator, den);
  }

  std::string str() const {
    return numerator.str() + "/2^" + std::to_string(exponent);
  }
};

inline Real log2_real(const Real& x) { return boost::multiprecision::log2(x); }

inline Real log2_big(const BigCount& n) {
  return boost::multiprecision::log2(Real(n));
}

inline Real log2_rational(const Rational& q) {
  return log2_big(boost::multiprecision::numerator(q)) -
         log2_big(boost::multiprecision::denominator(q));
}

// A non-negative magnitude 2^log2; census-scale values never fit a double.
struct LogValue {
  Real log2 = 0;

  static LogValue from_log2(const Real& l) { return LogValue{l}; }

  // log2(2^a + 2^b), stable.
  static Real lse2(const Real& a, const Real& b) {
    if (a < b) return lse2(b, a);
    return a + boost::multiprecision::log2(1 + boost::multiprecision::exp2(b - a));
  }

  LogValue operator+(const LogValue& o) const { return LogValue{lse2(log2, o.log2)}; }
  LogValue operator*(const LogValue& o) const { return LogValue{log2 + o.log2}; }
};

}  // namespace hcube

#endif
