#include <catch2/catch_amalgamated.hpp>

#include "hcube/census.hpp"
#include "hcube/structure.hpp"

using namespace hcube;

namespace {

// Independent oracle for the small-set sum: plain graph-API sweep, no bit
// tricks shared with the implementation.
Rational small_set_sum_oracle(int d) {
  auto g = RegularBipartiteGraph::hypercube(d);
  auto pool = g.class_x().members();
  Rational sum = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << pool.size()); ++mask) {
    VertexSet A(g.num_vertices());
    for (std::uint64_t b = mask; b; b &= b - 1) A.insert(pool[std::countr_zero(b)]);
    if (!is_small(g, A)) continue;
    sum += Rational(1, BigCount(1) << unsigned(g.neighborhood(A).count()));
  }
  return sum;
}

}  // namespace

TEST_CASE("independent-set counts agree across methods") {
  const std::vector<std::uint64_t> expected{3, 7, 35, 743, 254475};
  for (int d = 1; d <= 5; ++d) {
    REQUIRE(count_independent_sets(d) == expected[d - 1]);
    REQUIRE(count_independent_sets(d, CountMethod::disjoint_pairs) == expected[d - 1]);
  }
  REQUIRE_THROWS_AS(count_independent_sets(7), size_limit_error);
  REQUIRE_THROWS_AS(count_independent_sets(0), size_limit_error);
}

TEST_CASE("extended count at d = 6") {
  auto a = count_independent_sets(6);
  auto b = count_independent_sets(6, CountMethod::disjoint_pairs);
  REQUIRE(a == b);
  REQUIRE(a == BigCount("19768832143"));
}

TEST_CASE("small-set sums") {
  REQUIRE(sum_small_sets(2).str() == "1/2^0");
  REQUIRE(sum_small_sets(3).str() == "3/2^1");
  REQUIRE(sum_small_sets(4).str() == "35/2^4");
  REQUIRE(sum_small_sets(5).str() == "5753/2^11");

  for (int d = 2; d <= 5; ++d)
    REQUIRE(sum_small_sets(d).to_rational() == small_set_sum_oracle(d));

  // non-decreasing over the computed range
  for (int d = 2; d < 5; ++d)
    REQUIRE(sum_small_sets(d).to_rational() <= sum_small_sets(d + 1).to_rational());

  REQUIRE_THROWS_AS(sum_small_sets(6), size_limit_error);
}

TEST_CASE("the count is sandwiched by the small-set sum") {
  for (int d = 2; d <= 5; ++d) {
    REQUIRE(upper_bound_check(d));
    // trivial lower bound: more independent sets than subsets of one class
    REQUIRE(count_independent_sets(d) > BigCount(1) << unsigned(1 << (d - 1)));
  }
  REQUIRE_THROWS_AS(upper_bound_check(1), size_limit_error);
}

TEST_CASE("disjoint-neighborhood subset counts") {
  REQUIRE(f_k(3, 1) == 4);
  REQUIRE(f_k(3, 2) == 0);  // only 4 odd vertices for 6 required neighbors
  REQUIRE(f_k(4, 2) == 4);  // exactly the antipodal even pairs
  REQUIRE(f_k(5, 2) == 40);
  REQUIRE(f_k(5, 0) == 1);
}

TEST_CASE("product lower bound for f_k") {
  REQUIRE(f_k_lower(4, 2) == Rational(4));  // (1/2) * 8 * (8 - 7)
  REQUIRE(f_k_lower(3, 2) == Rational(0));  // (1/2) * 4 * (4 - 4)
  REQUIRE(f_k_lower(7, 0) == Rational(1));
  REQUIRE(f_k_lower(20, 0) == Rational(1));

  for (int d = 1; d <= 5; ++d)
    for (int k = 0; k <= 4; ++k) {
      Rational lower = f_k_lower(d, k);
      REQUIRE(Rational(f_k(d, k)) >= lower);
      REQUIRE(Rational(f_k(d, k)) == lower);  // exact at desk scale
    }

  // the uncorrected index overshoots: it would claim f(2) >= 60 at d = 4
  REQUIRE(f_k_lower(4, 2, /*literal_index=*/true) == Rational(60));
  REQUIRE(f_k_lower(4, 2, true) > Rational(f_k(4, 2)));
}

TEST_CASE("assembled lower bound") {
  auto a3 = lower_bound_assembly(3);
  REQUIRE(a3.negative);  // the 2^{2 d^2} correction dominates 48
  REQUIRE_THAT(a3.log2_abs.convert_to<double>(),
               Catch::Matchers::WithinAbs(std::log2(std::exp2(18.0) - 48.0), 1e-9));

  // once the correction is negligible the k = 0 term alone gives 2 * 2^{2^{d-1}}
  for (int d : {10, 14, 20}) {
    auto a = lower_bound_assembly(d);
    REQUIRE(!a.negative);
    REQUIRE(a.log2_abs > Real(BigCount(1) << unsigned(d - 1)));
  }

  auto a14 = lower_bound_assembly(14);
  double ratio =
      boost::multiprecision::exp2(a14.log2_abs - asymptotic_estimate_log2(14)).convert_to<double>();
  REQUIRE(ratio >= 0.998602402067322 - 0.03);
  REQUIRE(ratio <= 0.998602402067322 + 0.005);
}

TEST_CASE("asymptotic estimate") {
  REQUIRE_THAT(asymptotic_estimate_log2(1).convert_to<double>(),
               Catch::Matchers::WithinAbs(2.7213475, 1e-6));
  REQUIRE_THAT(asymptotic_estimate_log2(3).convert_to<double>(),
               Catch::Matchers::WithinAbs(5.7213475, 1e-6));
  REQUIRE_THAT(asymptotic_estimate_log2(10).convert_to<double>(),
               Catch::Matchers::WithinAbs(513.7213475, 1e-6));
  REQUIRE_THAT(boost::multiprecision::exp2(asymptotic_estimate_log2(1)).convert_to<double>(),
               Catch::Matchers::WithinAbs(6.5949, 1e-3));
}

TEST_CASE("count-to-asymptote ratios") {
  auto rows = ratio_table(5);
  const std::vector<double> expected{0.4549, 0.5307, 0.6634, 0.8802, 1.1776};
  REQUIRE(rows.size() == 5);
  for (int d = 1; d <= 5; ++d) {
    REQUIRE(rows[d - 1].first == d);
    REQUIRE_THAT(rows[d - 1].second, Catch::Matchers::WithinAbs(expected[d - 1], 1e-3));
  }
  REQUIRE_THROWS_AS(ratio_table(6), size_limit_error);
  REQUIRE(ratio_table(6, /*extended=*/true).size() == 6);
}

TEST_CASE("dyadic accumulator") {
  DyadicRational s;
  s.add_term(1, 0);
  s.add_term(1, 3);
  s.add_term(1, 3);
  REQUIRE(s.str() == "5/2^2");
  REQUIRE(s.to_rational() == Rational(5, 4));

  REQUIRE_THAT(LogValue::lse2(Real(3), Real(3)).convert_to<double>(),
               Catch::Matchers::WithinAbs(4.0, 1e-12));
}
