#include <catch2/catch_amalgamated.hpp>

#include <bit>

#include "hcube/graph.hpp"
#include "hcube/isoperimetry.hpp"

using namespace hcube;

namespace {

// Independent oracle: minimum |N(B)| over all parity balls of a given size,
// ranging over every center and every way of filling the partial outer layer.
std::size_t ball_min_neighborhood(int d, Parity p, std::size_t size) {
  auto g = RegularBipartiteGraph::hypercube(d);
  std::size_t best = g.num_vertices() + 1;
  for (Vertex c = 0; c < g.num_vertices(); ++c) {
    // group class vertices by distance from the center
    std::vector<std::vector<Vertex>> layers(d + 1);
    parity_class(g, p).for_each(
        [&](Vertex v) { layers[std::popcount(v ^ c)].push_back(v); });
    VertexSet full(g.num_vertices());
    std::size_t taken = 0;
    for (int dist = 0; dist <= d && taken <= size; ++dist) {
      if (layers[dist].empty()) continue;
      if (taken + layers[dist].size() <= size) {
        for (Vertex v : layers[dist]) full.insert(v);
        taken += layers[dist].size();
        continue;
      }
      // partial layer: try every fill of the remainder
      detail::for_each_subset_of_size(layers[dist], g.num_vertices(),
                                      unsigned(size - taken), [&](const VertexSet& part) {
                                        best = std::min(best, g.neighborhood(full | part).count());
                                      });
      taken = size + 1;  // done with this center
    }
    if (taken == size) best = std::min(best, g.neighborhood(full).count());
  }
  return best;
}

}  // namespace

TEST_CASE("hamming balls") {
  REQUIRE(hamming_ball(3, Parity::even, 1, 0b000).members() == std::vector<Vertex>{0b000});
  auto q3 = RegularBipartiteGraph::hypercube(3);
  REQUIRE(hamming_ball(3, Parity::even, 4, 0b000) == q3.class_x());
  REQUIRE(hamming_ball(3, Parity::even, 2, 0b000).members() ==
          std::vector<Vertex>{0b000, 0b011});
  REQUIRE(hamming_ball(3, Parity::odd, 3, 0b000) == q3.class_y() - VertexSet::of(8, {0b111}));
  REQUIRE_THROWS_AS(hamming_ball(3, Parity::even, 5, 0), std::domain_error);
}

TEST_CASE("ball inner radius") {
  REQUIRE(ball_inner_radius(3, Parity::even, 1, 0) == 0);
  REQUIRE(ball_inner_radius(3, Parity::even, 3, 0) == 0);  // layer 2 only partial
  REQUIRE(ball_inner_radius(3, Parity::even, 4, 0) == 2);
  REQUIRE(ball_inner_radius(5, Parity::even, 11, 0) == 2);
  REQUIRE(ball_inner_radius(5, Parity::even, 10, 0) == 0);
}

TEST_CASE("boundary ratios") {
  auto q3 = RegularBipartiteGraph::hypercube(3);
  auto q2 = RegularBipartiteGraph::hypercube(2);
  REQUIRE(boundary_ratio(q3, VertexSet::of(8, {0b000})) == Rational(2, 3));
  REQUIRE(boundary_ratio(q3, VertexSet::of(8, {0b000, 0b011})) == Rational(1, 2));
  REQUIRE(boundary_ratio(q2, VertexSet::of(4, {0b00})) == Rational(1, 2));
  REQUIRE_THROWS_AS(boundary_ratio(q3, q3.empty_set()), std::domain_error);
}

TEST_CASE("minimum neighborhoods") {
  REQUIRE(min_neighborhood(3, Parity::even, 1).first == 3);
  REQUIRE(min_neighborhood(3, Parity::even, 2).first == 4);
  REQUIRE(min_neighborhood(4, Parity::even, 2).first == 6);

  // size-4 minimizer in Q_4 is the distance-2 "star", not a plain radius ball
  auto [n4, arg4] = min_neighborhood(4, Parity::even, 4);
  REQUIRE(n4 == 7);
  REQUIRE(arg4.members() == std::vector<Vertex>{0b0000, 0b0011, 0b0101, 0b1001});

  REQUIRE_THROWS_AS(min_neighborhood(3, Parity::even, 0), std::domain_error);
  REQUIRE_THROWS_AS(min_neighborhood(6, Parity::even, 2), budget_error);
  REQUIRE(min_neighborhood(6, Parity::even, 2, /*exhaustive=*/false).first == 10);
}

TEST_CASE("balls attain the minimum neighborhood (exhaustive, d <= 5)") {
  for (int d : {3, 4, 5})
    for (std::size_t s = 1; s <= (std::size_t(1) << (d - 1)); ++s) {
      std::size_t exact = min_neighborhood(d, Parity::even, s).first;
      REQUIRE(ball_min_neighborhood(d, Parity::even, s) == exact);
      REQUIRE(ball_min_neighborhood(d, Parity::odd, s) ==
              min_neighborhood(d, Parity::odd, s).first);
    }
}

TEST_CASE("boundary ratio is positive and >= 1/3 on small sets") {
  for (int d : {3, 4, 5}) {
    auto g = RegularBipartiteGraph::hypercube(d);
    auto pool = g.class_x().members();
    std::size_t cap = std::size_t(1) << (d - 2);
    Rational worst(1);
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << pool.size()); ++mask) {
      if (std::size_t(std::popcount(mask)) > cap) continue;
      VertexSet A(g.num_vertices());
      for (std::uint64_t b = mask; b; b &= b - 1) A.insert(pool[std::countr_zero(b)]);
      // every size up to 2^{d-2} realizes inner radius 0 <= d/4 here
      REQUIRE(ball_inner_radius(d, Parity::even, A.count(), 0) == 0);
      auto r = boundary_ratio(g, A);
      REQUIRE(r > 0);
      worst = std::min(worst, r);
    }
    REQUIRE(worst >= Rational(1, 3));
    REQUIRE(worst == (d == 3 ? Rational(1, 2) : Rational(3, 7)));
  }
}

TEST_CASE("layer ratios") {
  REQUIRE(layer_ratio(5, 1) == std::pair{Rational(1), Rational(1)});
  REQUIRE(layer_ratio(4, 0) == std::pair{Rational(1, 4), Rational(1, 4)});
  REQUIRE(layer_ratio(6, 1) == std::pair{Rational(15, 20), Rational(3, 4)});
  REQUIRE_THROWS_AS(layer_ratio(4, 2), std::domain_error);
  REQUIRE_THROWS_AS(layer_ratio(3, -1), std::domain_error);

  for (int d = 1; d <= 12; ++d)
    for (int i = 0; 2 * i < d; ++i) {
      auto [layer, cap] = layer_ratio(d, i);
      REQUIRE(layer <= cap);
      REQUIRE(layer == cap);  // full layers: the two coincide identically
    }
}

TEST_CASE("small-set expansion reports") {
  auto r1 = check_small_set_expansion(3, 1);
  REQUIRE(r1.max_ratio == Rational(1, 3));
  REQUIRE(r1.within_bound);
  REQUIRE(r1.exhaustive);

  auto r2 = check_small_set_expansion(4, 2);
  REQUIRE(r2.max_ratio == Rational(1, 3));
  REQUIRE(r2.within_bound);

  auto r3 = check_small_set_expansion(4, 4);
  REQUIRE(r3.max_ratio == Rational(4, 7));
  REQUIRE(r3.argmax.members() == std::vector<Vertex>{0b0000, 0b0011, 0b0101, 0b1001});
  REQUIRE(r3.within_bound);  // 4/7 <= 7/12

  auto r5 = check_small_set_expansion(5, 5);
  REQUIRE(!r5.exhaustive);
  REQUIRE(r5.max_ratio >= Rational(5, 11));  // sampled mode still finds the ball optimum
  REQUIRE(r5.within_bound);

  REQUIRE_THROWS_AS(check_small_set_expansion(13, 2), std::domain_error);
}
