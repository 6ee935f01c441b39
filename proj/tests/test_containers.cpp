#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "hcube/containers.hpp"
#include "hcube/graph.hpp"
#include "hcube/structure.hpp"

using namespace hcube;

namespace {

template <typename Fn>
void for_each_two_linked(const RegularBipartiteGraph& g, Fn&& fn) {
  auto pool = g.class_x().members();
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << pool.size()); ++mask) {
    VertexSet A(g.num_vertices());
    for (std::uint64_t b = mask; b; b &= b - 1) A.insert(pool[std::countr_zero(b)]);
    if (is_k_linked(g, A, 2)) fn(A);
  }
}

}  // namespace

TEST_CASE("parameter defaults") {
  auto p3 = ContainerParams::defaults(3);
  REQUIRE(p3.phi == 2);
  REQUIRE(p3.psi == 2);
  REQUIRE_THAT(p3.gamma, Catch::Matchers::WithinRel(1.0 / std::log2(3.0), 1e-12));
  REQUIRE(p3.inclusion_probability(3, 2) == 1.0);  // raw value far above 1

  auto p8 = ContainerParams::defaults(8);
  REQUIRE(p8.phi == 4);  // ceil(8/2)
  REQUIRE(p8.psi == 3);  // ceil(8/3)

  ContainerParams bad;
  bad.phi = 5;
  REQUIRE_THROWS_AS(bad.resolve(4), std::invalid_argument);
  ContainerParams neg;
  neg.gamma = -1.0;
  REQUIRE_THROWS_AS(neg.resolve(4), std::invalid_argument);
}

TEST_CASE("high-degree part of the neighborhood") {
  auto q3 = RegularBipartiteGraph::hypercube(3);
  REQUIRE(g_phi(q3, q3.class_x(), 2) == q3.class_y());
  auto single = VertexSet::of(8, {0b000});
  REQUIRE(g_phi(q3, single, 1).empty());
  REQUIRE(g_phi(q3, single, 2).empty());
  REQUIRE_THROWS_AS(g_phi(q3, q3.empty_set(), 1), std::invalid_argument);
  REQUIRE_THROWS_AS(g_phi(q3, single, 3), std::invalid_argument);
}

TEST_CASE("first-stage verification") {
  auto q3 = RegularBipartiteGraph::hypercube(3);
  auto A = VertexSet::of(8, {0b000});
  REQUIRE(verify_phi_approx(q3, A, VertexSet::of(8, {0b001, 0b010, 0b100}), 1));
  REQUIRE(!verify_phi_approx(q3, A, q3.empty_set(), 1));       // misses the closure
  REQUIRE(!verify_phi_approx(q3, A, VertexSet::of(8, {0b111}), 1));  // outside N(A)
}

TEST_CASE("first-stage construction on a singleton") {
  auto q3 = RegularBipartiteGraph::hypercube(3);
  auto A = VertexSet::of(8, {0b000});
  ContainerParams params;
  params.phi = 1;
  auto [approx, cert] = build_phi_approx(q3, A, params);
  REQUIRE(cert.p == 1.0);  // sampling degenerates: everything is kept
  REQUIRE(cert.t0.members() == std::vector<Vertex>{0b001, 0b010, 0b100});
  REQUIRE(cert.t0_prime.empty());
  REQUIRE(cert.t1.empty());
  REQUIRE(approx.f_prime.members() == std::vector<Vertex>{0b001, 0b010, 0b100});
  REQUIRE(cert.retries == 1);

  REQUIRE_THROWS_AS(build_phi_approx(q3, q3.empty_set(), params), std::invalid_argument);
  REQUIRE_THROWS_AS(build_phi_approx(q3, VertexSet::of(8, {0b000, 0b111}), params),
                    std::invalid_argument);  // not 2-linked
  REQUIRE_THROWS_AS(build_phi_approx(q3, A, params, 2, Vertex(0b111)),
                    std::invalid_argument);  // anchor outside N(A)
}

TEST_CASE("second-stage refinement on a singleton") {
  auto q3 = RegularBipartiteGraph::hypercube(3);
  auto A = VertexSet::of(8, {0b000});
  PhiApprox fp{VertexSet::of(8, {0b001, 0b010, 0b100})};

  PsiRunStats stats;
  auto pa = psi_refine(q3, A, fp, 1, {}, &stats);
  REQUIRE(pa.f.members() == std::vector<Vertex>{0b001, 0b010, 0b100});
  REQUIRE(pa.s.members() == std::vector<Vertex>{0b000});
  REQUIRE(stats.step1_iterations == 0);
  REQUIRE(stats.step2_iterations == 1);  // w = 111 evicts {011,101,110}

  auto again = psi_refine(q3, A, fp, 1);
  REQUIRE(again.f == pa.f);
  REQUIRE(again.s == pa.s);  // deterministic

  // a permuted tie-break order may change the result but never its validity
  std::vector<std::uint32_t> reversed(8);
  std::iota(reversed.rbegin(), reversed.rend(), 0);
  auto permuted = psi_refine(q3, A, fp, 1, reversed);
  REQUIRE(verify_psi_approx(q3, A, permuted.f, permuted.s, 1).valid);

  REQUIRE_THROWS_AS(psi_refine(q3, A, fp, 3), std::invalid_argument);  // psi = d
  REQUIRE_THROWS_AS(psi_refine(q3, A, PhiApprox{q3.empty_set()}, 1),
                    std::invalid_argument);  // not an approximation for A
}

TEST_CASE("second-stage verification") {
  auto q3 = RegularBipartiteGraph::hypercube(3);
  auto A = VertexSet::of(8, {0b000});

  auto good = verify_psi_approx(q3, A, VertexSet::of(8, {0b001, 0b010, 0b100}),
                                VertexSet::of(8, {0b000}), 1);
  REQUIRE(good.valid);
  REQUIRE(good.size_bound);  // 1 <= 3 + 2*2*1/2

  auto bad = verify_psi_approx(q3, A, q3.empty_set(), q3.class_x(), 1);
  REQUIRE(!bad.inner_degrees);
  REQUIRE(!bad.valid);

  auto missing = verify_psi_approx(q3, A, VertexSet::of(8, {0b001, 0b010, 0b100}),
                                   q3.empty_set(), 1);
  REQUIRE(!missing.containments);
  REQUIRE(!missing.valid);
}

TEST_CASE("reconstruction on the singleton container") {
  auto q3 = RegularBipartiteGraph::hypercube(3);
  VertexSet F = VertexSet::of(8, {0b001, 0b010, 0b100});
  VertexSet S = VertexSet::of(8, {0b000});
  ReconstructTargets targets{1, 3, 2, 0b001};

  ContainerParams big;
  big.phi = 1;
  big.psi = 1;
  big.gamma = 1.0;
  ReconstructReport rep;
  std::vector<VertexSet> seen;
  rep = reconstruct_family(q3, F, S, targets, big, [&](const VertexSet& a) {
    seen.push_back(a);
    return true;
  });
  REQUIRE(!rep.small_branch);  // |S| = 1 is not below g - gamma*t = 1
  REQUIRE(rep.hypothesis_ok);
  REQUIRE(seen.size() == 1);
  REQUIRE(seen[0].members() == std::vector<Vertex>{0b000});

  ContainerParams tiny = big;
  tiny.gamma = 0.1;
  seen.clear();
  rep = reconstruct_family(q3, F, S, targets, tiny, [&](const VertexSet& a) {
    seen.push_back(a);
    return true;
  });
  REQUIRE(rep.small_branch);  // 1 < 3 - 0.2
  REQUIRE(rep.raw_candidates == 2);  // {} and {000}
  REQUIRE(seen.size() == 1);
  REQUIRE(seen[0].members() == std::vector<Vertex>{0b000});

  REQUIRE(reconstruct_family_all(q3, F, S, targets, big) ==
          std::vector<VertexSet>{VertexSet::of(8, {0b000})});
  REQUIRE(reconstruct_recovers(q3, F, S, targets, big, VertexSet::of(8, {0b000})));
  REQUIRE(!reconstruct_recovers(q3, F, S, targets, big, VertexSet::of(8, {0b011})));
}

TEST_CASE("reconstruction tolerates a violated size hypothesis") {
  auto q3 = RegularBipartiteGraph::hypercube(3);
  VertexSet F = q3.empty_set();
  VertexSet S = VertexSet::of(8, {0b000, 0b011});
  ReconstructTargets targets{4, 4, 0, 0b001};
  ContainerParams params;
  params.phi = 1;
  params.psi = 1;
  params.gamma = 1.0;

  std::vector<VertexSet> seen;
  auto rep = reconstruct_family(q3, F, S, targets, params, [&](const VertexSet& a) {
    seen.push_back(a);
    return true;
  });
  REQUIRE(!rep.hypothesis_ok);  // (|S| - |F|)(d - psi) = 4 > 2 t psi = 0
  REQUIRE(rep.small_branch);
  REQUIRE(rep.raw_candidates == 4);
  REQUIRE(seen.size() == 1);  // only {000,011} has |N| = 4 and closure size 4
  REQUIRE(seen[0].members() == std::vector<Vertex>{0b000, 0b011});
}

TEST_CASE("reconstruction budget") {
  auto q3 = RegularBipartiteGraph::hypercube(3);
  ContainerParams params;
  params.phi = 1;
  params.psi = 1;
  params.gamma = 0.001;  // force the small branch
  ReconstructTargets targets{1, 5, 2, 0b001};
  REQUIRE_THROWS_AS(
      reconstruct_family(q3, q3.empty_set(), q3.class_x(), targets, params,
                         [](const VertexSet&) { return true; }, /*budget=*/4),
      budget_error);
}

TEST_CASE("target-class enumeration") {
  auto q3 = RegularBipartiteGraph::hypercube(3);
  auto small = enumerate_G_agv(q3, 1, 3, 0b001);
  REQUIRE(small.size() == 3);  // 001 neighbors three of the four even vertices
  REQUIRE(small[0].members() == std::vector<Vertex>{0b000});
  REQUIRE(small[1].members() == std::vector<Vertex>{0b011});
  REQUIRE(small[2].members() == std::vector<Vertex>{0b101});

  REQUIRE(enumerate_G_agv(q3, 4, 4, 0b001).size() == 11);  // 6 pairs + 4 triples + all
  REQUIRE(enumerate_G_agv(q3, 2, 3, 0b001).empty());
}

TEST_CASE("pipeline on the smallest class") {
  auto q3 = RegularBipartiteGraph::hypercube(3);
  auto rep = container_pipeline(q3, 1, 3, 0b001, ContainerParams{});
  REQUIRE(rep.class_size == 3);
  REQUIRE(rep.covered == 3);
  REQUIRE(rep.all_valid);
  REQUIRE(rep.family_size <= 3);
  REQUIRE_THAT(rep.benchmark_log2,
               Catch::Matchers::WithinRel(3.0 - 2.0 / std::log2(3.0), 1e-12));

  auto empty = container_pipeline(q3, 2, 3, 0b001, ContainerParams{});
  REQUIRE(empty.class_size == 0);
  REQUIRE(empty.covered == 0);
  REQUIRE(empty.all_valid);  // vacuous
}

TEST_CASE("full pipeline invariants over all 2-linked sets") {
  for (int d : {3, 4}) {
    auto g = RegularBipartiteGraph::hypercube(d);
    auto params = ContainerParams::defaults(d);
    for_each_two_linked(g, [&](const VertexSet& A) {
      SetStats st = set_stats(g, A);
      auto [approx, cert] = build_phi_approx(g, A, params);
      REQUIRE(verify_phi_approx(g, A, approx.f_prime, params.phi));

      double p = cert.p;
      REQUIRE(double(cert.t0.count()) <= 4.0 * double(st.g) * p);
      REQUIRE(double(cert.omega.size()) <= 4.0 * double(st.t) * d * p);
      REQUIRE(cert.t0_prime.empty());  // p = 1 keeps all of N(A)

      PsiRunStats stats;
      auto pa = psi_refine(g, A, approx, params.psi, {}, &stats);
      auto check = verify_psi_approx(g, A, pa.f, pa.s, params.psi);
      REQUIRE(check.valid);
      REQUIRE(check.size_bound);

      double td = double(st.t) * d;
      REQUIRE(stats.step1_iterations <= td / ((d - params.phi) * params.psi) + 1);
      REQUIRE(stats.step2_iterations <= td / ((d - params.psi) * params.psi) + 1);

      ReconstructTargets targets{st.a, st.g, st.t, st.G.front()};
      REQUIRE(reconstruct_recovers(g, pa.f, pa.s, targets, params, A));
    });
  }
}

TEST_CASE("components of a split set are covered independently") {
  auto q4 = RegularBipartiteGraph::hypercube(4);
  auto A = VertexSet::of(16, {0b0000, 0b1111});  // two 2-components
  auto comps = k_components(q4, A, 2);
  REQUIRE(comps.parts.size() == 2);
  auto params = ContainerParams::defaults(4);
  std::size_t total_nbhd = 0;
  for (const auto& part : comps.parts) {
    SetStats st = set_stats(q4, part);
    auto [approx, cert] = build_phi_approx(q4, part, params);
    auto pa = psi_refine(q4, part, approx, params.psi);
    ReconstructTargets targets{st.a, st.g, st.t, st.G.front()};
    REQUIRE(reconstruct_recovers(q4, pa.f, pa.s, targets, params, part));
    total_nbhd += st.g;
  }
  REQUIRE(q4.neighborhood(A).count() == total_nbhd);
}
