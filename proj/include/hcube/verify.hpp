#ifndef HCUBE_VERIFY_HPP
#define HCUBE_VERIFY_HPP

#include <random>
#include <string>
#include <vector>

#include "hcube/census.hpp"
#include "hcube/combinatorics.hpp"
#include "hcube/containers.hpp"
#include "hcube/graph.hpp"
#include "hcube/isoperimetry.hpp"
#include "hcube/structure.hpp"

namespace hcube {

struct SuiteCheck {
  std::string name;
  bool passed = false;
  std::string detail;  // counterexample or metric when it matters
};

struct SuiteReport {
  std::string suite;
  int d = 0;
  std::vector<SuiteCheck> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  void add(std::string name, bool ok, std::string detail = "") {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
};

namespace detail {

template <typename Fn>
void sweep_class_subsets(const RegularBipartiteGraph& g, Fn&& fn) {
  auto pool = g.class_x().members();
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << pool.size()); ++mask) {
    VertexSet A(g.num_vertices());
    for (std::uint64_t b = mask; b; b &= b - 1) A.insert(pool[std::countr_zero(b)]);
    fn(A);
  }
}

// Seeded 2-linked sample: sparse random subset of the class, restricted to the
// 2-component of its lowest member so the container hypotheses apply.
inline VertexSet sample_two_linked(const RegularBipartiteGraph& g, std::mt19937_64& rng) {
  while (true) {
    VertexSet A(g.num_vertices());
    g.class_x().for_each([&](Vertex v) {
      if (rng() % 16 < 3) A.insert(v);
    });
    if (A.empty()) continue;
    return k_components(g, A, 2).parts[0];
  }
}

}  // namespace detail

inline SuiteReport verify_structure(int d) {
  SuiteReport rep{"structure", d};
  auto g = RegularBipartiteGraph::hypercube(d);
  bool extensive = true, idempotent = true, preserves = true, linked = true, additive = true;
  auto probe = [&](const VertexSet& A) {
    VertexSet cl = closure(g, A);
    extensive &= A.is_subset_of(cl);
    idempotent &= closure(g, cl) == cl;
    preserves &= g.neighborhood(cl) == g.neighborhood(A);
    if (is_k_linked(g, A, 2)) linked &= is_k_linked(g, cl, 2);
    std::size_t total = 0;
    for (const auto& part : k_components(g, A, 2).parts) total += g.neighborhood(part).count();
    additive &= g.neighborhood(A).count() == total;
  };
  if (d <= 4) {
    detail::sweep_class_subsets(g, probe);
  } else {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 2000; ++i) {
      VertexSet A(g.num_vertices());
      g.class_x().for_each([&](Vertex v) {
        if (rng() % 3 == 0) A.insert(v);
      });
      if (!A.empty()) probe(A);
    }
  }
  rep.add("closure extensive", extensive);
  rep.add("closure idempotent", idempotent);
  rep.add("closure preserves neighborhood", preserves);
  rep.add("closure keeps 2-linkage", linked);
  rep.add("neighborhood adds over 2-components", additive);
  return rep;
}

inline SuiteReport verify_combinatorics(int d, std::uint64_t seed = 1) {
  SuiteReport rep{"combinatorics", d};

  bool cover_ok = true;
  try {
    auto g = RegularBipartiteGraph::hypercube(std::min(d, 5));
    VertexSet q = greedy_cover_in_graph(g, g.class_x(), g.class_y());
    g.class_x().for_each([&](Vertex x) {
      if (!g.neighborhood_of(x).intersects(q)) cover_ok = false;
    });
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 20 && cover_ok; ++trial) {
      CoverInstance inst;
      inst.p_count = 2 + rng() % 20;
      inst.q_count = 2 + rng() % 20;
      inst.p_adj.resize(inst.p_count);
      for (auto& adj : inst.p_adj) {
        std::set<std::uint32_t> nb;
        std::size_t deg = 1 + rng() % inst.q_count;
        while (nb.size() < deg) nb.insert(std::uint32_t(rng() % inst.q_count));
        adj.assign(nb.begin(), nb.end());
      }
      auto cov = greedy_cover(inst);  // internal bound check throws on violation
      for (const auto& adj : inst.p_adj) {
        bool hit = false;
        for (auto y : adj) hit |= cov.contains(y);
        cover_ok &= hit;
      }
    }
  } catch (const std::exception&) {
    cover_ok = false;
  }
  rep.add("greedy cover covers within the ln-degree bound", cover_ok);

  bool trees = rooted_subtree_count(2, 3) == 5 && rooted_subtree_count(3, 2) == 3;
  rep.add("rooted subtree closed form", trees);

  bool entropy = true;
  for (int n = 1; n <= 30; ++n)
    for (int k = 0; 2 * k <= n; ++k) entropy &= entropy_bound_holds(n, Rational(k, n));
  rep.add("entropy bound exhaustive to N = 30", entropy);

  bool tails = true;
  try {
    for (int n = 3; n <= 40; ++n)
      for (int k = 1; 3 * k <= n; ++k) binomial_tail_bound(n, k);
  } catch (const std::exception&) {
    tails = false;
  }
  rep.add("binomial tail domination", tails);
  return rep;
}

inline SuiteReport verify_iso(int d) {
  SuiteReport rep{"iso", d};
  int dd = std::clamp(d, 3, 5);
  auto g = RegularBipartiteGraph::hypercube(dd);

  bool positive = true;
  detail::sweep_class_subsets(g, [&](const VertexSet& A) {
    if (2 * closure(g, A).count() <= g.class_x().count()) positive &= boundary_ratio(g, A) > 0;
  });
  rep.add("boundary ratio positive on small sets", positive);

  bool balls = true;
  for (std::size_t s = 1; s <= g.class_x().count(); ++s) {
    std::size_t exact = min_neighborhood(dd, Parity::even, s).first;
    std::size_t ball = g.num_vertices();
    for (Vertex c = 0; c < g.num_vertices(); ++c)
      ball = std::min(ball, g.neighborhood(hamming_ball(dd, Parity::even, s, c)).count());
    balls &= ball == exact;  // the canonical ball already attains the optimum here
  }
  rep.add("canonical balls attain the minimum neighborhood", balls);

  bool layers = true;
  for (int dim = 1; dim <= 12; ++dim)
    for (int i = 0; 2 * i < dim; ++i) {
      auto [layer, cap] = layer_ratio(dim, i);
      layers &= layer <= cap;
    }
  rep.add("layer ratio inequality to d = 12", layers);

  auto er = check_small_set_expansion(std::min(d, 12), std::size_t(std::min(d, 12)));
  rep.add("small-set expansion within 7/(3d)", er.within_bound,
          "max " + er.max_ratio.str());
  return rep;
}

inline SuiteReport verify_containers(int d, std::uint64_t seed = 1) {
  SuiteReport rep{"containers", d};
  auto g = RegularBipartiteGraph::hypercube(d);
  auto params = ContainerParams::defaults(d);
  params.seed = seed;

  std::uint64_t total = 0, covered = 0;
  std::string failure;
  auto probe = [&](const VertexSet& A) {
    ++total;
    try {
      SetStats st = set_stats(g, A);
      auto [approx, cert] = build_phi_approx(g, A, params);
      bool ok = verify_phi_approx(g, A, approx.f_prime, params.phi);
      auto pa = psi_refine(g, A, approx, params.psi);
      auto check = verify_psi_approx(g, A, pa.f, pa.s, params.psi);
      ok = ok && check.valid && check.size_bound;
      ReconstructTargets targets{st.a, st.g, st.t, st.G.front()};
      ok = ok && reconstruct_recovers(g, pa.f, pa.s, targets, params, A);
      if (ok)
        ++covered;
      else if (failure.empty())
        failure = A.str();
    } catch (const std::exception& e) {
      if (failure.empty()) failure = A.str() + ": " + e.what();
    }
  };

  if (d <= 4) {
    detail::sweep_class_subsets(g, [&](const VertexSet& A) {
      if (is_k_linked(g, A, 2)) probe(A);
    });
  } else {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 1000; ++i) probe(detail::sample_two_linked(g, rng));
  }
  rep.add("pipeline coverage " + std::to_string(covered) + "/" + std::to_string(total),
          covered == total, failure);
  return rep;
}

inline SuiteReport verify_census(int d) {
  SuiteReport rep{"census", d};
  int dd = std::clamp(d, 2, 5);
  BigCount a = count_independent_sets(dd);
  BigCount b = count_independent_sets(dd, CountMethod::disjoint_pairs);
  rep.add("counting methods agree", a == b, a.str());

  bool sandwich = upper_bound_check(dd) && a > (BigCount(1) << unsigned(1 << (dd - 1)));
  rep.add("count sandwiched by the small-set sum", sandwich);

  bool flower = true;
  for (int k = 0; k <= 4; ++k) flower &= Rational(f_k(dd, k)) >= f_k_lower(dd, k);
  rep.add("subset counts dominate the product bound", flower);
  return rep;
}

inline std::vector<SuiteReport> verify_suite(const std::string& name, int d,
                                             std::uint64_t seed = 1) {
  std::vector<SuiteReport> out;
  if (name == "structure" || name == "all") out.push_back(verify_structure(d));
  if (name == "combinatorics" || name == "all") out.push_back(verify_combinatorics(d, seed));
  if (name == "iso" || name == "all") out.push_back(verify_iso(d));
  if (name == "containers" || name == "all") out.push_back(verify_containers(d, seed));
  if (name == "census" || name == "all") out.push_back(verify_census(d));
  if (out.empty()) throw std::invalid_argument("unknown suite: " + name);
  return out;
}

}  // namespace hcube

#endif
