#ifndef HCUBE_CONTAINERS_HPP
#define HCUBE_CONTAINERS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hcube/combinatorics.hpp"
#include "hcube/errors.hpp"
#include "hcube/graph.hpp"
#include "hcube/structure.hpp"
#include "hcube/vertex_set.hpp"

namespace hcube {

struct ContainerParams {
  int phi = 0;          // 0 -> ceil(d/2)
  int psi = 0;          // 0 -> ceil(c' * d / log2 d), clamped to [1, d-1]
  double gamma = 0.0;   // 0 -> c / log2 d
  double c = 1.0;
  double c_prime = 1.0;
  std::uint64_t seed = 1;
  int max_retries = 1000;

  static ContainerParams defaults(int d) {
    ContainerParams p;
    p.resolve(d);
    return p;
  }

  // Fill the parameter defaults for dimension d.
  void resolve(int d) {
    if (d < 2) throw std::invalid_argument("container parameters need d >= 2");
    double lg = std::log2(double(d));
    if (phi == 0) phi = (d + 1) / 2;
    if (psi == 0) psi = std::clamp(int(std::ceil(c_prime * d / lg)), 1, d - 1);
    if (gamma == 0.0) gamma = c / lg;
    if (phi < 1 || phi > d - 1) throw std::invalid_argument("phi must be in [1, d-1]");
    if (psi < 1 || psi > d - 1) throw std::invalid_argument("psi must be in [1, d-1]");
    if (gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
  }

  // Sampling probability min(1, 20 * Δ2 * log2 d / (phi * d)); the clamp keeps
  // the construction meaningful at small d, where the raw value exceeds 1.
  double inclusion_probability(int d, int co_degree) const {
    return std::min(1.0, 20.0 * co_degree * std::log2(double(d)) / (double(phi) * d));
  }
};

// G^phi: members of G = N(A) with more than phi neighbors inside [A].
inline VertexSet g_phi(const RegularBipartiteGraph& g, const VertexSet& A, int phi) {
  if (A.empty()) throw std::invalid_argument("g_phi requires nonempty A");
  if (phi < 1 || phi > g.degree() - 1) throw std::invalid_argument("phi must be in [1, d-1]");
  VertexSet cl = closure(g, A);
  VertexSet G = g.neighborhood(A);
  VertexSet out(g.num_vertices());
  G.for_each([&](Vertex y) {
    if (g.degree_into(y, cl) > phi) out.insert(y);
  });
  return out;
}

struct PhiApprox {
  VertexSet f_prime;
};

struct ApproxCertificate {
  VertexSet t0, t0_prime, t1;
  std::vector<std::pair<Vertex, Vertex>> omega;  // ∇(T0, X \ [A])
  int retries = 0;
  double p = 0.0;
};

// F' ⊆ G with G^phi ⊆ F' and N(F') ⊇ [A].
inline bool verify_phi_approx(const RegularBipartiteGraph& g, const VertexSet& A,
                              const VertexSet& f_prime, int phi) {
  if (A.empty()) return false;
  VertexSet G = g.neighborhood(A);
  if (!g_phi(g, A, phi).is_subset_of(f_prime)) return false;
  if (!f_prime.is_subset_of(G)) return false;
  return closure(g, A).is_subset_of(g.neighborhood(f_prime));
}

// Randomized construction: sample T0 ⊆ G, retry until the certificate bounds
// hold, then patch the missed high-degree part and greedily cover what the
// sampled part leaves uncovered.
inline std::pair<PhiApprox, ApproxCertificate> build_phi_approx(
    const RegularBipartiteGraph& g, const VertexSet& A, ContainerParams params,
    int co_degree = 2, std::optional<Vertex> anchor = std::nullopt) {
  if (A.empty()) throw std::invalid_argument("build_phi_approx requires nonempty A");
  int d = g.degree();
  params.resolve(d);
  if (!is_k_linked(g, A, 2)) throw std::invalid_argument("A must be 2-linked");

  SetStats st = set_stats(g, A);
  VertexSet high = g_phi(g, A, params.phi);
  Vertex v = anchor.value_or(st.G.front());
  if (!st.G.contains(v)) throw std::invalid_argument("anchor must lie in N(A)");

  const VertexSet& X = g.in_x(A.front()) ? g.class_x() : g.class_y();
  VertexSet x_minus_closure = X - st.closure;

  double p = params.inclusion_probability(d, co_degree);
  double t0_cap = 4.0 * double(st.g) * p;
  double omega_cap = 4.0 * double(st.t) * d * p;
  double t0p_cap = 3.0 * double(st.g) / std::pow(double(d), 10);

  std::mt19937_64 rng(params.seed);
  std::bernoulli_distribution keep(p);

  ApproxCertificate cert;
  cert.p = p;
  VertexSet L(g.num_vertices());
  bool ok = false;
  for (int attempt = 1; attempt <= params.max_retries; ++attempt) {
    cert.retries = attempt;
    VertexSet t0(g.num_vertices());
    if (p >= 1.0) {
      t0 = st.G;
    } else {
      st.G.for_each([&](Vertex y) {
        if (keep(rng)) t0.insert(y);
      });
    }
    t0.insert(v);

    auto omega = g.nabla(t0, x_minus_closure, /*keep_edges=*/true);
    VertexSet reached = g.neighborhood(g.neighborhood(t0) & st.closure);
    VertexSet t0_prime = high - reached;

    if (double(t0.count()) <= t0_cap && double(omega.count) <= omega_cap &&
        double(t0_prime.count()) <= t0p_cap) {
      cert.t0 = std::move(t0);
      cert.t0_prime = t0_prime;
      cert.omega = std::move(omega.edges);
      L = reached | t0_prime;
      ok = true;
      break;
    }
  }
  if (!ok)
    throw construction_error("phi-approximation sampling failed after " +
                             std::to_string(params.max_retries) + " retries (p=" +
                             std::to_string(p) + ")");

  VertexSet uncovered = st.closure - g.neighborhood(L);
  VertexSet t1(g.num_vertices());
  if (!uncovered.empty()) t1 = greedy_cover_in_graph(g, uncovered, st.G - L);
  cert.t1 = t1;

  PhiApprox out;
  out.f_prime = (L & st.G) | cert.t0_prime | t1;
  if (!verify_phi_approx(g, A, out.f_prime, params.phi))
    throw std::logic_error("constructed F' is not a phi-approximation");
  return {std::move(out), std::move(cert)};
}

struct PsiApprox {
  VertexSet f;  // ⊆ Y
  VertexSet s;  // ⊆ X
};

struct PsiRunStats {
  int step1_iterations = 0;
  int step2_iterations = 0;
};

struct PsiCheck {
  bool containments = false;   // F ⊆ G and S ⊇ [A]
  bool inner_degrees = false;  // d_F(u) >= d - psi for all u in S
  bool outer_degrees = false;  // d_{X\S}(w) >= d - psi for all w in Y\F
  bool valid = false;
  bool size_bound = false;     // |S| <= |F| + 2 t psi / (d - psi)
};

inline PsiCheck verify_psi_approx(const RegularBipartiteGraph& g, const VertexSet& A,
                                  const VertexSet& F, const VertexSet& S, int psi) {
  PsiCheck out;
  int d = g.degree();
  SetStats st = set_stats(g, A);
  const VertexSet& X = g.in_x(A.front()) ? g.class_x() : g.class_y();
  const VertexSet& Y = g.in_x(A.front()) ? g.class_y() : g.class_x();

  out.containments = F.is_subset_of(st.G) && st.closure.is_subset_of(S);
  out.inner_degrees = true;
  S.for_each([&](Vertex u) {
    if (g.degree_into(u, F) < d - psi) out.inner_degrees = false;
  });
  out.outer_degrees = true;
  VertexSet x_minus_s = X - S;
  (Y - F).for_each([&](Vertex w) {
    if (g.degree_into(w, x_minus_s) < d - psi) out.outer_degrees = false;
  });
  out.valid = out.containments && out.inner_degrees && out.outer_degrees;
  // |S| - |F| <= 2 t psi / (d - psi), cross-multiplied to stay exact
  out.size_bound = (std::int64_t(S.count()) - std::int64_t(F.count())) * (d - psi) <=
                   2 * st.t * psi;
  return out;
}

// The two-step refinement. Deterministic given (A, F', psi, ordering); the
// ordering is a rank array over vertex ids (empty = ascending id).
inline PsiApprox psi_refine(const RegularBipartiteGraph& g, const VertexSet& A,
                            const PhiApprox& phi_approx, int psi,
                            const std::vector<std::uint32_t>& ordering = {},
                            PsiRunStats* stats = nullptr) {
  int d = g.degree();
  if (psi < 1 || psi > d - 1) throw std::invalid_argument("psi must be in [1, d-1]");
  if (A.empty()) throw std::invalid_argument("psi_refine requires nonempty A");
  SetStats st = set_stats(g, A);
  if (!phi_approx.f_prime.is_subset_of(st.G) ||
      !st.closure.is_subset_of(g.neighborhood(phi_approx.f_prime)))
    throw std::invalid_argument("F' is not an approximation for A");
  if (!ordering.empty() && ordering.size() != g.num_vertices())
    throw std::invalid_argument("ordering must rank every vertex");

  auto rank = [&](Vertex v) { return ordering.empty() ? v : ordering[v]; };
  auto least = [&](const VertexSet& candidates, auto&& pred) -> Vertex {
    Vertex best = VertexSet::npos;
    candidates.for_each([&](Vertex u) {
      if (pred(u) && (best == VertexSet::npos || rank(u) < rank(best))) best = u;
    });
    return best;
  };

  const VertexSet& X = g.in_x(A.front()) ? g.class_x() : g.class_y();
  const VertexSet& Y = g.in_x(A.front()) ? g.class_y() : g.class_x();
  PsiRunStats local;

  // Step 1: absorb neighborhoods of closure vertices still seeing too much of
  // G outside F'.
  VertexSet F = phi_approx.f_prime;
  while (true) {
    VertexSet outside = st.G - F;
    Vertex u = least(st.closure, [&](Vertex w) { return g.degree_into(w, outside) > psi; });
    if (u == VertexSet::npos) break;
    F |= g.neighborhood_of(u);
    ++local.step1_iterations;
  }
  VertexSet S(g.num_vertices());
  X.for_each([&](Vertex u) {
    if (g.degree_into(u, F) >= d - psi) S.insert(u);
  });

  // Step 2: delete neighborhoods of outside-Y vertices still seeing too much
  // of S.
  VertexSet y_minus_g = Y - st.G;
  while (true) {
    Vertex w = least(y_minus_g, [&](Vertex u) { return g.degree_into(u, S) > psi; });
    if (w == VertexSet::npos) break;
    S -= g.neighborhood_of(w);
    ++local.step2_iterations;
  }
  VertexSet F_final = F;
  Y.for_each([&](Vertex w) {
    if (g.degree_into(w, S) > psi) F_final.insert(w);
  });

  if (stats) *stats = local;
  PsiApprox out{std::move(F_final), std::move(S)};
  if (!verify_psi_approx(g, A, out.f, out.s, psi).valid)
    throw std::logic_error("refinement produced an invalid psi-approximation");
  return out;
}

struct ReconstructTargets {
  std::uint64_t a = 0;
  std::uint64_t g = 0;
  std::int64_t t = 0;
  Vertex v = 0;
};

struct ReconstructReport {
  bool hypothesis_ok = true;  // size hypothesis |S| <= |F| + 2 t psi/(d-psi)
  bool small_branch = false;
  std::uint64_t raw_candidates = 0;
  std::uint64_t emitted = 0;
  bool stopped_early = false;
};

// Stream every A consistent with the container (F, S) and the target
// statistics. The callback receives each filtered candidate; returning false
// stops the stream. Candidates pass the filter iff they are 2-linked with
// |[A]| = a, |N(A)| = g, and v ∈ N(A).
template <typename Emit>
ReconstructReport reconstruct_family(const RegularBipartiteGraph& graph, const VertexSet& F,
                                     const VertexSet& S, const ReconstructTargets& targets,
                                     const ContainerParams& params, Emit&& emit,
                                     std::uint64_t budget = 100'000'000) {
  int d = graph.degree();
  ContainerParams pr = params;
  pr.resolve(d);
  ReconstructReport rep;

  rep.hypothesis_ok = (std::int64_t(S.count()) - std::int64_t(F.count())) * (d - pr.psi) <=
                      2 * targets.t * pr.psi;

  auto filter_and_emit = [&](const VertexSet& cand) -> bool {
    if (++rep.raw_candidates > budget)
      throw budget_error("reconstruction budget exceeded after " +
                         std::to_string(rep.raw_candidates - 1) + " candidates");
    if (cand.empty()) return true;
    VertexSet nb = graph.neighborhood(cand);
    if (nb.count() != targets.g || !nb.contains(targets.v)) return true;
    if (closure(graph, cand).count() != targets.a) return true;
    if (!is_k_linked(graph, cand, 2)) return true;
    ++rep.emitted;
    if (!emit(cand)) {
      rep.stopped_early = true;
      return false;
    }
    return true;
  };

  auto stream_subsets = [&](const VertexSet& base) -> bool {
    auto pool = base.members();
    if (pool.size() > 62) throw budget_error("reconstruction base set too large");
    std::uint64_t full = pool.size() == 0 ? 0 : ((std::uint64_t(1) << pool.size()) - 1);
    for (std::uint64_t mask = 0;; ++mask) {
      VertexSet cand(graph.num_vertices());
      std::uint64_t bits = mask;
      while (bits) {
        cand.insert(pool[std::countr_zero(bits)]);
        bits &= bits - 1;
      }
      if (!filter_and_emit(cand)) return false;
      if (mask == full) break;
    }
    return true;
  };

  double threshold = double(targets.g) - pr.gamma * double(targets.t);
  rep.small_branch = double(S.count()) < threshold;

  if (rep.small_branch) {
    stream_subsets(S);
    return rep;
  }

  // Large case: G must extend F by a small subset of N(S) \ F; each guess of
  // the extension determines a candidate closure whose subsets we stream.
  // Candidates live in the class of S (opposite the class of F).
  const VertexSet& X =
      !S.empty() ? (graph.in_x(S.front()) ? graph.class_x() : graph.class_y())
                 : (!F.empty() && graph.in_x(F.front()) ? graph.class_y() : graph.class_x());
  double ext_bound = 2.0 * double(targets.t) * pr.psi / double(d - pr.psi) +
                     pr.gamma * double(targets.t);
  VertexSet ext_pool_set = graph.neighborhood(S) - F;
  auto ext_pool = ext_pool_set.members();
  if (ext_pool.size() > 62) throw budget_error("reconstruction extension pool too large");

  std::uint64_t full = ext_pool.size() == 0 ? 0 : ((std::uint64_t(1) << ext_pool.size()) - 1);
  for (std::uint64_t mask = 0;; ++mask) {
    // non-strict: with t = 0 the bound is 0 and D = ∅ (i.e. G = F) must still
    // be admitted or valid containers with a tight fit lose their source set
    if (double(std::popcount(mask)) <= ext_bound) {
      VertexSet g_star = F;
      std::uint64_t bits = mask;
      while (bits) {
        g_star.insert(ext_pool[std::countr_zero(bits)]);
        bits &= bits - 1;
      }
      VertexSet candidate_closure(graph.num_vertices());
      X.for_each([&](Vertex u) {
        if (graph.neighborhood_of(u).is_subset_of(g_star)) candidate_closure.insert(u);
      });
      if (!stream_subsets(candidate_closure)) return rep;
    }
    if (mask == full) break;
  }
  return rep;
}

inline std::vector<VertexSet> reconstruct_family_all(
    const RegularBipartiteGraph& graph, const VertexSet& F, const VertexSet& S,
    const ReconstructTargets& targets, const ContainerParams& params,
    std::uint64_t budget = 100'000'000) {
  std::vector<VertexSet> out;
  reconstruct_family(graph, F, S, targets, params,
                     [&](const VertexSet& A) {
                       out.push_back(A);
                       return true;
                     },
                     budget);
  std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) {
    return a.lex_less(b);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool reconstruct_recovers(const RegularBipartiteGraph& graph, const VertexSet& F,
                                 const VertexSet& S, const ReconstructTargets& targets,
                                 const ContainerParams& params, const VertexSet& A,
                                 std::uint64_t budget = 100'000'000) {
  bool found = false;
  reconstruct_family(graph, F, S, targets, params,
                     [&](const VertexSet& cand) {
                       if (cand == A) {
                         found = true;
                         return false;
                       }
                       return true;
                     },
                     budget);
  return found;
}

// 𝒢(a, g, v): 2-linked A ⊆ X with |[A]| = a, |N(A)| = g, v ∈ N(A), in
// ascending lexicographic order.
inline std::vector<VertexSet> enumerate_G_agv(const RegularBipartiteGraph& graph,
                                              std::uint64_t a, std::uint64_t g_size, Vertex v,
                                              std::uint64_t budget = 100'000'000) {
  auto pool = graph.class_x().members();
  if (pool.size() > 62) throw budget_error("class too large for exhaustive enumeration");
  std::uint64_t full = (std::uint64_t(1) << pool.size()) - 1;
  if (full > budget) throw budget_error("enumeration budget exceeded");
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 1; mask <= full; ++mask) {
    VertexSet A(graph.num_vertices());
    std::uint64_t bits = mask;
    while (bits) {
      A.insert(pool[std::countr_zero(bits)]);
      bits &= bits - 1;
    }
    VertexSet nb = graph.neighborhood(A);
    if (nb.count() != g_size || !nb.contains(v)) continue;
    if (closure(graph, A).count() != a) continue;
    if (!is_k_linked(graph, A, 2)) continue;
    out.push_back(std::move(A));
  }
  std::sort(out.begin(), out.end(), [](const VertexSet& x, const VertexSet& y) {
    return x.lex_less(y);
  });
  return out;
}

struct PipelineReport {
  std::uint64_t class_size = 0;      // |𝒢(a,g,v)|
  std::uint64_t covered = 0;         // members recovered from their own container
  std::uint64_t family_size = 0;     // distinct (F,S) pairs
  double benchmark_log2 = 0.0;       // g - c' t / log2 d, reported as data
  bool all_valid = true;
  std::vector<VertexSet> failures;
};

// Run the full approximation pipeline over 𝒢(a,g,v) and verify coverage.
inline PipelineReport container_pipeline(const RegularBipartiteGraph& graph, std::uint64_t a,
                                         std::uint64_t g_size, Vertex v,
                                         ContainerParams params, int co_degree = 2) {
  params.resolve(graph.degree());
  auto members = enumerate_G_agv(graph, a, g_size, v);
  PipelineReport rep;
  rep.class_size = members.size();
  double t = double(g_size) - double(a);
  rep.benchmark_log2 = double(g_size) - params.c_prime * t / std::log2(double(graph.degree()));

  std::unordered_set<std::size_t> family;
  std::uint64_t index = 0;
  for (const auto& A : members) {
    ContainerParams local = params;
    local.seed = params.seed * 0x9e3779b97f4a7c15ULL + (++index);  // per-A stream
    auto [phi_approx, cert] = build_phi_approx(graph, A, local, co_degree, v);
    PsiApprox pa = psi_refine(graph, A, phi_approx, local.psi);
    PsiCheck check = verify_psi_approx(graph, A, pa.f, pa.s, local.psi);
    SetStats st = set_stats(graph, A);
    ReconstructTargets targets{st.a, st.g, st.t, v};
    bool recovered = reconstruct_recovers(graph, pa.f, pa.s, targets, local, A);
    bool ok = check.valid && check.size_bound && recovered &&
              verify_phi_approx(graph, A, phi_approx.f_prime, local.phi);
    if (ok)
      ++rep.covered;
    else {
      rep.all_valid = false;
      rep.failures.push_back(A);
    }
    family.insert(pa.f.hash() * 31 + pa.s.hash());
  }
  rep.family_size = family.size();
  return rep;
}

}  // namespace hcube

#endif
