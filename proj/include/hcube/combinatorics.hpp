#ifndef HCUBE_COMBINATORICS_HPP
#define HCUBE_COMBINATORICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hcube/errors.hpp"
#include "hcube/graph.hpp"
#include "hcube/numbers.hpp"
#include "hcube/structure.hpp"
#include "hcube/vertex_set.hpp"

namespace hcube {

// Covering instance: bipartite graph with sides P (to be covered) and Q
// (the covering side), indexed 0..p_count-1 and 0..q_count-1.
struct CoverInstance {
  std::size_t p_count = 0;
  std::size_t q_count = 0;
  std::vector<std::vector<std::uint32_t>> p_adj;  // p -> neighbors in Q

  int min_degree_p() const {
    std::size_t a = q_count;
    for (const auto& nb : p_adj) a = std::min(a, nb.size());
    return int(a);
  }
  int max_degree_q() const {
    std::vector<std::size_t> deg(q_count, 0);
    for (const auto& nb : p_adj)
      for (auto q : nb) ++deg[q];
    std::size_t b = 0;
    for (auto d : deg) b = std::max(b, d);
    return int(b);
  }

  // Induced instance: P covered by Q through the host graph's edges.
  static CoverInstance from_graph(const RegularBipartiteGraph& g, const VertexSet& P,
                                  const VertexSet& Q) {
    CoverInstance inst;
    std::vector<std::uint32_t> qid(g.num_vertices(), 0);
    std::uint32_t next = 0;
    Q.for_each([&](Vertex v) { qid[v] = next++; });
    inst.q_count = next;
    P.for_each([&](Vertex p) {
      std::vector<std::uint32_t> nb;
      g.for_each_neighbor(p, [&](Vertex u) {
        if (Q.contains(u)) nb.push_back(qid[u]);
      });
      std::sort(nb.begin(), nb.end());
      inst.p_adj.push_back(std::move(nb));
    });
    inst.p_count = inst.p_adj.size();
    return inst;
  }
};

// Greedy cover: repeatedly pick the q covering the most uncovered p's, ties by
// smallest id. The output always respects the (|Q|/a)(1 + ln b) size bound,
// which is re-checked on every invocation.
inline VertexSet greedy_cover(const CoverInstance& inst) {
  for (std::size_t p = 0; p < inst.p_count; ++p)
    if (inst.p_adj[p].empty())
      throw infeasible_error("element " + std::to_string(p) + " of P has no neighbor in Q");

  std::vector<std::vector<std::uint32_t>> q_adj(inst.q_count);
  for (std::size_t p = 0; p < inst.p_count; ++p)
    for (auto q : inst.p_adj[p]) q_adj[q].push_back(std::uint32_t(p));

  VertexSet uncovered(inst.p_count);
  for (std::size_t p = 0; p < inst.p_count; ++p) uncovered.insert(Vertex(p));
  VertexSet chosen(inst.q_count);

  while (!uncovered.empty()) {
    std::size_t best_gain = 0;
    std::uint32_t best_q = 0;
    for (std::uint32_t q = 0; q < inst.q_count; ++q) {
      if (chosen.contains(q)) continue;
      std::size_t gain = 0;
      for (auto p : q_adj[q]) gain += uncovered.contains(p);
      if (gain > best_gain) {
        best_gain = gain;
        best_q = q;
      }
    }
    chosen.insert(best_q);
    for (auto p : q_adj[best_q]) uncovered.erase(p);
  }

  int a = inst.min_degree_p();
  int b = inst.max_degree_q();
  double bound = (double(inst.q_count) / a) * (1.0 + std::log(double(b)));
  if (double(chosen.count()) > bound + 1e-9)
    throw std::logic_error("greedy cover exceeded the (|Q|/a)(1+ln b) bound");
  return chosen;
}

// Same, but P and Q live inside a host graph; returns host vertex ids.
inline VertexSet greedy_cover_in_graph(const RegularBipartiteGraph& g, const VertexSet& P,
                                       const VertexSet& Q) {
  VertexSet local = greedy_cover(CoverInstance::from_graph(g, P, Q));
  VertexSet out(g.num_vertices());
  std::uint32_t idx = 0;
  Q.for_each([&](Vertex v) {
    if (local.contains(idx)) out.insert(v);
    ++idx;
  });
  return out;
}

// Number of n-vertex rooted subtrees of the infinite branching-Δ rooted tree:
// C(Δn, n) / ((Δ-1)n + 1), always an exact integer.
inline BigCount rooted_subtree_count(int branching, int n) {
  if (branching < 1 || n < 1) throw std::invalid_argument("branching and n must be >= 1");
  BigCount num = binomial(unsigned(branching) * unsigned(n), unsigned(n));
  BigCount den = BigCount(branching - 1) * n + 1;
  BigCount q = num / den;
  if (q * den != num) throw std::logic_error("subtree formula did not divide exactly");
  return q;
}

// Exact enumeration of k-linked n-subsets of v's bipartition class that
// contain v. Budget counts recursion nodes.
inline BigCount count_k_linked_sets(const RegularBipartiteGraph& g, Vertex v, int n, int k,
                                    std::uint64_t budget = 50'000'000) {
  if (n < 1 || k < 1) throw std::invalid_argument("n and k must be >= 1");
  const VertexSet& side = g.in_x(v) ? g.class_x() : g.class_y();

  // auxiliary adjacency: same-side vertices at distance <= k
  auto aux_neighbors = [&](Vertex u) {
    return detail::near_members(g, side, u, k);
  };

  BigCount total = 0;
  std::uint64_t nodes = 0;
  // Connected-subgraph enumeration: grow from v, extension list in ascending
  // id, with an excluded set so each subset is produced exactly once.
  VertexSet excluded(g.num_vertices());
  std::vector<Vertex> ext;
  VertexSet current(g.num_vertices());
  current.insert(v);

  auto initial = aux_neighbors(v);
  initial.erase(v);
  initial.for_each([&](Vertex u) { ext.push_back(u); });

  auto rec = [&](auto&& self, std::size_t size, std::vector<Vertex> extension) -> void {
    if (++nodes > budget) throw budget_error("k-linked enumeration budget exceeded");
    if (size == std::size_t(n)) {
      ++total;
      return;
    }
    std::vector<Vertex> locally_excluded;
    while (!extension.empty()) {
      Vertex u = extension.front();
      extension.erase(extension.begin());
      current.insert(u);
      std::vector<Vertex> grown = extension;
      aux_neighbors(u).for_each([&](Vertex w) {
        if (w != u && !current.contains(w) && !excluded.contains(w) &&
            std::find(grown.begin(), grown.end(), w) == grown.end())
          grown.push_back(w);
      });
      std::sort(grown.begin(), grown.end());
      self(self, size + 1, std::move(grown));
      current.erase(u);
      excluded.insert(u);
      locally_excluded.push_back(u);
    }
    for (Vertex u : locally_excluded) excluded.erase(u);
  };
  rec(rec, 1, std::move(ext));
  return total;
}

// H(x) = -x log2 x - (1-x) log2 (1-x), with H(0) = H(1) = 0.
inline double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) throw std::domain_error("binary_entropy needs x in [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

// Exact check of sum_{i <= floor(cN)} C(N,i) <= 2^{H(c)N} for c <= 1/2.
inline bool entropy_bound_holds(int N, const Rational& c) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (c < 0 || c > Rational(1, 2)) throw std::domain_error("c must be in [0, 1/2]");
  Rational cn = c * N;
  auto floor_cn = boost::multiprecision::numerator(cn) / boost::multiprecision::denominator(cn);
  unsigned m = floor_cn.convert_to<unsigned>();
  BigCount lhs = 0;
  for (unsigned i = 0; i <= m; ++i) lhs += binomial(unsigned(N), i);
  if (lhs == 1) return true;  // 2^{H(c)N} >= 1 always
  Real cr(c);
  Real h = -cr * log2_real(cr) - (1 - cr) * log2_real(1 - cr);
  return log2_big(lhs) <= h * N;
}

// (sum_{i<=k} C(n,i), (en/k)^k). When k <= n/3 the sum is dominated by the
// exact geometric-series bound C(n,k)(n-k+1)/(n-2k+1), checked in integers.
inline std::pair<BigCount, double> binomial_tail_bound(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
  BigCount sum = 0;
  for (int i = 0; i <= k; ++i) sum += binomial(unsigned(n), unsigned(i));
  double rhs = std::pow(std::exp(1.0) * n / k, k);
  if (3 * k <= n) {
    BigCount lhs = sum * (n - 2 * k + 1);
    BigCount dom = binomial(unsigned(n), unsigned(k)) * (n - k + 1);
    if (lhs > dom) throw std::logic_error("geometric-series tail domination failed");
  }
  return {sum, rhs};
}

}  // namespace hcube

#endif
