#ifndef HCUBE_STRUCTURE_HPP
#define HCUBE_STRUCTURE_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hcube/graph.hpp"
#include "hcube/vertex_set.hpp"

namespace hcube {

namespace detail {

// The class (X or Y) containing every member of A; throws if A straddles.
inline const VertexSet& side_of(const RegularBipartiteGraph& g, const VertexSet& A) {
  if (A.is_subset_of(g.class_x())) return g.class_x();
  if (A.is_subset_of(g.class_y())) return g.class_y();
  throw std::invalid_argument("set straddles both bipartition classes");
}

// Members of A within distance <= k of u (including u itself).
inline VertexSet near_members(const RegularBipartiteGraph& g, const VertexSet& A,
                              Vertex u, int k) {
  VertexSet out(A.universe());
  if (g.is_hypercube()) {
    A.for_each([&](Vertex v) {
      if (std::popcount(u ^ v) <= k) out.insert(v);
    });
    return out;
  }
  VertexSet frontier(A.universe());
  VertexSet visited(A.universe());
  frontier.insert(u);
  visited.insert(u);
  if (A.contains(u)) out.insert(u);
  for (int step = 0; step < k && !frontier.empty(); ++step) {
    VertexSet nxt = g.neighborhood(frontier) - visited;
    visited |= nxt;
    out |= nxt & A;
    frontier = nxt;
  }
  return out;
}

}  // namespace detail

// [A] = {v in the class of A : N(v) ⊆ N(A)}. Idempotent and extensive; ∅ -> ∅.
inline VertexSet closure(const RegularBipartiteGraph& g, const VertexSet& A) {
  VertexSet out(A.universe());
  if (A.empty()) return out;
  const VertexSet& side = detail::side_of(g, A);
  VertexSet G = g.neighborhood(A);
  side.for_each([&](Vertex v) {
    bool inside = true;
    g.for_each_neighbor(v, [&](Vertex u) { inside = inside && G.contains(u); });
    if (inside) out.insert(v);
  });
  return out;
}

// |[A]| <= |X|/2, X the class of A. The empty set counts as small.
inline bool is_small(const RegularBipartiteGraph& g, const VertexSet& A) {
  if (A.empty()) return true;
  const VertexSet& side = detail::side_of(g, A);
  return 2 * closure(g, A).count() <= side.count();
}

// True iff the auxiliary graph on A joining pairs at distance <= k is
// connected. Vacuously true for |A| <= 1.
inline bool is_k_linked(const RegularBipartiteGraph& g, const VertexSet& A, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  Vertex start = A.front();
  if (start == VertexSet::npos) return true;
  VertexSet reached(A.universe());
  reached.insert(start);
  VertexSet frontier = reached;
  while (!frontier.empty()) {
    VertexSet grown(A.universe());
    frontier.for_each([&](Vertex u) { grown |= detail::near_members(g, A, u, k); });
    grown -= reached;
    reached |= grown;
    frontier = grown;
  }
  return reached == A;
}

struct ComponentDecomposition {
  std::vector<VertexSet> parts;  // ordered by minimum member id
  int k = 0;
};

// Maximal k-linked subsets of A (connected components of the distance-<=k
// auxiliary graph).
inline ComponentDecomposition k_components(const RegularBipartiteGraph& g,
                                           const VertexSet& A, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  ComponentDecomposition out;
  out.k = k;
  VertexSet remaining = A;
  while (!remaining.empty()) {
    Vertex seed = remaining.front();
    VertexSet comp(A.universe());
    comp.insert(seed);
    VertexSet frontier = comp;
    while (!frontier.empty()) {
      VertexSet grown(A.universe());
      frontier.for_each([&](Vertex u) { grown |= detail::near_members(g, remaining, u, k); });
      grown -= comp;
      comp |= grown;
      frontier = grown;
    }
    remaining -= comp;
    out.parts.push_back(std::move(comp));
  }
  return out;
}

// A, [A], G = N(A), and the sizes a = |[A]|, g = |G|, t = g - a.
struct SetStats {
  VertexSet A;
  VertexSet closure;
  VertexSet G;
  std::uint64_t a = 0;
  std::uint64_t g = 0;
  std::int64_t t = 0;
};

inline SetStats set_stats(const RegularBipartiteGraph& g, const VertexSet& A) {
  if (A.empty()) throw std::invalid_argument("set_stats requires nonempty A");
  SetStats s;
  s.A = A;
  s.closure = closure(g, A);
  s.G = g.neighborhood(A);
  s.a = s.closure.count();
  s.g = s.G.count();
  s.t = std::int64_t(s.g) - std::int64_t(s.a);
  return s;
}

}  // namespace hcube

#endif
