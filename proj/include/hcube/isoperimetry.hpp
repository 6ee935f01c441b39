#ifndef HCUBE_ISOPERIMETRY_HPP
#define HCUBE_ISOPERIMETRY_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hcube/errors.hpp"
#include "hcube/graph.hpp"
#include "hcube/numbers.hpp"
#include "hcube/vertex_set.hpp"

namespace hcube {

enum class Parity { even, odd };

inline const VertexSet& parity_class(const RegularBipartiteGraph& g, Parity p) {
  return p == Parity::even ? g.class_x() : g.class_y();
}

namespace detail {

// Vertices of the given parity ordered by (distance from center, id); the
// canonical ball of any size is a prefix of this order.
inline std::vector<Vertex> ball_order(int d, Parity p, Vertex center) {
  std::vector<Vertex> vs;
  for (Vertex v = 0; v < (Vertex(1) << d); ++v)
    if ((std::popcount(v) & 1) == (p == Parity::odd ? 1 : 0)) vs.push_back(v);
  std::stable_sort(vs.begin(), vs.end(), [&](Vertex a, Vertex b) {
    return std::popcount(a ^ center) < std::popcount(b ^ center);
  });
  return vs;
}

// Iterate over all s-subsets of `pool`, in Gosper order over pool indices.
template <typename Fn>
void for_each_subset_of_size(const std::vector<Vertex>& pool, std::size_t universe,
                             unsigned s, Fn&& fn) {
  unsigned m = unsigned(pool.size());
  if (s > m) return;
  if (m > 62) throw budget_error("subset sweep pool too large");
  if (s == 0) {
    fn(VertexSet(universe));
    return;
  }
  std::uint64_t mask = (std::uint64_t(1) << s) - 1;
  while (mask < (std::uint64_t(1) << m)) {
    VertexSet A(universe);
    std::uint64_t bits = mask;
    while (bits) {
      A.insert(pool[std::countr_zero(bits)]);
      bits &= bits - 1;
    }
    fn(A);
    std::uint64_t c = mask & (~mask + 1);
    std::uint64_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
}

}  // namespace detail

// Even/odd Hamming ball of exactly `size` vertices: full parity layers around
// the center, partial outer layer filled in ascending id.
inline VertexSet hamming_ball(int d, Parity p, std::size_t size, Vertex center) {
  if (d < 1 || d > kMaxCubeDim) throw size_limit_error("d out of range");
  std::size_t half = std::size_t(1) << (d - 1);
  if (size > half) throw std::domain_error("ball size exceeds the parity class");
  auto order = detail::ball_order(d, p, center);
  VertexSet out(std::size_t(1) << d);
  for (std::size_t i = 0; i < size; ++i) out.insert(order[i]);
  return out;
}

// Largest radius r whose class layers all fit fully inside a set of the given
// size (the inner radius of the canonical ball of that size). 0 when not even
// the innermost layer fits.
inline int ball_inner_radius(int d, Parity p, std::size_t size, Vertex center) {
  auto order = detail::ball_order(d, p, center);
  std::vector<std::size_t> cum_by_dist(d + 1, 0);
  for (Vertex v : order) ++cum_by_dist[std::popcount(v ^ center)];
  std::size_t cum = 0;
  int r = 0;
  for (int dist = 0; dist <= d; ++dist) {
    cum += cum_by_dist[dist];
    if (cum_by_dist[dist] > 0 && cum <= size) r = dist;
    if (cum > size) break;
  }
  return r;
}

// (|N(A)| - |A|) / |N(A)| as an exact rational.
inline Rational boundary_ratio(const RegularBipartiteGraph& g, const VertexSet& A) {
  if (A.empty()) throw std::domain_error("boundary_ratio requires nonempty A");
  std::uint64_t a = A.count();
  std::uint64_t n = g.neighborhood(A).count();
  return Rational(BigCount(n) - BigCount(a), BigCount(n));
}

// Minimum |N(A)| over all A of the given size in the parity class, with one
// lowest-lexicographic minimizer. Exhaustive (exact) for d <= 5; sampled +
// ball-based otherwise.
inline std::pair<std::size_t, VertexSet> min_neighborhood(int d, Parity p, std::size_t size,
                                                          bool exhaustive = true,
                                                          std::uint64_t seed = 1,
                                                          std::size_t samples = 20000) {
  auto g = RegularBipartiteGraph::hypercube(d);
  const VertexSet& cls = parity_class(g, p);
  if (size == 0 || size > cls.count()) throw std::domain_error("size out of range");

  std::size_t best = g.num_vertices() + 1;
  VertexSet arg(g.num_vertices());
  auto consider = [&](const VertexSet& A) {
    std::size_t n = g.neighborhood(A).count();
    if (n < best || (n == best && A.lex_less(arg))) {
      best = n;
      arg = A;
    }
  };

  if (exhaustive) {
    if (d > 5) throw budget_error("exhaustive min_neighborhood is limited to d <= 5");
    auto pool = cls.members();
    detail::for_each_subset_of_size(pool, g.num_vertices(), unsigned(size), consider);
  } else {
    for (Vertex c = 0; c < g.num_vertices(); ++c) consider(hamming_ball(d, p, size, c));
    std::mt19937_64 rng(seed);
    auto pool = cls.members();
    for (std::size_t i = 0; i < samples; ++i) {
      std::shuffle(pool.begin(), pool.end(), rng);
      VertexSet A(g.num_vertices());
      for (std::size_t j = 0; j < size; ++j) A.insert(pool[j]);
      consider(A);
    }
  }
  return {best, arg};
}

// (|B_i| / |N^+(B_i)| for the full distance-2i layer, the (2i+1)/(d-2i) cap).
// The two agree on every full layer.
inline std::pair<Rational, Rational> layer_ratio(int d, int i) {
  if (i < 0 || 2 * i >= d) throw std::domain_error("layer_ratio needs 0 <= 2i < d");
  Rational layer(binomial(unsigned(d), unsigned(2 * i)), binomial(unsigned(d), unsigned(2 * i + 1)));
  Rational cap(2 * i + 1, d - 2 * i);
  return {layer, cap};
}

struct ExpansionReport {
  Rational max_ratio;        // max |A|/|N(A)| over the explored range
  VertexSet argmax;
  Rational bound;            // (7/3)/d, the constant locked by the d <= 4 sweeps
  bool within_bound = false;
  bool exhaustive = false;
};

// Max |A|/|N(A)| over nonempty A in the even class with |A| <= max_size.
// Exhaustive for d <= 4; sampled + ball-based for 5 <= d <= 12.
inline ExpansionReport check_small_set_expansion(int d, std::size_t max_size,
                                                 std::uint64_t seed = 1,
                                                 std::size_t samples = 5000) {
  if (d < 1 || d > 12) throw std::domain_error("d must be in [1, 12]");
  auto g = RegularBipartiteGraph::hypercube(d);
  const VertexSet& cls = g.class_x();
  max_size = std::min(max_size, cls.count());

  ExpansionReport rep;
  rep.max_ratio = 0;
  rep.argmax = g.empty_set();
  rep.bound = Rational(7, 3 * d);
  rep.exhaustive = d <= 4;

  auto consider = [&](const VertexSet& A) {
    if (A.empty()) return;
    Rational r(BigCount(A.count()), BigCount(g.neighborhood(A).count()));
    if (r > rep.max_ratio) {
      rep.max_ratio = r;
      rep.argmax = A;
    }
  };

  auto pool = cls.members();
  if (rep.exhaustive) {
    for (std::size_t s = 1; s <= max_size; ++s)
      detail::for_each_subset_of_size(pool, g.num_vertices(), unsigned(s), consider);
  } else {
    for (std::size_t s = 1; s <= max_size; ++s)
      for (Vertex c = 0; c < g.num_vertices(); ++c)
        consider(hamming_ball(d, Parity::even, s, c));
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
      std::shuffle(pool.begin(), pool.end(), rng);
      std::size_t s = 1 + rng() % max_size;
      VertexSet A(g.num_vertices());
      for (std::size_t j = 0; j < s; ++j) A.insert(pool[j]);
      consider(A);
    }
  }
  rep.within_bound = rep.max_ratio <= rep.bound;
  return rep;
}

}  // namespace hcube

#endif
