#ifndef HCUBE_CENSUS_HPP
#define HCUBE_CENSUS_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hcube/errors.hpp"
#include "hcube/graph.hpp"
#include "hcube/numbers.hpp"
#include "hcube/vertex_set.hpp"

namespace hcube {

namespace detail {

// Closed-neighborhood masks of Q_d packed into 64-bit words (d <= 6).
inline std::vector<std::uint64_t> cube_closed_neighborhoods(int d) {
  if (d < 1 || d > 6) throw size_limit_error("mask-based counting needs d <= 6");
  std::size_t n = std::size_t(1) << d;
  std::vector<std::uint64_t> nb(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::uint64_t m = std::uint64_t(1) << v;
    for (int i = 0; i < d; ++i) m |= std::uint64_t(1) << (v ^ (std::size_t(1) << i));
    nb[v] = m;
  }
  return nb;
}

// Connected component of `avail` containing its lowest vertex.
inline std::uint64_t component_of_lowest(const std::vector<std::uint64_t>& closed_nb,
                                         std::uint64_t avail) {
  std::uint64_t comp = avail & (~avail + 1);
  while (true) {
    std::uint64_t grown = comp;
    std::uint64_t bits = comp;
    while (bits) {
      int v = std::countr_zero(bits);
      bits &= bits - 1;
      grown |= closed_nb[v] & avail;
    }
    if (grown == comp) return comp;
    comp = grown;
  }
}

// Branch-and-count with component splitting: pick a max-degree vertex, count
// configurations with and without it.
class BranchCounter {
 public:
  explicit BranchCounter(std::vector<std::uint64_t> closed_nb)
      : closed_nb_(std::move(closed_nb)) {}

  std::uint64_t count(std::uint64_t avail) {
    if (avail == 0) return 1;
    auto it = memo_.find(avail);
    if (it != memo_.end()) return it->second;
    std::uint64_t comp = component_of_lowest(closed_nb_, avail);
    std::uint64_t result;
    if (comp != avail) {
      result = count(comp) * count(avail & ~comp);
    } else {
      int best = -1, best_deg = -1;
      std::uint64_t bits = avail;
      while (bits) {
        int v = std::countr_zero(bits);
        bits &= bits - 1;
        int deg = std::popcount(closed_nb_[v] & avail) - 1;
        if (deg > best_deg) {
          best_deg = deg;
          best = v;
        }
      }
      result = count(avail & ~(std::uint64_t(1) << best))  // best excluded
               + count(avail & ~closed_nb_[best]);         // best included
    }
    memo_.emplace(avail, result);
    return result;
  }

 private:
  std::vector<std::uint64_t> closed_nb_;
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

// Ordered pairs of disjoint independent sets, counted by a three-way
// vertex-state recursion (skip / first set / second set).
class DisjointPairCounter {
 public:
  explicit DisjointPairCounter(std::vector<std::uint64_t> closed_nb)
      : closed_nb_(std::move(closed_nb)) {
    if (closed_nb_.size() > 32) throw size_limit_error("pair counting needs <= 32 vertices");
  }

  std::uint64_t count(std::uint64_t avail_s, std::uint64_t avail_t) {
    std::uint64_t both = avail_s | avail_t;
    if (both == 0) return 1;
    std::uint64_t key = (avail_s << 32) | avail_t;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    std::uint64_t comp = component_of_lowest(closed_nb_, both);
    std::uint64_t result;
    if (comp != both) {
      result = count(avail_s & comp, avail_t & comp) *
               count(avail_s & ~comp, avail_t & ~comp);
    } else {
      int v = std::countr_zero(both);
      std::uint64_t bit = std::uint64_t(1) << v;
      result = count(avail_s & ~bit, avail_t & ~bit);
      if (avail_s & bit) result += count(avail_s & ~closed_nb_[v], avail_t & ~bit);
      if (avail_t & bit) result += count(avail_s & ~bit, avail_t & ~closed_nb_[v]);
    }
    memo_.emplace(key, result);
    return result;
  }

 private:
  std::vector<std::uint64_t> closed_nb_;
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

// Per-class-vertex neighborhood masks over Y indices, for subset sweeps.
struct ClassMasks {
  std::vector<Vertex> x_members, y_members;
  std::vector<std::uint32_t> nb;  // x index -> mask over y indices
};

inline ClassMasks cube_class_masks(int d) {
  if (d < 1 || d > 5) throw size_limit_error("class sweeps need d <= 5");
  auto g = RegularBipartiteGraph::hypercube(d);
  ClassMasks cm;
  cm.x_members = g.class_x().members();
  cm.y_members = g.class_y().members();
  std::vector<std::uint32_t> yid(g.num_vertices(), 0);
  for (std::size_t i = 0; i < cm.y_members.size(); ++i) yid[cm.y_members[i]] = std::uint32_t(i);
  for (Vertex x : cm.x_members) {
    std::uint32_t m = 0;
    g.for_each_neighbor(x, [&](Vertex y) { m |= std::uint32_t(1) << yid[y]; });
    cm.nb.push_back(m);
  }
  return cm;
}

}  // namespace detail

enum class CountMethod { branching, disjoint_pairs };

// Exact |I(Q_d)|, empty set included. Two structurally different methods are
// provided; they must agree.
inline BigCount count_independent_sets(int d, CountMethod method = CountMethod::branching) {
  if (d < 1 || d > 6) throw size_limit_error("exact counting supports d <= 6");
  if (method == CountMethod::branching) {
    detail::BranchCounter bc(detail::cube_closed_neighborhoods(d));
    std::uint64_t full = d == 6 ? ~std::uint64_t(0) : ((std::uint64_t(1) << (1 << d)) - 1);
    return BigCount(bc.count(full));
  }
  // |I(G x K_2)| = #(ordered disjoint independent pairs of G), G = Q_{d-1}
  if (d == 1) return 3;  // K_2 directly
  detail::DisjointPairCounter pc(detail::cube_closed_neighborhoods(d - 1));
  std::uint64_t full = (d - 1 == 6) ? ~std::uint64_t(0) : ((std::uint64_t(1) << (1 << (d - 1))) - 1);
  return BigCount(pc.count(full, full));
}

// Σ over small A ⊆ ℰ of 2^{-|N(A)|}, exact (the ∅ term contributes 1).
inline DyadicRational sum_small_sets(int d) {
  if (d < 1 || d > 5) throw size_limit_error("sum_small_sets supports d <= 5");
  auto cm = detail::cube_class_masks(d);
  unsigned m = unsigned(cm.x_members.size());
  DyadicRational sum;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
    std::uint32_t nbh = 0;
    std::uint64_t bits = mask;
    while (bits) {
      nbh |= cm.nb[std::countr_zero(bits)];
      bits &= bits - 1;
    }
    // closure size: class vertices whose whole neighborhood lies in N(A)
    unsigned closure_size = 0;
    if (mask != 0)
      for (unsigned i = 0; i < m; ++i) closure_size += (cm.nb[i] & ~nbh) == 0;
    if (2 * closure_size <= m) sum.add_term(1, std::popcount(nbh));
  }
  return sum;
}

// count_independent_sets(d) <= 2 * sum_small_sets(d) * 2^{2^{d-1}}, exactly.
inline bool upper_bound_check(int d) {
  if (d < 2 || d > 5) throw size_limit_error("upper_bound_check supports 2 <= d <= 5");
  BigCount count = count_independent_sets(d);
  DyadicRational s = sum_small_sets(d);
  // count * 2^exp <= 2 * num * 2^{2^{d-1}}
  BigCount lhs = count << unsigned(s.exponent);
  BigCount rhs = (s.numerator * 2) << unsigned(1 << (d - 1));
  return lhs <= rhs;
}

// Number of k-subsets S of ℰ with |N(S)| = kd (pairwise disjoint
// neighborhoods).
inline BigCount f_k(int d, int k, std::uint64_t budget = 100'000'000) {
  if (d < 1 || d > 5 || k < 0) throw size_limit_error("f_k sweep supports d <= 5");
  if (k == 0) return 1;
  auto cm = detail::cube_class_masks(d);
  unsigned m = unsigned(cm.x_members.size());
  if (unsigned(k) > m) return 0;
  BigCount total = 0;
  std::uint64_t visited = 0;
  std::uint64_t mask = (std::uint64_t(1) << k) - 1;
  while (mask < (std::uint64_t(1) << m)) {
    if (++visited > budget) throw budget_error("f_k budget exceeded");
    std::uint32_t nbh = 0;
    std::uint64_t bits = mask;
    while (bits) {
      nbh |= cm.nb[std::countr_zero(bits)];
      bits &= bits - 1;
    }
    if (std::popcount(nbh) == k * d) ++total;
    std::uint64_t c = mask & (~mask + 1);
    std::uint64_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
  return total;
}

// (1/k!) * prod_{j=0}^{k-1} (2^{d-1} - j (C(d,2)+1)), clamped at 0 when a
// factor goes negative. literal_index reproduces the uncorrected (j-1) form
// for comparison.
inline Rational f_k_lower(int d, int k, bool literal_index = false) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  if (k == 0) return 1;
  BigCount half = BigCount(1) << unsigned(d - 1);
  BigCount step = binomial(unsigned(d), 2) + 1;
  BigCount prod = 1;
  for (int j = 0; j < k; ++j) {
    BigCount factor = half - BigCount(literal_index ? j - 1 : j) * step;
    if (factor < 0) return 0;
    prod *= factor;
  }
  return Rational(prod, factorial(unsigned(k)));
}

struct AssembledBound {
  bool negative = false;  // the 2^{2d^2} correction dominates
  Real log2_abs = 0;      // log2 of |value|
};

// 2 * Σ_{k<=d} f_k_lower(k) 2^{2^{d-1}-kd} - 2^{2d^2}, in log domain.
inline AssembledBound lower_bound_assembly(int d) {
  if (d < 1 || d > 30) throw size_limit_error("lower_bound_assembly supports d <= 30");
  Real sum_log2 = 0;
  bool have = false;
  for (int k = 0; k <= d; ++k) {
    Rational fl = f_k_lower(d, k);
    if (fl == 0) continue;
    Real term = log2_rational(fl) + Real(BigCount(1) << unsigned(d - 1)) - Real(k) * d;
    sum_log2 = have ? LogValue::lse2(sum_log2, term) : term;
    have = true;
  }
  Real positive_log2 = sum_log2 + 1;  // the factor of 2
  Real correction_log2 = Real(2) * d * d;
  AssembledBound out;
  if (positive_log2 > correction_log2) {
    out.negative = false;
    out.log2_abs =
        positive_log2 + log2_real(1 - boost::multiprecision::exp2(correction_log2 - positive_log2));
  } else if (positive_log2 < correction_log2) {
    out.negative = true;
    out.log2_abs =
        correction_log2 + log2_real(1 - boost::multiprecision::exp2(positive_log2 - correction_log2));
  } else {
    out.negative = false;
    out.log2_abs = 0;  // exact zero cannot happen with the k=0 term present
  }
  return out;
}

// log2 of 2 sqrt(e) 2^{2^{d-1}} = 2^{d-1} + 1 + log2(e)/2.
inline Real asymptotic_estimate_log2(int d) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  Real log2e = 1 / boost::multiprecision::log(Real(2));
  return Real(BigCount(1) << unsigned(d - 1)) + 1 + log2e / 2;
}

// (d, exact count / asymptote) rows.
inline std::vector<std::pair<int, double>> ratio_table(int d_max, bool extended = false) {
  int cap = extended ? 6 : 5;
  if (d_max < 1 || d_max > cap) throw size_limit_error("ratio_table supports d <= " + std::to_string(cap));
  std::vector<std::pair<int, double>> rows;
  for (int d = 1; d <= d_max; ++d) {
    BigCount count = count_independent_sets(d);
    Real ratio = boost::multiprecision::exp2(log2_big(count) - asymptotic_estimate_log2(d));
    rows.emplace_back(d, ratio.convert_to<double>());
  }
  return rows;
}

}  // namespace hcube

#endif
