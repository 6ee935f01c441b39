#ifndef HCUBE_GRAPH_HPP
#define HCUBE_GRAPH_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hcube/errors.hpp"
#include "hcube/vertex_set.hpp"

namespace hcube {

constexpr int kMaxCubeDim = 20;
constexpr std::size_t kMaxVertices = std::size_t(1) << kMaxCubeDim;

// Edges with one end in each of two sets; the list is kept only on request.
struct EdgeBoundary {
  std::uint64_t count = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;
};

// A d-regular bipartite graph on classes X and Y. Hypercubes keep their
// adjacency implicit (neighbor = id ^ bit) so Q_20 costs no storage; loaded
// graphs carry explicit neighbor lists. Immutable after construction.
class RegularBipartiteGraph {
 public:
  // Q_d with X = even-parity vertices, Y = odd-parity vertices.
  static RegularBipartiteGraph hypercube(int d) {
    if (d < 1 || d > kMaxCubeDim)
      throw size_limit_error("hypercube dimension must be in [1, 20], got " +
                             std::to_string(d));
    RegularBipartiteGraph g;
    g.degree_ = d;
    g.cube_dim_ = d;
    g.n_ = std::size_t(1) << d;
    g.class_x_ = VertexSet(g.n_);
    g.class_y_ = VertexSet(g.n_);
    for (Vertex v = 0; v < g.n_; ++v) {
      if (std::popcount(v) % 2 == 0)
        g.class_x_.insert(v);
      else
        g.class_y_.insert(v);
    }
    return g;
  }

  // Explicit graph; adjacency[v] lists the d neighbors of v. Validates
  // regularity and bipartiteness.
  static RegularBipartiteGraph from_adjacency(int d, VertexSet class_x,
                                              VertexSet class_y,
                                              const std::vector<std::vector<Vertex>>& adjacency) {
    std::size_t n = class_x.universe();
    if (n > kMaxVertices) throw size_limit_error("graph exceeds 2^20 vertices");
    if (adjacency.size() != n || class_y.universe() != n)
      throw std::invalid_argument("adjacency/class sizes disagree");
    if (class_x.intersects(class_y) || class_x.count() + class_y.count() != n)
      throw std::invalid_argument("classes must partition the vertex set");
    RegularBipartiteGraph g;
    g.degree_ = d;
    g.n_ = n;
    g.class_x_ = std::move(class_x);
    g.class_y_ = std::move(class_y);
    g.adj_.resize(n * std::size_t(d));
    for (Vertex v = 0; v < n; ++v) {
      if (adjacency[v].size() != std::size_t(d))
        throw std::invalid_argument("vertex " + std::to_string(v) +
                                    " has degree " + std::to_string(adjacency[v].size()) +
                                    ", expected " + std::to_string(d));
      for (int i = 0; i < d; ++i) {
        Vertex u = adjacency[v][i];
        if (u >= n) throw std::invalid_argument("neighbor id out of range");
        if (g.class_x_.contains(v) == g.class_x_.contains(u))
          throw std::invalid_argument("edge inside one class: " + std::to_string(v) +
                                      "-" + std::to_string(u));
        g.adj_[v * std::size_t(d) + i] = u;
      }
      // ascending neighbor order keeps downstream algorithms deterministic
      std::sort(g.adj_.begin() + v * std::size_t(d), g.adj_.begin() + (v + 1) * std::size_t(d));
    }
    return g;
  }

  int degree() const { return degree_; }
  std::size_t num_vertices() const { return n_; }
  bool is_hypercube() const { return cube_dim_ > 0; }
  int cube_dim() const { return cube_dim_; }
  const VertexSet& class_x() const { return class_x_; }
  const VertexSet& class_y() const { return class_y_; }
  bool in_x(Vertex v) const { return class_x_.contains(v); }

  VertexSet empty_set() const { return VertexSet(n_); }

  template <typename Fn>
  void for_each_neighbor(Vertex v, Fn&& fn) const {
    if (cube_dim_ > 0) {
      for (int i = 0; i < cube_dim_; ++i) fn(v ^ (Vertex(1) << i));
    } else {
      const Vertex* p = &adj_[v * std::size_t(degree_)];
      for (int i = 0; i < degree_; ++i) fn(p[i]);
    }
  }

  VertexSet neighborhood_of(Vertex v) const {
    VertexSet s(n_);
    for_each_neighbor(v, [&](Vertex u) { s.insert(u); });
    return s;
  }

  // N(A): all vertices adjacent to a member of A.
  VertexSet neighborhood(const VertexSet& A) const {
    VertexSet s(n_);
    A.for_each([&](Vertex v) { for_each_neighbor(v, [&](Vertex u) { s.insert(u); }); });
    return s;
  }

  // |N(v) ∩ B|
  int degree_into(Vertex v, const VertexSet& B) const {
    int c = 0;
    for_each_neighbor(v, [&](Vertex u) { c += B.contains(u); });
    return c;
  }

  // Shortest-path distance; Hamming distance on hypercubes.
  int distance(Vertex u, Vertex v) const {
    if (cube_dim_ > 0) return std::popcount(u ^ v);
    if (u == v) return 0;
    std::vector<int> dist(n_, -1);
    dist[u] = 0;
    std::deque<Vertex> q{u};
    while (!q.empty()) {
      Vertex w = q.front();
      q.pop_front();
      int dw = dist[w];
      bool found = false;
      for_each_neighbor(w, [&](Vertex x) {
        if (dist[x] < 0) {
          dist[x] = dw + 1;
          q.push_back(x);
        }
        if (x == v) found = true;
      });
      if (found) return dw + 1;
    }
    throw no_path_error("no path between " + std::to_string(u) + " and " +
                        std::to_string(v));
  }

  // Edges with one end in A and one in B (each unordered edge counted once).
  EdgeBoundary nabla(const VertexSet& A, const VertexSet& B, bool keep_edges = false) const {
    EdgeBoundary out;
    VertexSet support = A | B;
    support.for_each([&](Vertex v) {
      for_each_neighbor(v, [&](Vertex u) {
        if (u < v && support.contains(u)) return;  // seen from the other end
        bool cross = (A.contains(v) && B.contains(u)) || (B.contains(v) && A.contains(u));
        if (cross) {
          ++out.count;
          if (keep_edges) out.edges.emplace_back(v, u);
        }
      });
    });
    return out;
  }

  // Max shared-neighbor count over distinct pairs of one class
  // (Y by default). 0 when the class has fewer than two vertices.
  int co_degree(bool over_x = false) const {
    const VertexSet& cls = over_x ? class_x_ : class_y_;
    if (cls.count() < 2) return 0;
    int best = 0;
    std::unordered_map<Vertex, int> shared;
    cls.for_each([&](Vertex y) {
      shared.clear();
      for_each_neighbor(y, [&](Vertex x) {
        for_each_neighbor(x, [&](Vertex y2) {
          if (y2 != y) best = std::max(best, ++shared[y2]);
        });
      });
    });
    return best;
  }

 private:
  int degree_ = 0;
  int cube_dim_ = 0;
  std::size_t n_ = 0;
  VertexSet class_x_, class_y_;
  std::vector<Vertex> adj_;
};

inline int parity(Vertex v) { return std::popcount(v) & 1; }

}  // namespace hcube

#endif
