#ifndef HCUBE_GRAPH_IO_HPP
#define HCUBE_GRAPH_IO_HPP

#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hcube/errors.hpp"
#include "hcube/graph.hpp"

namespace hcube {

// Bipartite edge-list format:
//   line 1: "bipartite <d> <nX> <nY>"
//   then exactly d*nX lines "<x> <y>" with 0 <= x < nX and nX <= y < nX+nY.
// '#'-prefixed lines are comments. Duplicate edges are an error.
inline RegularBipartiteGraph load_graph(std::istream& in) {
  int lineno = 0;
  std::string line;
  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line[0] == '#') continue;
      return true;
    }
    return false;
  };

  if (!next_content_line()) throw parse_error(lineno, "empty file");
  std::istringstream head(line);
  std::string tag;
  long d = 0, nx = 0, ny = 0;
  if (!(head >> tag >> d >> nx >> ny) || tag != "bipartite")
    throw parse_error(lineno, "expected header 'bipartite <d> <nX> <nY>'");
  if (d < 1 || nx < 1 || ny < 1) throw parse_error(lineno, "header values must be positive");
  std::size_t n = std::size_t(nx) + std::size_t(ny);
  if (n > kMaxVertices) throw parse_error(lineno, "graph exceeds 2^20 vertices");

  std::vector<std::vector<Vertex>> adj(n);
  std::set<std::pair<long, long>> seen;
  long expected = d * nx;
  for (long e = 0; e < expected; ++e) {
    if (!next_content_line())
      throw parse_error(lineno, "expected " + std::to_string(expected) +
                                    " edges, file ended after " + std::to_string(e));
    std::istringstream es(line);
    long x = -1, y = -1;
    if (!(es >> x >> y)) throw parse_error(lineno, "expected '<x> <y>'");
    if (x < 0 || x >= nx)
      throw parse_error(lineno, "bipartiteness violation: first endpoint " +
                                    std::to_string(x) + " not in X = [0," + std::to_string(nx) + ")");
    if (y < nx || y >= nx + ny)
      throw parse_error(lineno, "bipartiteness violation: second endpoint " +
                                    std::to_string(y) + " not in Y = [" + std::to_string(nx) +
                                    "," + std::to_string(nx + ny) + ")");
    if (!seen.emplace(x, y).second)
      throw parse_error(lineno, "duplicate edge " + std::to_string(x) + " " + std::to_string(y));
    adj[x].push_back(Vertex(y));
    adj[y].push_back(Vertex(x));
  }
  if (next_content_line()) throw parse_error(lineno, "trailing content after edge list");

  for (std::size_t v = 0; v < n; ++v)
    if (adj[v].size() != std::size_t(d))
      throw parse_error(lineno, "regularity violation: vertex " + std::to_string(v) +
                                    " has degree " + std::to_string(adj[v].size()) +
                                    ", expected " + std::to_string(d));

  VertexSet cx(n), cy(n);
  for (long x = 0; x < nx; ++x) cx.insert(Vertex(x));
  for (long y = nx; y < nx + ny; ++y) cy.insert(Vertex(y));
  return RegularBipartiteGraph::from_adjacency(int(d), std::move(cx), std::move(cy), adj);
}

inline RegularBipartiteGraph load_graph(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return load_graph(f);
}

}  // namespace hcube

#endif
