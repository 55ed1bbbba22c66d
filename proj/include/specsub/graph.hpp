#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "specsub/errors.hpp"
#include "specsub/linalg.hpp"

namespace specsub {

using Edge = std::pair<int, int>;

// Simple connected undirected graph. Vertices are dense 0-based integers and
// edges are kept in canonical (min,max) order, sorted lexicographically, so
// edge indices are deterministic; the transform layer depends on that.
// Instances are immutable after build_graph succeeds.
struct Graph {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> adjacency;

  int m() const { return static_cast<int>(edges.size()); }
  int degree(int v) const { return static_cast<int>(adjacency[v].size()); }
};

inline Graph build_graph(int n, std::vector<Edge> edges) {
  if (n < 2) fail(errc::invalid_params, "graph needs at least 2 vertices");
  if (edges.empty()) fail(errc::invalid_params, "graph needs at least 1 edge");
  for (auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      fail(errc::vertex_out_of_range, "edge endpoint outside [0, n)");
    if (u == v) fail(errc::self_loop, "self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    fail(errc::duplicate_edge, "duplicate edge in input");

  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  g.adjacency.assign(n, {});
  for (const auto& [u, v] : g.edges) {
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
  }

  // connectivity via BFS from vertex 0
  std::vector<char> seen(n, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : g.adjacency[u])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        queue.push_back(w);
      }
  }
  if (reached != n) fail(errc::disconnected, "graph is not connected");
  return g;
}

// ---- generators ------------------------------------------------------------

inline Graph path_graph(int n) {
  if (n < 2) fail(errc::invalid_params, "path needs n >= 2");
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return build_graph(n, std::move(e));
}

inline Graph cycle_graph(int n) {
  if (n < 3) fail(errc::invalid_params, "cycle needs n >= 3");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return build_graph(n, std::move(e));
}

inline Graph complete_graph(int n) {
  if (n < 2) fail(errc::invalid_params, "complete graph needs n >= 2");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return build_graph(n, std::move(e));
}

inline Graph complete_bipartite_graph(int a, int b) {
  if (a < 1 || b < 1) fail(errc::invalid_params, "complete bipartite needs a, b >= 1");
  std::vector<Edge> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return build_graph(a + b, std::move(e));
}

// Erdos-Renyi draw, retried until connected. The [0,1) mapping from raw
// mt19937 words is spelled out so results do not depend on the standard
// library's distribution implementation.
inline Graph random_connected_graph(int n, double p, std::uint32_t seed) {
  if (n < 2 || p <= 0.0 || p > 1.0)
    fail(errc::invalid_params, "random_connected needs n >= 2 and p in (0, 1]");
  std::mt19937 gen(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double u = static_cast<double>(gen() >> 5) * (1.0 / 134217728.0);
        if (u < p) e.emplace_back(i, j);
      }
    if (e.empty()) continue;
    try {
      return build_graph(n, std::move(e));
    } catch (const Error& err) {
      if (err.code() != errc::disconnected) throw;
    }
  }
  fail(errc::invalid_params, "no connected draw within 100 attempts");
}

inline Graph generate(const std::string& kind, const std::vector<double>& params) {
  auto at = [&](size_t i) {
    if (i >= params.size()) fail(errc::invalid_params, "missing parameter for " + kind);
    return params[i];
  };
  if (kind == "path") return path_graph(static_cast<int>(at(0)));
  if (kind == "cycle") return cycle_graph(static_cast<int>(at(0)));
  if (kind == "complete") return complete_graph(static_cast<int>(at(0)));
  if (kind == "complete_bipartite")
    return complete_bipartite_graph(static_cast<int>(at(0)), static_cast<int>(at(1)));
  if (kind == "random_connected")
    return random_connected_graph(static_cast<int>(at(0)), at(1),
                                  static_cast<std::uint32_t>(at(2)));
  fail(errc::invalid_params, "unknown generator kind: " + kind);
}

// ---- structure queries -----------------------------------------------------

struct BipartiteResult {
  bool bipartite = false;
  std::vector<int> coloring;  // 0/1 per vertex when bipartite, empty otherwise
};

inline BipartiteResult is_bipartite(const Graph& g) {
  std::vector<int> color(g.n, -1);
  std::deque<int> queue{0};
  color[0] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : g.adjacency[u]) {
      if (color[w] < 0) {
        color[w] = 1 - color[u];
        queue.push_back(w);
      } else if (color[w] == color[u]) {
        return {false, {}};
      }
    }
  }
  return {true, std::move(color)};
}

inline Matrix incidence_matrix(const Graph& g) {
  Matrix b(g.n, g.m());
  for (int e = 0; e < g.m(); ++e) {
    b(g.edges[e].first, e) = 1.0;
    b(g.edges[e].second, e) = 1.0;
  }
  return b;
}

// Rank of B(G): n for non-bipartite, n-1 for bipartite.
inline int incidence_rank(const Graph& g) {
  return is_bipartite(g).bipartite ? g.n - 1 : g.n;
}

inline int incidence_rank_numeric(const Graph& g) {
  return numeric_rank(incidence_matrix(g), 1e-9);
}

// ---- edge-list text format -------------------------------------------------
// Line 1 holds "n m", then m lines "u v"; '#' starts a comment.

inline Graph read_edge_list(std::istream& in) {
  auto next_line = [&](std::string& line) {
    while (std::getline(in, line)) {
      if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
  };
  std::string line;
  if (!next_line(line)) fail(errc::io_error, "empty edge-list input");
  std::istringstream head(line);
  int n = 0, m = 0;
  if (!(head >> n >> m)) fail(errc::io_error, "malformed header, expected 'n m'");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (int i = 0; i < m; ++i) {
    if (!next_line(line)) fail(errc::io_error, "edge list ends early");
    std::istringstream row(line);
    int u = 0, v = 0;
    if (!(row >> u >> v)) fail(errc::io_error, "malformed edge line: " + line);
    edges.emplace_back(u, v);
  }
  return build_graph(n, std::move(edges));
}

inline void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.n << ' ' << g.m() << '\n';
  for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(g, out);
  return out.str();
}

}  // namespace specsub
