#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "specsub/config.hpp"
#include "specsub/errors.hpp"
#include "specsub/graph.hpp"

namespace specsub {

enum class Variant { sk, s2k };

inline const char* variant_name(Variant v) { return v == Variant::sk ? "sk" : "s2k"; }

inline Variant parse_variant(const std::string& s) {
  if (s == "sk") return Variant::sk;
  if (s == "s2k") return Variant::s2k;
  fail(errc::invalid_params, "variant must be 'sk' or 's2k'");
}

// Provenance of a vertex in a transformed graph: either an original vertex or
// a subdivision vertex identified by (parent edge, branch[, position]).
struct VertexLabel {
  enum class Kind { original, sk_mid, s2k_node };
  Kind kind = Kind::original;
  int vertex = -1;  // original index, set for Kind::original
  int edge = -1;    // parent edge index
  int branch = -1;  // l in [0, k)
  int pos = 0;      // 1 or 2, S_2k only; position 1 touches the smaller endpoint

  static VertexLabel original(int v) { return {Kind::original, v, -1, -1, 0}; }
  static VertexLabel sk_mid(int e, int l) { return {Kind::sk_mid, -1, e, l, 0}; }
  static VertexLabel s2k_node(int e, int l, int p) { return {Kind::s2k_node, -1, e, l, p}; }
};

struct TransformedGraph {
  Graph graph;
  std::vector<VertexLabel> labels;  // one per vertex of graph
  int k = 1;
  Variant variant = Variant::sk;
  int parent_n = 0;
  int parent_m = 0;
};

// S_k(G): every edge becomes k parallel paths of length 2. Original vertices
// keep their indices; the mid vertex of (edge e, branch l) sits at
// n + l*m + e.
inline TransformedGraph sk_transform(const Graph& g, int k) {
  if (k < 1) fail(errc::invalid_k, "S_k needs k >= 1");
  const int n = g.n, m = g.m();
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(2) * k * m);
  std::vector<VertexLabel> labels;
  labels.reserve(n + static_cast<size_t>(k) * m);
  for (int v = 0; v < n; ++v) labels.push_back(VertexLabel::original(v));
  for (int l = 0; l < k; ++l)
    for (int e = 0; e < m; ++e) {
      const int mid = n + l * m + e;
      edges.emplace_back(g.edges[e].first, mid);
      edges.emplace_back(mid, g.edges[e].second);
      labels.push_back(VertexLabel::sk_mid(e, l));
    }
  TransformedGraph t;
  t.graph = build_graph(n + k * m, std::move(edges));
  t.labels = std::move(labels);
  t.k = k;
  t.variant = Variant::sk;
  t.parent_n = n;
  t.parent_m = m;
  return t;
}

// S_2k(G): every edge becomes k parallel paths of length 3. The two interior
// vertices of (edge e, branch l) sit at n + 2*(l*m + e) and the next index;
// position 1 attaches to the smaller-indexed endpoint.
inline TransformedGraph s2k_transform(const Graph& g, int k) {
  if (k < 1) fail(errc::invalid_k, "S_2k needs k >= 1");
  const int n = g.n, m = g.m();
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(3) * k * m);
  std::vector<VertexLabel> labels;
  labels.reserve(n + static_cast<size_t>(2) * k * m);
  for (int v = 0; v < n; ++v) labels.push_back(VertexLabel::original(v));
  for (int l = 0; l < k; ++l)
    for (int e = 0; e < m; ++e) {
      const int a = n + 2 * (l * m + e);
      const int b = a + 1;
      edges.emplace_back(g.edges[e].first, a);  // canonical edges have first < second
      edges.emplace_back(a, b);
      edges.emplace_back(b, g.edges[e].second);
      labels.push_back(VertexLabel::s2k_node(e, l, 1));
      labels.push_back(VertexLabel::s2k_node(e, l, 2));
    }
  TransformedGraph t;
  t.graph = build_graph(n + 2 * k * m, std::move(edges));
  t.labels = std::move(labels);
  t.k = k;
  t.variant = Variant::s2k;
  t.parent_n = n;
  t.parent_m = m;
  return t;
}

// Exact closed-form sizes of the r-fold transform:
//   S_k:  |E_r| = m(2k)^r,  |V_r| = n + km((2k)^r - 1)/(2k - 1)
//   S_2k: |E'_r| = m(3k)^r, |V'_r| = n + 2km((3k)^r - 1)/(3k - 1)
inline std::pair<mpz_class, mpz_class> predicted_sizes(int n, int m, int k, int r,
                                                       Variant variant) {
  if (k < 1) fail(errc::invalid_k, "predicted_sizes needs k >= 1");
  if (r < 0) fail(errc::invalid_params, "predicted_sizes needs r >= 0");
  const int base = variant == Variant::sk ? 2 * k : 3 * k;
  const int per_edge = variant == Variant::sk ? k : 2 * k;
  mpz_class pow_r;
  mpz_ui_pow_ui(pow_r.get_mpz_t(), base, r);
  mpz_class edges = m * pow_r;
  mpz_class vertices = n + per_edge * m * ((pow_r - 1) / (base - 1));
  return {vertices, edges};
}

// r-fold application; provenance labels of intermediate steps are discarded.
inline Graph iterate_transform(const Graph& g, int k, int r, Variant variant) {
  if (k < 1) fail(errc::invalid_k, "iterate_transform needs k >= 1");
  if (r < 0) fail(errc::invalid_params, "iterate_transform needs r >= 0");
  auto [vfinal, efinal] = predicted_sizes(g.n, g.m(), k, r, variant);
  if (vfinal > size_caps().iterate_vertices)
    fail(errc::size_cap_exceeded,
         "iterated transform would have " + vfinal.get_str() + " vertices (cap " +
             std::to_string(size_caps().iterate_vertices) + ")");
  Graph cur = g;
  for (int i = 0; i < r; ++i)
    cur = variant == Variant::sk ? sk_transform(cur, k).graph : s2k_transform(cur, k).graph;
  return cur;
}

// Sidecar JSON for provenance labels.
inline std::string labels_to_json(const TransformedGraph& t) {
  std::string out = "[";
  for (size_t i = 0; i < t.labels.size(); ++i) {
    const VertexLabel& lb = t.labels[i];
    if (i) out += ',';
    out += "{\"vertex\":" + std::to_string(i);
    switch (lb.kind) {
      case VertexLabel::Kind::original:
        out += ",\"kind\":\"original\"";
        break;
      case VertexLabel::Kind::sk_mid:
        out += ",\"kind\":\"sk_mid\",\"edge\":" + std::to_string(lb.edge) +
               ",\"branch\":" + std::to_string(lb.branch);
        break;
      case VertexLabel::Kind::s2k_node:
        out += ",\"kind\":\"s2k_node\",\"edge\":" + std::to_string(lb.edge) +
               ",\"branch\":" + std::to_string(lb.branch) + ",\"pos\":" + std::to_string(lb.pos);
        break;
    }
    out += '}';
  }
  out += "]";
  return out;
}

}  // namespace specsub
