#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "specsub/transforms.hpp"

using namespace specsub;

namespace {

bool all_degrees_two(const Graph& g) {
  for (int v = 0; v < g.n; ++v)
    if (g.degree(v) != 2) return false;
  return true;
}

std::vector<std::pair<std::string, Graph>> named_corpus() {
  return {{"P2", path_graph(2)},     {"P4", path_graph(4)},
          {"C4", cycle_graph(4)},    {"C5", cycle_graph(5)},
          {"C6", cycle_graph(6)},    {"K3", complete_graph(3)},
          {"K4", complete_graph(4)}, {"K23", complete_bipartite_graph(2, 3)},
          {"rand8", random_connected_graph(8, 0.4, 7)}};
}

}  // namespace

TEST_CASE("sk_transform shapes") {
  const Graph k3 = complete_graph(3);

  const TransformedGraph s1 = sk_transform(k3, 1);
  CHECK(s1.graph.n == 6);
  CHECK(s1.graph.m() == 6);
  CHECK(all_degrees_two(s1.graph));  // connected 2-regular on 6 vertices: C6

  const TransformedGraph s2 = sk_transform(k3, 2);
  CHECK(s2.graph.n == 9);
  CHECK(s2.graph.m() == 12);
  for (int v = 0; v < 3; ++v) CHECK(s2.graph.degree(v) == 4);  // k * d(G)

  const TransformedGraph p = sk_transform(path_graph(2), 3);
  CHECK(p.graph.n == 5);
  CHECK(p.graph.m() == 6);
  int deg3 = 0, deg2 = 0;
  for (int v = 0; v < p.graph.n; ++v) {
    deg3 += p.graph.degree(v) == 3;
    deg2 += p.graph.degree(v) == 2;
  }
  CHECK(deg3 == 2);
  CHECK(deg2 == 3);

  CHECK_THROWS_MATCHES(sk_transform(k3, 0), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::invalid_k; }));
}

TEST_CASE("s2k_transform shapes") {
  const Graph k3 = complete_graph(3);

  const TransformedGraph s1 = s2k_transform(k3, 1);
  CHECK(s1.graph.n == 9);
  CHECK(s1.graph.m() == 9);
  CHECK(all_degrees_two(s1.graph));  // C9

  const TransformedGraph s2 = s2k_transform(k3, 2);
  CHECK(s2.graph.n == 15);
  CHECK(s2.graph.m() == 18);
  for (int v = 0; v < 3; ++v) CHECK(s2.graph.degree(v) == 4);

  const TransformedGraph p = s2k_transform(path_graph(2), 2);
  CHECK(p.graph.n == 6);
  CHECK(p.graph.m() == 6);  // two length-3 paths sharing endpoints
  CHECK(all_degrees_two(p.graph));

  CHECK_THROWS_AS(s2k_transform(k3, -1), Error);
}

TEST_CASE("vertex labels follow the deterministic layout") {
  const Graph k23 = complete_bipartite_graph(2, 3);
  const int n = k23.n, m = k23.m();
  const int k = 3;

  const TransformedGraph sk = sk_transform(k23, k);
  REQUIRE(static_cast<int>(sk.labels.size()) == sk.graph.n);
  for (int v = 0; v < n; ++v) {
    CHECK(sk.labels[v].kind == VertexLabel::Kind::original);
    CHECK(sk.labels[v].vertex == v);
  }
  for (int l = 0; l < k; ++l)
    for (int e = 0; e < m; ++e) {
      const VertexLabel& lb = sk.labels[n + l * m + e];
      CHECK(lb.kind == VertexLabel::Kind::sk_mid);
      CHECK(lb.edge == e);
      CHECK(lb.branch == l);
      // mid vertex adjacent to exactly the parent endpoints
      const auto& adj = sk.graph.adjacency[n + l * m + e];
      REQUIRE(adj.size() == 2);
      CHECK(std::min(adj[0], adj[1]) == k23.edges[e].first);
      CHECK(std::max(adj[0], adj[1]) == k23.edges[e].second);
    }

  const TransformedGraph s2k = s2k_transform(k23, 2);
  for (int l = 0; l < 2; ++l)
    for (int e = 0; e < m; ++e) {
      const int a = n + 2 * (l * m + e);
      CHECK(s2k.labels[a].pos == 1);
      CHECK(s2k.labels[a + 1].pos == 2);
      // position 1 attaches to the smaller endpoint
      const auto& adj_a = s2k.graph.adjacency[a];
      CHECK(std::count(adj_a.begin(), adj_a.end(), k23.edges[e].first) == 1);
      const auto& adj_b = s2k.graph.adjacency[a + 1];
      CHECK(std::count(adj_b.begin(), adj_b.end(), k23.edges[e].second) == 1);
    }

  const std::string json = labels_to_json(sk_transform(complete_graph(3), 1));
  CHECK(json.find("{\"vertex\":0,\"kind\":\"original\"}") != std::string::npos);
  CHECK(json.find("{\"vertex\":3,\"kind\":\"sk_mid\",\"edge\":0,\"branch\":0}") !=
        std::string::npos);
}

TEST_CASE("iterate_transform") {
  const Graph k3 = complete_graph(3);

  const Graph r0 = iterate_transform(k3, 1, 0, Variant::sk);
  CHECK(r0.n == 3);
  CHECK(r0.edges == k3.edges);

  const Graph c12 = iterate_transform(k3, 1, 2, Variant::sk);
  CHECK(c12.n == 12);
  CHECK(c12.m() == 12);
  CHECK(all_degrees_two(c12));

  const Graph g22 = iterate_transform(k3, 2, 2, Variant::sk);
  CHECK(g22.n == 33);
  CHECK(g22.m() == 48);

  const int saved = size_caps().iterate_vertices;
  size_caps().iterate_vertices = 100;
  CHECK_THROWS_MATCHES(iterate_transform(k3, 3, 4, Variant::sk), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::size_cap_exceeded; }));
  size_caps().iterate_vertices = saved;
}

TEST_CASE("predicted_sizes closed forms") {
  auto sz = [](int n, int m, int k, int r, Variant v) {
    const auto [vertices, edges] = predicted_sizes(n, m, k, r, v);
    return std::make_pair(vertices.get_si(), edges.get_si());
  };
  CHECK(sz(3, 3, 1, 1, Variant::sk) == std::make_pair(6L, 6L));
  CHECK(sz(3, 3, 2, 2, Variant::sk) == std::make_pair(33L, 48L));
  CHECK(sz(3, 3, 1, 1, Variant::s2k) == std::make_pair(9L, 9L));

  // arbitrary precision far beyond the construction cap
  const auto [v20, e20] = predicted_sizes(3, 3, 3, 20, Variant::sk);
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 6, 20);
  CHECK(e20 == 3 * p);
  CHECK(v20 == 3 + 9 * (p - 1) / 5);
}

TEST_CASE("iterated sizes equal the closed forms exactly") {
  for (const auto& [name, g] : named_corpus()) {
    for (int k = 1; k <= 3; ++k)
      for (int r = 0; r <= 2; ++r) {
        const Graph it = iterate_transform(g, k, r, Variant::sk);
        const auto [pv, pe] = predicted_sizes(g.n, g.m(), k, r, Variant::sk);
        CHECK(it.n == pv.get_si());
        CHECK(it.m() == pe.get_si());
      }
    for (int k = 1; k <= 2; ++k)
      for (int r = 0; r <= 2; ++r) {
        const Graph it = iterate_transform(g, k, r, Variant::s2k);
        const auto [pv, pe] = predicted_sizes(g.n, g.m(), k, r, Variant::s2k);
        CHECK(it.n == pv.get_si());
        CHECK(it.m() == pe.get_si());
      }
  }
}

TEST_CASE("transform parity invariants") {
  for (const auto& [name, g] : named_corpus()) {
    const bool base_bip = is_bipartite(g).bipartite;
    for (int k = 1; k <= 3; ++k) {
      // S_k(G) is bipartite for every G: originals vs subdivision vertices
      CHECK(is_bipartite(sk_transform(g, k).graph).bipartite);
    }
    for (int k = 1; k <= 2; ++k) {
      // length-3 paths preserve parity
      CHECK(is_bipartite(s2k_transform(g, k).graph).bipartite == base_bip);
    }
  }
}

TEST_CASE("transformed degrees follow the degree displays") {
  for (const auto& [name, g] : named_corpus())
    for (int k = 1; k <= 3; ++k) {
      const TransformedGraph sk = sk_transform(g, k);
      for (int v = 0; v < sk.graph.n; ++v) {
        if (sk.labels[v].kind == VertexLabel::Kind::original)
          CHECK(sk.graph.degree(v) == k * g.degree(sk.labels[v].vertex));
        else
          CHECK(sk.graph.degree(v) == 2);
      }
      if (k > 2) continue;
      const TransformedGraph s2k = s2k_transform(g, k);
      for (int v = 0; v < s2k.graph.n; ++v) {
        if (s2k.labels[v].kind == VertexLabel::Kind::original)
          CHECK(s2k.graph.degree(v) == k * g.degree(s2k.labels[v].vertex));
        else
          CHECK(s2k.graph.degree(v) == 2);
      }
    }
}
