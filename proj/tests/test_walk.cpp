#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "specsub/walk.hpp"

using namespace specsub;

namespace {

std::vector<Graph> walk_corpus() {
  return {complete_graph(3), cycle_graph(4), cycle_graph(5), complete_graph(4),
          path_graph(4),     path_graph(2),  complete_bipartite_graph(2, 3)};
}

int shortest_path(const Graph& g, int s, int t) {
  std::vector<int> dist(g.n, -1);
  std::vector<int> queue{s};
  dist[s] = 0;
  for (size_t h = 0; h < queue.size(); ++h) {
    const int u = queue[h];
    for (int w : g.adjacency[u])
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
  }
  return dist[t];
}

}  // namespace

TEST_CASE("hitting oracle on known graphs") {
  const Matrix k3 = hitting_times_oracle(complete_graph(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK_THAT(k3(i, j), Catch::Matchers::WithinAbs(i == j ? 0.0 : 2.0, 1e-10));

  // C6: E_i T_j = d (6 - d) for vertices d apart
  const Graph c6 = cycle_graph(6);
  const Matrix h6 = hitting_times_oracle(c6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const int d = std::min(std::abs(i - j), 6 - std::abs(i - j));
      CHECK_THAT(h6(i, j), Catch::Matchers::WithinAbs(d * (6.0 - d), 1e-9));
    }

  CHECK_THAT(hitting_times_oracle(path_graph(2))(0, 1), Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("spectral hitting formula equals the oracle with the corrected sign") {
  for (const Graph& g : walk_corpus()) {
    const EigenResult eig = eigen_decompose(g);
    const Matrix h = hitting_times_oracle(g);
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        if (i == j) continue;
        CHECK_THAT(hitting_time_spectral(g, eig.decomp, i, j),
                   Catch::Matchers::WithinAbs(h(i, j), 1e-6));
      }
  }
}

TEST_CASE("the printed sign of the spectral formula is wrong on K3") {
  const Graph k3 = complete_graph(3);
  const EigenResult eig = eigen_decompose(k3);
  CHECK_THAT(hitting_time_spectral(k3, eig.decomp, 0, 1, Lemma25Sign::as_published),
             Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-10));
  CHECK_THAT(hitting_time_spectral(k3, eig.decomp, 0, 1, Lemma25Sign::corrected),
             Catch::Matchers::WithinAbs(2.0, 1e-10));
}

TEST_CASE("resistance oracle") {
  const Matrix k3 = resistance_oracle(complete_graph(3));
  CHECK_THAT(k3(0, 1), Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-10));

  const Matrix c6 = resistance_oracle(cycle_graph(6));
  CHECK_THAT(c6(0, 2), Catch::Matchers::WithinAbs(4.0 / 3.0, 1e-10));

  CHECK_THAT(resistance_oracle(path_graph(2))(0, 1), Catch::Matchers::WithinAbs(1.0, 1e-10));
}

TEST_CASE("resistance matrix properties") {
  for (const Graph& g : walk_corpus()) {
    const Matrix omega = resistance_oracle(g);
    for (int i = 0; i < g.n; ++i) {
      CHECK(std::abs(omega(i, i)) <= 1e-10);
      for (int j = 0; j < g.n; ++j) {
        CHECK_THAT(omega(i, j), Catch::Matchers::WithinAbs(omega(j, i), 1e-10));
        if (i != j) {
          CHECK(omega(i, j) > 0.0);
          CHECK(omega(i, j) <= shortest_path(g, i, j) + 1e-9);
        }
        for (int l = 0; l < g.n; ++l)
          CHECK(omega(i, j) <= omega(i, l) + omega(l, j) + 1e-9);  // metric
      }
    }
  }
}

TEST_CASE("commute identity E_iT_j + E_jT_i = 2m Omega_ij") {
  for (const Graph& g : walk_corpus()) {
    const Matrix h = hitting_times_oracle(g);
    const Matrix omega = resistance_oracle(g);
    const Matrix c = commute_from_hitting(h);
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        CHECK(c(i, j) == c(j, i));
        if (i != j)
          CHECK_THAT(c(i, j), Catch::Matchers::WithinRel(2.0 * g.m() * omega(i, j), 1e-6));
      }
  }
}

TEST_CASE("S_k hitting-time cases, canonical values on K3") {
  const Graph k3 = complete_graph(3);
  const Matrix h = hitting_times_oracle(k3);

  // both original, adjacent in G
  CHECK_THAT(sk_hitting_time(k3, h, 1, sk_ref_original(k3, 0), sk_ref_original(k3, 1)),
             Catch::Matchers::WithinAbs(8.0, 1e-12));
  // mid -> its own endpoint: 1 + 0 + 2*2
  CHECK_THAT(sk_hitting_time(k3, h, 1, sk_ref_mid(k3, 1, 0, 0), sk_ref_original(k3, 0)),
             Catch::Matchers::WithinAbs(5.0, 1e-12));
  // endpoint -> mid, and the far-vertex direction
  CHECK_THAT(sk_hitting_time(k3, h, 1, sk_ref_original(k3, 0), sk_ref_mid(k3, 1, 0, 0)),
             Catch::Matchers::WithinAbs(5.0, 1e-12));
  CHECK_THAT(sk_hitting_time(k3, h, 1, sk_ref_original(k3, 2), sk_ref_mid(k3, 1, 0, 0)),
             Catch::Matchers::WithinAbs(9.0, 1e-12));
  // mids of edges sharing a vertex
  CHECK_THAT(sk_hitting_time(k3, h, 1, sk_ref_mid(k3, 1, 0, 0), sk_ref_mid(k3, 1, 1, 0)),
             Catch::Matchers::WithinAbs(8.0, 1e-12));
}

TEST_CASE("S_k closed forms equal the oracles on the transformed graphs") {
  for (const Graph& g : walk_corpus()) {
    const Matrix h = hitting_times_oracle(g);
    const Matrix omega = resistance_oracle(g);
    for (int k = 1; k <= 3; ++k) {
      const TransformedGraph t = sk_transform(g, k);
      const Matrix hs = hitting_times_oracle(t.graph);
      const Matrix rs = resistance_oracle(t.graph);
      std::vector<SkVertexRef> refs(t.graph.n);
      for (int v = 0; v < t.graph.n; ++v) refs[v] = resolve_sk_vertex(t, v);
      double worst_h = 0.0, worst_r = 0.0;
      for (int i = 0; i < t.graph.n; ++i)
        for (int j = 0; j < t.graph.n; ++j) {
          if (i == j) continue;
          worst_h = std::max(worst_h,
                             std::abs(sk_hitting_time(g, h, k, refs[i], refs[j]) - hs(i, j)));
          worst_r = std::max(worst_r,
                             std::abs(sk_resistance(g, omega, k, refs[i], refs[j]) - rs(i, j)));
        }
      INFO("n=" << g.n << " k=" << k);
      CHECK(worst_h <= 1e-6);
      CHECK(worst_r <= 1e-8);
    }
  }
}

TEST_CASE("S_k resistance canonical values") {
  const Graph k3 = complete_graph(3);
  const Matrix omega = resistance_oracle(k3);
  CHECK_THAT(sk_resistance(k3, omega, 1, sk_ref_original(k3, 0), sk_ref_original(k3, 1)),
             Catch::Matchers::WithinAbs(4.0 / 3.0, 1e-10));
  CHECK_THAT(sk_resistance(k3, omega, 1, sk_ref_mid(k3, 1, 0, 0), sk_ref_original(k3, 0)),
             Catch::Matchers::WithinAbs(5.0 / 6.0, 1e-10));
  CHECK_THAT(sk_resistance(k3, omega, 2, sk_ref_original(k3, 0), sk_ref_original(k3, 1)),
             Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-10));
}

TEST_CASE("published commute corollary vs oracle") {
  const Graph k3 = complete_graph(3);
  const Matrix h = hitting_times_oracle(k3);
  const Matrix omega = resistance_oracle(k3);
  const Matrix commute = commute_from_hitting(h);
  const TransformedGraph t = sk_transform(k3, 1);
  const Matrix rs = resistance_oracle(t.graph);
  const double two_e = 2.0 * t.graph.m();

  // Case 1: published 12 * (2/3) = 8 against oracle 16
  const auto o0 = sk_ref_original(k3, 0), o1 = sk_ref_original(k3, 1);
  CHECK_THAT(sk_commute_published(k3, commute, omega, 1, o0, o1),
             Catch::Matchers::WithinAbs(8.0, 1e-10));
  CHECK_THAT(two_e * rs(0, 1), Catch::Matchers::WithinAbs(16.0, 1e-9));

  // Case 2: published 15 against oracle 10
  const auto mid = sk_ref_mid(k3, 1, 0, 0);
  CHECK_THAT(sk_commute_published(k3, commute, omega, 1, mid, o0),
             Catch::Matchers::WithinAbs(15.0, 1e-10));
  CHECK_THAT(two_e * rs(sk_ref_index(k3, mid), 0), Catch::Matchers::WithinAbs(10.0, 1e-9));

  // P2 case 1: published 4, oracle 8 (the endpoints of P3 sit at resistance 2)
  const Graph p2 = path_graph(2);
  const Matrix hp = hitting_times_oracle(p2);
  const Matrix op = resistance_oracle(p2);
  CHECK_THAT(sk_commute_published(p2, commute_from_hitting(hp), op, 1, sk_ref_original(p2, 0),
                                  sk_ref_original(p2, 1)),
             Catch::Matchers::WithinAbs(4.0, 1e-10));
  const TransformedGraph p3 = sk_transform(p2, 1);
  CHECK_THAT(2.0 * p3.graph.m() * resistance_oracle(p3.graph)(0, 1),
             Catch::Matchers::WithinAbs(8.0, 1e-9));
}

TEST_CASE("walk oracle size cap") {
  const int saved = size_caps().walk_oracle;
  size_caps().walk_oracle = 4;
  CHECK_THROWS_MATCHES(hitting_times_oracle(cycle_graph(6)), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::size_cap_exceeded; }));
  CHECK_THROWS_AS(resistance_oracle(cycle_graph(6)), Error);
  size_caps().walk_oracle = saved;
}

TEST_CASE("vertex reference resolution and mismatches") {
  const Graph k3 = complete_graph(3);
  const TransformedGraph t = sk_transform(k3, 2);

  const SkVertexRef orig = resolve_sk_vertex(t, 1);
  CHECK_FALSE(orig.is_mid);
  CHECK(orig.v == 1);
  const SkVertexRef mid = resolve_sk_vertex(t, 3 + 3 + 1);  // branch 1, edge 1
  CHECK(mid.is_mid);
  CHECK(mid.edge == 1);
  CHECK(mid.branch == 1);
  CHECK(sk_ref_index(k3, sk_ref_mid(k3, 2, 1, 1)) == 7);

  const TransformedGraph s2k = s2k_transform(k3, 1);
  CHECK_THROWS_MATCHES(resolve_sk_vertex(s2k, 0), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::ref_mismatch; }));
  CHECK_THROWS_AS(sk_ref_mid(k3, 2, 5, 0), Error);
  CHECK_THROWS_AS(sk_ref_mid(k3, 2, 0, 2), Error);

  const SkVertexRef parsed = parse_sk_ref(k3, 2, "e:2,b:1");
  CHECK(parsed.edge == 2);
  CHECK(parsed.branch == 1);
  CHECK(parse_sk_ref(k3, 2, "v:2").v == 2);
  CHECK_THROWS_AS(parse_sk_ref(k3, 2, "x:1"), Error);
}
