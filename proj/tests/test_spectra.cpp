#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "specsub/spectra.hpp"

using namespace specsub;

namespace {

std::vector<Graph> sample_corpus() {
  return {path_graph(2),     path_graph(4),
          cycle_graph(4),    cycle_graph(5),
          cycle_graph(6),    complete_graph(3),
          complete_graph(4), complete_bipartite_graph(2, 3),
          random_connected_graph(8, 0.4, 7)};
}

void check_values(const Spectrum& s, const std::vector<double>& expect, double tol) {
  REQUIRE(s.size() == static_cast<int>(expect.size()));
  for (int i = 0; i < s.size(); ++i)
    CHECK_THAT(s.values[i], Catch::Matchers::WithinAbs(expect[i], tol));
}

}  // namespace

TEST_CASE("normalized Laplacian entries") {
  const Matrix k3 = normalized_laplacian(complete_graph(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK_THAT(k3(i, j), Catch::Matchers::WithinAbs(i == j ? 1.0 : -0.5, 1e-15));

  const Matrix p2 = normalized_laplacian(path_graph(2));
  CHECK(p2(0, 0) == 1.0);
  CHECK(p2(0, 1) == -1.0);
  CHECK(p2(1, 0) == -1.0);

  const Matrix star = normalized_laplacian(complete_bipartite_graph(1, 3));
  for (int leaf = 1; leaf <= 3; ++leaf)
    CHECK_THAT(star(0, leaf), Catch::Matchers::WithinAbs(-1.0 / std::sqrt(3.0), 1e-15));
}

TEST_CASE("eigen_decompose on known spectra") {
  check_values(eigen_decompose(complete_graph(3)).spectrum, {0.0, 1.5, 1.5}, 1e-12);
  check_values(eigen_decompose(cycle_graph(6)).spectrum, {0.0, 0.5, 0.5, 1.5, 1.5, 2.0},
               1e-12);
  check_values(eigen_decompose(path_graph(2)).spectrum, {0.0, 2.0}, 1e-14);

  // C9 spectrum is {1 - cos(2 pi j / 9)}
  std::vector<double> c9;
  for (int j = 0; j < 9; ++j) c9.push_back(1.0 - std::cos(2.0 * M_PI * j / 9.0));
  std::sort(c9.begin(), c9.end());
  check_values(eigen_decompose(cycle_graph(9)).spectrum, c9, 1e-12);
}

TEST_CASE("eigen_decompose contracts") {
  for (const Graph& g : sample_corpus()) {
    const EigenResult eig = eigen_decompose(g);
    const int n = g.n;
    REQUIRE(eig.decomp.size() == n);

    // lambda_a = 1 - sigma_a
    for (int a = 0; a < n; ++a)
      CHECK_THAT(eig.spectrum.values[a], Catch::Matchers::WithinAbs(1.0 - eig.decomp.sigma[a], 1e-10));

    // eigen-equation residual and orthonormality
    const Matrix nmat = normalized_adjacency(g);
    double resid = 0.0, gram = 0.0;
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += nmat(i, j) * eig.decomp.vectors(j, a);
        resid = std::max(resid, std::abs(acc - eig.decomp.sigma[a] * eig.decomp.vectors(i, a)));
      }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += eig.decomp.vectors(i, a) * eig.decomp.vectors(i, b);
        gram = std::max(gram, std::abs(dot - (a == b ? 1.0 : 0.0)));
      }
    CHECK(resid <= 1e-8);
    CHECK(gram <= 1e-8);

    // leading eigenvector is sqrt(d/2m) up to sign
    const double sgn = eig.decomp.vectors(0, 0) >= 0 ? 1.0 : -1.0;
    for (int v = 0; v < n; ++v)
      CHECK_THAT(sgn * eig.decomp.vectors(v, 0),
                 Catch::Matchers::WithinAbs(std::sqrt(g.degree(v) / (2.0 * g.m())), 1e-10));
  }
}

TEST_CASE("eigen_decompose size cap") {
  const int saved = size_caps().eigensolve;
  size_caps().eigensolve = 4;
  CHECK_THROWS_MATCHES(eigen_decompose(cycle_graph(6)), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::size_cap_exceeded; }));
  size_caps().eigensolve = saved;
}

TEST_CASE("f_maps") {
  auto [a0, b0] = f_maps(0.0);
  CHECK(a0 == 2.0);
  CHECK(b0 == 0.0);
  auto [a2, b2] = f_maps(2.0);
  CHECK(a2 == 1.0);
  CHECK(b2 == 1.0);
  auto [a32, b32] = f_maps(1.5);
  CHECK_THAT(a32, Catch::Matchers::WithinAbs(1.5, 1e-15));
  CHECK_THAT(b32, Catch::Matchers::WithinAbs(0.5, 1e-15));

  for (int i = 0; i <= 200; ++i) {
    const double lam = 2.0 * i / 200.0;
    const auto [f1, f2] = f_maps(lam);
    CHECK(f1 >= f2);
    CHECK_THAT(f1 + f2, Catch::Matchers::WithinAbs(2.0, 1e-12));
    CHECK_THAT(f1 * f2, Catch::Matchers::WithinAbs(lam / 2.0, 1e-12));
    if (lam > 0.0)
      CHECK_THAT(1.0 / f1 + 1.0 / f2, Catch::Matchers::WithinRel(4.0 / lam, 1e-12));
  }
  CHECK_NOTHROW(f_maps(-5e-13));  // clamped
  CHECK_THROWS_MATCHES(f_maps(2.1), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::domain_error;
                       }));
}

TEST_CASE("cubic_roots") {
  const auto r0 = cubic_roots(0.0);
  CHECK_THAT(r0[0], Catch::Matchers::WithinAbs(0.0, 1e-12));
  CHECK_THAT(r0[1], Catch::Matchers::WithinAbs(1.5, 1e-7));
  CHECK_THAT(r0[2], Catch::Matchers::WithinAbs(1.5, 1e-7));

  const auto r2 = cubic_roots(2.0);
  CHECK_THAT(r2[0], Catch::Matchers::WithinAbs(0.5, 1e-7));
  CHECK_THAT(r2[1], Catch::Matchers::WithinAbs(0.5, 1e-7));
  CHECK_THAT(r2[2], Catch::Matchers::WithinAbs(2.0, 1e-12));

  const auto r32 = cubic_roots(1.5);
  CHECK_THAT(r32[0] + r32[1] + r32[2], Catch::Matchers::WithinAbs(3.0, 1e-12));
  CHECK_THAT(r32[0] * r32[1] * r32[2], Catch::Matchers::WithinAbs(1.5 / 4.0, 1e-12));

  for (int i = 0; i <= 400; ++i) {
    const double lam = 2.0 * i / 400.0;
    const auto mu = cubic_roots(lam);
    CHECK(mu[0] <= mu[1]);
    CHECK(mu[1] <= mu[2]);
    double sum = 0.0, prod = 1.0, inv = 0.0;
    for (double x : mu) {
      const double poly = ((4.0 * x - 12.0) * x + 9.0) * x - lam;
      CHECK(std::abs(poly) <= 1e-10);
      sum += x;
      prod *= x;
      if (lam > 1e-9) inv += 1.0 / x;
    }
    CHECK_THAT(sum, Catch::Matchers::WithinAbs(3.0, 1e-10));
    CHECK_THAT(prod, Catch::Matchers::WithinRel(lam / 4.0, 1e-10));
    if (lam > 1e-9) CHECK_THAT(inv, Catch::Matchers::WithinRel(9.0 / lam, 1e-10));
  }
}

TEST_CASE("predicted S_k spectrum") {
  const EigenResult k3 = eigen_decompose(complete_graph(3));

  // canonical: Gamma(S_1(K3)) = Gamma(C6)
  const Spectrum pred = predicted_spectrum_sk(k3.spectrum, 3, 3, 1, false);
  check_values(pred, {0.0, 0.5, 0.5, 1.5, 1.5, 2.0}, 1e-12);
  const SpectraMatch mr = spectra_match(pred, eigen_decompose(cycle_graph(6)).spectrum, 1e-8);
  CHECK(mr.pass);

  // km - n ones for non-bipartite input
  const Spectrum pred2 = predicted_spectrum_sk(k3.spectrum, 3, 3, 2, false);
  REQUIRE(pred2.size() == 9);
  CHECK(std::count(pred2.values.begin(), pred2.values.end(), 1.0) == 3);

  // km - n + 2 ones for bipartite input
  const EigenResult c4 = eigen_decompose(cycle_graph(4));
  const Spectrum pred3 = predicted_spectrum_sk(c4.spectrum, 4, 4, 1, true);
  REQUIRE(pred3.size() == 8);
  CHECK(std::count(pred3.values.begin(), pred3.values.end(), 1.0) == 2);

  CHECK_THROWS_MATCHES(
      predicted_spectrum_sk(make_spectrum({0, 1, 1, 1, 1, 1, 1, 1, 1, 1}), 10, 1, 1, false),
      Error, Catch::Matchers::Predicate<Error>(
                 [](const Error& e) { return e.code() == errc::multiplicity_underflow; }));
}

TEST_CASE("predicted S_2k spectrum") {
  const EigenResult k3 = eigen_decompose(complete_graph(3));
  const Spectrum pred = predicted_spectrum_s2k(k3.spectrum, 3, 3, 1, false);
  const SpectraMatch mr = spectra_match(pred, eigen_decompose(cycle_graph(9)).spectrum, 1e-8);
  CHECK(mr.pass);
  // 3/2 appears with multiplicity exactly km - n + 2 = 2
  CHECK(std::count(pred.values.begin(), pred.values.end(), 1.5) == 2);

  const EigenResult c4 = eigen_decompose(cycle_graph(4));
  const Spectrum pred2 = predicted_spectrum_s2k(c4.spectrum, 4, 4, 1, true);
  REQUIRE(pred2.size() == 12);
  CHECK(std::count(pred2.values.begin(), pred2.values.end(), 0.5) == 2);
  CHECK(std::count(pred2.values.begin(), pred2.values.end(), 1.5) == 2);
}

TEST_CASE("one-step predictions match direct eigensolves") {
  for (const Graph& g : sample_corpus()) {
    const EigenResult base = eigen_decompose(g);
    const bool bip = is_bipartite(g).bipartite;
    for (int k = 1; k <= 3; ++k) {
      const Spectrum pred = predicted_spectrum_sk(base.spectrum, g.n, g.m(), k, bip);
      const Spectrum direct = eigen_decompose(sk_transform(g, k).graph).spectrum;
      const SpectraMatch mr = spectra_match(pred, direct, 1e-8);
      INFO("S_k k=" << k);
      CHECK(mr.pass);
    }
    for (int k = 1; k <= 2; ++k) {
      const Spectrum pred = predicted_spectrum_s2k(base.spectrum, g.n, g.m(), k, bip);
      const Spectrum direct = eigen_decompose(s2k_transform(g, k).graph).spectrum;
      const SpectraMatch mr = spectra_match(pred, direct, 1e-8);
      INFO("S_2k k=" << k);
      CHECK(mr.pass);
    }
  }
}

TEST_CASE("iterated prediction") {
  const EigenResult k3 = eigen_decompose(complete_graph(3));

  const Spectrum pred = predicted_spectrum_iterated(k3.spectrum, 3, 3, 1, 2, Variant::sk, false);
  const SpectraMatch mr = spectra_match(pred, eigen_decompose(cycle_graph(12)).spectrum, 1e-7);
  CHECK(mr.pass);

  const Spectrum pred22 =
      predicted_spectrum_iterated(k3.spectrum, 3, 3, 2, 2, Variant::sk, false);
  REQUIRE(pred22.size() == 33);
  const Spectrum direct =
      eigen_decompose(iterate_transform(complete_graph(3), 2, 2, Variant::sk)).spectrum;
  CHECK(spectra_match(pred22, direct, 1e-7).pass);

  // r = 1 reduces to the one-step predictor exactly
  const EigenResult c4 = eigen_decompose(cycle_graph(4));
  const Spectrum one = predicted_spectrum_s2k(c4.spectrum, 4, 4, 1, true);
  const Spectrum it = predicted_spectrum_iterated(c4.spectrum, 4, 4, 1, 1, Variant::s2k, true);
  CHECK(spectra_match(one, it, 0.0).pass);
}

TEST_CASE("spectra_match reporting") {
  const Spectrum a = make_spectrum({0.0, 1.0, 2.0});
  CHECK(spectra_match(a, a, 0.0).pass);
  CHECK(spectra_match(a, a, 0.0).max_abs_diff == 0.0);

  const Spectrum b = make_spectrum({0.0, 1.0, 1.5, 2.0});
  const SpectraMatch mm = spectra_match(a, b, 1e-8);
  CHECK_FALSE(mm.pass);
  CHECK(mm.length_mismatch);

  const Spectrum c = make_spectrum({0.0, 1.0 + 5e-9, 2.0});
  CHECK(spectra_match(a, c, 1e-8).pass);
}

TEST_CASE("spectrum grouping and JSON") {
  const Spectrum s = make_spectrum({0.0, 0.5, 0.5 + 1e-9, 1.5, 2.0});
  const auto groups = s.groups();
  REQUIRE(groups.size() == 4);
  CHECK(groups[1].mult == 2);
  int total = 0;
  for (const auto& g : groups) total += g.mult;
  CHECK(total == s.size());

  const std::string json = spectrum_to_json(make_spectrum({0.0, 1.0, 1.0, 2.0}));
  CHECK(json ==
        "{\"n\":4,\"values\":[0,1,1,2],\"grouped\":[{\"value\":0,\"mult\":1},"
        "{\"value\":1,\"mult\":2},{\"value\":2,\"mult\":1}]}");
}
