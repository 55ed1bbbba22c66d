#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "specsub/config.hpp"
#include "specsub/errors.hpp"
#include "specsub/graph.hpp"
#include "specsub/linalg.hpp"
#include "specsub/transforms.hpp"

namespace specsub {

inline std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Multiset of normalized Laplacian eigenvalues, ascending, with tolerance
// based multiplicity grouping. Connected graphs have a simple eigenvalue 0
// and everything lies in [0, 2].
struct Spectrum {
  std::vector<double> values;
  double grouping_tol = 1e-7;

  struct Group {
    double value;
    int mult;
  };

  int size() const { return static_cast<int>(values.size()); }

  std::vector<Group> groups() const {
    std::vector<Group> out;
    for (double v : values) {
      if (!out.empty() && v - out.back().value <= grouping_tol) {
        ++out.back().mult;
      } else {
        out.push_back({v, 1});
      }
    }
    return out;
  }
};

inline Spectrum make_spectrum(std::vector<double> values, double grouping_tol = 1e-7) {
  std::sort(values.begin(), values.end());
  if (values.empty()) fail(errc::invalid_params, "empty spectrum");
  if (std::abs(values.front()) > grouping_tol)
    fail(errc::domain_error, "smallest eigenvalue not at 0; graph disconnected?");
  if (values.front() < -grouping_tol || values.back() > 2.0 + grouping_tol)
    fail(errc::domain_error, "normalized Laplacian eigenvalue outside [0, 2]");
  return Spectrum{std::move(values), grouping_tol};
}

inline std::string spectrum_to_json(const Spectrum& s) {
  std::string out = "{\"n\":" + std::to_string(s.size()) + ",\"values\":[";
  for (int i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += format_sig12(s.values[i]);
  }
  out += "],\"grouped\":[";
  const auto groups = s.groups();
  for (size_t i = 0; i < groups.size(); ++i) {
    if (i) out += ',';
    out += "{\"value\":" + format_sig12(groups[i].value) +
           ",\"mult\":" + std::to_string(groups[i].mult) + "}";
  }
  out += "]}";
  return out;
}

// L(G) = I - D^{-1/2} A D^{-1/2}: unit diagonal, -1/sqrt(d_i d_j) on edges.
inline Matrix normalized_laplacian(const Graph& g) {
  Matrix l(g.n, g.n);
  for (int i = 0; i < g.n; ++i) l(i, i) = 1.0;
  for (const auto& [u, v] : g.edges) {
    const double w = -1.0 / std::sqrt(static_cast<double>(g.degree(u)) * g.degree(v));
    l(u, v) = w;
    l(v, u) = w;
  }
  return l;
}

// N(G) = D^{-1/2} A D^{-1/2} = I - L(G).
inline Matrix normalized_adjacency(const Graph& g) {
  Matrix a(g.n, g.n);
  for (const auto& [u, v] : g.edges) {
    const double w = 1.0 / std::sqrt(static_cast<double>(g.degree(u)) * g.degree(v));
    a(u, v) = w;
    a(v, u) = w;
  }
  return a;
}

// Eigenvalues sigma_a of N(G), descending (sigma_1 = 1 for connected G), with
// orthonormal eigenvectors as columns.
struct EigenDecomposition {
  std::vector<double> sigma;
  Matrix vectors;

  int size() const { return static_cast<int>(sigma.size()); }
};

struct EigenResult {
  Spectrum spectrum;           // of L(G)
  EigenDecomposition decomp;   // of N(G); lambda_a = 1 - sigma_a
};

inline EigenResult eigen_decompose(const Graph& g) {
  if (g.n > size_caps().eigensolve)
    fail(errc::size_cap_exceeded,
         "eigendecomposition capped at n <= " + std::to_string(size_caps().eigensolve));
  SymmetricEigen eig = jacobi_eigen(normalized_adjacency(g));
  EigenDecomposition d;
  const int n = g.n;
  d.sigma.resize(n);
  d.vectors = Matrix(n, n);
  std::vector<double> lambda(n);
  for (int c = 0; c < n; ++c) {
    d.sigma[c] = eig.values[n - 1 - c];  // descending
    for (int i = 0; i < n; ++i) d.vectors(i, c) = eig.vectors(i, n - 1 - c);
    lambda[c] = 1.0 - d.sigma[c];  // ascending by construction
  }
  return {make_spectrum(std::move(lambda)), std::move(d)};
}

// ---- spectral maps ----------------------------------------------------------

// f1/f2 are the two solutions of 2x^2 - 4x + lambda = 0:
//   f1 = (2 + sqrt(4 - 2 lambda))/2,  f2 = (2 - sqrt(4 - 2 lambda))/2,
// so f1 + f2 = 2 and f1 f2 = lambda/2.
inline std::pair<double, double> f_maps(double lambda) {
  if (lambda < -1e-12 || lambda > 2.0 + 1e-12)
    fail(errc::domain_error, "f_maps domain is [0, 2], got " + format_sig12(lambda));
  lambda = std::clamp(lambda, 0.0, 2.0);
  const double s = std::sqrt(4.0 - 2.0 * lambda);
  return {(2.0 + s) / 2.0, (2.0 - s) / 2.0};
}

// The three real roots of 4 mu^3 - 12 mu^2 + 9 mu - lambda = 0, ascending.
// Substituting mu = 1 + w turns it into 4w^3 - 3w = lambda - 1, i.e.
// cos(3 theta) = lambda - 1, so the trigonometric form is exact on [0, 2];
// a Newton step polishes simple roots.
inline std::array<double, 3> cubic_roots(double lambda) {
  if (lambda < -1e-12 || lambda > 2.0 + 1e-12)
    fail(errc::domain_error, "cubic_roots domain is [0, 2], got " + format_sig12(lambda));
  lambda = std::clamp(lambda, 0.0, 2.0);
  const double theta = std::acos(std::clamp(lambda - 1.0, -1.0, 1.0));
  std::array<double, 3> mu;
  for (int j = 0; j < 3; ++j) {
    double x = 1.0 + std::cos((theta + 2.0 * M_PI * j) / 3.0);
    const double deriv = 12.0 * x * x - 24.0 * x + 9.0;
    if (std::abs(deriv) > 1e-6) {
      const double p = ((4.0 * x - 12.0) * x + 9.0) * x - lambda;
      x -= p / deriv;
    }
    mu[j] = x;
  }
  std::sort(mu.begin(), mu.end());
  return mu;
}

namespace detail {

// Snap values within tol of the special points 0 and 2, then pull out exactly
// one 0 (and one 2 when bipartite); the mapping theorems branch on exact
// membership in {0, 2}.
inline std::vector<double> strip_special(const Spectrum& spec, bool bipartite) {
  std::vector<double> vals = spec.values;
  for (double& v : vals) {
    if (std::abs(v) <= spec.grouping_tol) v = 0.0;
    if (std::abs(v - 2.0) <= spec.grouping_tol) v = 2.0;
  }
  int zeros = 0, twos = 0;
  for (double v : vals) {
    zeros += v == 0.0;
    twos += v == 2.0;
  }
  if (zeros != 1)
    fail(errc::domain_error, "expected exactly one zero eigenvalue, found " +
                                 std::to_string(zeros));
  if (bipartite != (twos == 1))
    fail(errc::domain_error, bipartite ? "bipartite spectrum must contain eigenvalue 2"
                                       : "non-bipartite spectrum must not contain eigenvalue 2");
  std::vector<double> rest;
  rest.reserve(vals.size());
  bool zero_taken = false, two_taken = false;
  for (double v : vals) {
    if (v == 0.0 && !zero_taken) {
      zero_taken = true;
      continue;
    }
    if (bipartite && v == 2.0 && !two_taken) {
      two_taken = true;
      continue;
    }
    rest.push_back(v);
  }
  return rest;
}

}  // namespace detail

// Spectrum of L(S_k(G)) from the spectrum of L(G):
// f1, f2 of every eigenvalue outside {0, 2}, plus {0, 2}, plus eigenvalue 1
// with multiplicity km - n + 2 (bipartite) or km - n.
inline Spectrum predicted_spectrum_sk(const Spectrum& spec, int n, int m, int k,
                                      bool bipartite) {
  if (k < 1) fail(errc::invalid_k, "predicted_spectrum_sk needs k >= 1");
  if (spec.size() != n) fail(errc::length_mismatch, "spectrum length != n");
  const long long ones = static_cast<long long>(k) * m - n + (bipartite ? 2 : 0);
  if (ones < 0)
    fail(errc::multiplicity_underflow,
         "eigenvalue-1 multiplicity km-n would be " + std::to_string(ones));
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n) + static_cast<size_t>(k) * m);
  for (double v : detail::strip_special(spec, bipartite)) {
    const auto [f1, f2] = f_maps(v);
    out.push_back(f1);
    out.push_back(f2);
  }
  out.push_back(0.0);
  out.push_back(2.0);
  out.insert(out.end(), static_cast<size_t>(ones), 1.0);
  if (out.size() != static_cast<size_t>(n) + static_cast<size_t>(k) * m)
    fail(errc::length_mismatch, "predicted S_k spectrum has wrong length");
  return make_spectrum(std::move(out), spec.grouping_tol);
}

// Spectrum of L(S_2k(G)) from the spectrum of L(G). Non-bipartite G:
// cubic roots of every eigenvalue != 0, plus {0}, plus 1/2 and 3/2 with
// multiplicities km-n and km-n+2. Bipartite G: roots of eigenvalues outside
// {0, 2}, plus {0, 2}, plus 1/2 and 3/2 each with multiplicity km-n+2.
inline Spectrum predicted_spectrum_s2k(const Spectrum& spec, int n, int m, int k,
                                       bool bipartite) {
  if (k < 1) fail(errc::invalid_k, "predicted_spectrum_s2k needs k >= 1");
  if (spec.size() != n) fail(errc::length_mismatch, "spectrum length != n");
  const long long km_n = static_cast<long long>(k) * m - n;
  const long long halves = bipartite ? km_n + 2 : km_n;
  const long long three_halves = km_n + 2;
  if (halves < 0 || three_halves < 0)
    fail(errc::multiplicity_underflow, "negative multiplicity in S_2k census");
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n) + 2 * static_cast<size_t>(k) * m);
  for (double v : detail::strip_special(spec, bipartite)) {
    for (double mu : cubic_roots(v)) out.push_back(mu);
  }
  out.push_back(0.0);
  if (bipartite) out.push_back(2.0);
  out.insert(out.end(), static_cast<size_t>(halves), 0.5);
  out.insert(out.end(), static_cast<size_t>(three_halves), 1.5);
  if (out.size() != static_cast<size_t>(n) + 2 * static_cast<size_t>(k) * m)
    fail(errc::length_mismatch, "predicted S_2k spectrum has wrong length");
  return make_spectrum(std::move(out), spec.grouping_tol);
}

// r-fold prediction: the one-step predictor applied recursively, threading
// sizes through the closed-form counts. S_k output is always bipartite;
// S_2k preserves bipartiteness.
inline Spectrum predicted_spectrum_iterated(const Spectrum& spec, int n, int m, int k, int r,
                                            Variant variant, bool bipartite) {
  if (r < 0) fail(errc::invalid_params, "predicted_spectrum_iterated needs r >= 0");
  Spectrum cur = spec;
  long long cn = n, cm = m;
  bool bip = bipartite;
  for (int i = 0; i < r; ++i) {
    const long long next_n =
        variant == Variant::sk ? cn + static_cast<long long>(k) * cm : cn + 2LL * k * cm;
    if (next_n > size_caps().iterate_vertices)
      fail(errc::size_cap_exceeded, "iterated spectrum would exceed the vertex cap");
    if (variant == Variant::sk) {
      cur = predicted_spectrum_sk(cur, static_cast<int>(cn), static_cast<int>(cm), k, bip);
      cm *= 2LL * k;
      bip = true;  // S_k(G) is bipartite for every G
    } else {
      cur = predicted_spectrum_s2k(cur, static_cast<int>(cn), static_cast<int>(cm), k, bip);
      cm *= 3LL * k;
    }
    cn = next_n;
  }
  return cur;
}

// ---- multiset comparison ----------------------------------------------------

struct SpectraMatch {
  bool pass = false;
  bool length_mismatch = false;
  double max_abs_diff = 0.0;
  std::vector<Spectrum::Group> lhs_groups, rhs_groups;
};

inline SpectraMatch spectra_match(const Spectrum& a, const Spectrum& b, double tol) {
  SpectraMatch r;
  r.lhs_groups = a.groups();
  r.rhs_groups = b.groups();
  if (a.size() != b.size()) {
    r.length_mismatch = true;
    return r;
  }
  for (int i = 0; i < a.size(); ++i)
    r.max_abs_diff = std::max(r.max_abs_diff, std::abs(a.values[i] - b.values[i]));
  r.pass = r.max_abs_diff <= tol;
  return r;
}

}  // namespace specsub
