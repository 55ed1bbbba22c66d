#pragma once

#include <cmath>
#include <vector>

#include "specsub/errors.hpp"
#include "specsub/graph.hpp"
#include "specsub/linalg.hpp"
#include "specsub/spectra.hpp"

namespace specsub {

// Orthonormal basis of the kernel of the incidence matrix B(G), obtained from
// the null eigenvectors of B^T B. Its dimension is m - n for non-bipartite
// graphs and m - n + 1 for bipartite ones (rank of B is n or n-1).
inline Matrix incidence_kernel_basis(const Graph& g) {
  const Matrix b = incidence_matrix(g);
  const int m = g.m();
  Matrix btb(m, m);
  for (int e = 0; e < m; ++e)
    for (int f = 0; f < m; ++f) {
      double s = 0.0;
      for (int v = 0; v < g.n; ++v) s += b(v, e) * b(v, f);
      btb(e, f) = s;
    }
  SymmetricEigen eig = jacobi_eigen(btb);
  int dim = 0;
  while (dim < m && std::abs(eig.values[dim]) <= 1e-9) ++dim;
  const int expected = g.m() - incidence_rank(g);
  if (dim != expected)
    fail(errc::numerical_rank_failure,
         "kernel of B(G) has dimension " + std::to_string(dim) + ", expected " +
             std::to_string(expected));
  Matrix ker(m, dim);
  for (int c = 0; c < dim; ++c)
    for (int e = 0; e < m; ++e) ker(e, c) = eig.vectors(e, c);
  return ker;
}

// Full eigensystem of N(S_k(G)); values[i] pairs with column i of vectors.
struct SkEigenbasis {
  std::vector<double> values;
  Matrix vectors;  // (n + km) x (n + km)

  int size() const { return static_cast<int>(values.size()); }
};

// Explicit eigenpairs of N(S_k(G)) built from an eigendecomposition of N(G).
// Writing h_a = B^T D^{-1/2} v_a (so ||h_a||^2 = 1 + sigma_a):
//  * for every eigenpair (sigma_a, v_a) of N(G) with sigma_a != -1, the two
//    vectors (v_a; +-c h_a; ...; +-c h_a)/sqrt(2), c = 1/sqrt(k(1+sigma_a)),
//    carry eigenvalues +-sqrt((1+sigma_a)/2);
//  * branch-difference combinations of h_a across the k branch blocks give
//    k-1 kernel vectors per usable a;
//  * each kernel vector of B placed in a single branch block is a kernel
//    vector of N(S_k(G));
//  * bipartite G additionally contributes (v_n; 0; ...; 0), since sigma_n = -1
//    makes h_n vanish.
// Vertex layout matches sk_transform: original vertices first, then branch
// blocks of m mid vertices each.
inline SkEigenbasis sk_eigenbasis(const Graph& g, int k, const EigenDecomposition& decomp) {
  if (k < 1) fail(errc::invalid_k, "sk_eigenbasis needs k >= 1");
  const int n = g.n, m = g.m();
  if (decomp.size() != n) fail(errc::length_mismatch, "decomposition does not match graph");
  const bool bipartite = is_bipartite(g).bipartite;
  const int total = n + k * m;

  std::vector<double> dsqrt(n);
  for (int v = 0; v < n; ++v) dsqrt[v] = std::sqrt(static_cast<double>(g.degree(v)));

  // h_a per usable eigenpair
  const int usable = bipartite ? n - 1 : n;
  Matrix h(m, usable);
  for (int a = 0; a < usable; ++a)
    for (int e = 0; e < m; ++e) {
      const auto& [s, t] = g.edges[e];
      h(e, a) = decomp.vectors(s, a) / dsqrt[s] + decomp.vectors(t, a) / dsqrt[t];
    }

  SkEigenbasis out;
  out.values.reserve(total);
  out.vectors = Matrix(total, total);
  int col = 0;

  auto set_branch = [&](int c, int branch, double coef, int a) {
    for (int e = 0; e < m; ++e) out.vectors(n + branch * m + e, c) = coef * h(e, a);
  };

  for (int a = 0; a < usable; ++a) {
    const double sigma = decomp.sigma[a];
    const double theta = std::sqrt((1.0 + sigma) / 2.0);
    const double c = 1.0 / std::sqrt(k * (1.0 + sigma));
    for (double sign : {+1.0, -1.0}) {
      for (int i = 0; i < n; ++i)
        out.vectors(i, col) = decomp.vectors(i, a) / std::sqrt(2.0);
      for (int l = 0; l < k; ++l) set_branch(col, l, sign * c / std::sqrt(2.0), a);
      out.values.push_back(sign * theta);
      ++col;
    }
    for (int t = 2; t <= k; ++t) {
      const double head = 1.0 / std::sqrt(static_cast<double>(t) * (t - 1) * (1.0 + sigma));
      const double tail = -std::sqrt((t - 1) / (static_cast<double>(t) * (1.0 + sigma)));
      for (int l = 0; l < t - 1; ++l) set_branch(col, l, head, a);
      set_branch(col, t - 1, tail, a);
      out.values.push_back(0.0);
      ++col;
    }
  }

  if (bipartite) {
    for (int i = 0; i < n; ++i) out.vectors(i, col) = decomp.vectors(i, n - 1);
    out.values.push_back(0.0);
    ++col;
  }

  const Matrix ker = incidence_kernel_basis(g);
  for (int z = 0; z < ker.cols(); ++z)
    for (int l = 0; l < k; ++l) {
      for (int e = 0; e < m; ++e) out.vectors(n + l * m + e, col) = ker(e, z);
      out.values.push_back(0.0);
      ++col;
    }

  if (col != total)
    fail(errc::numerical_rank_failure,
         "eigenbasis has " + std::to_string(col) + " vectors, expected " + std::to_string(total));
  return out;
}

// Residual-mass identity at a subdivision vertex with parent edge {s, t}: the
// squared kernel-basis components at that edge equal
//   1 - 1/m - sum_a (v_{as}/sqrt(d_s) + v_{at}/sqrt(d_t))^2 / (1 + sigma_a),
// the sum running over a = 2..n (non-bipartite) or 2..n-1 (bipartite).
// Returns the worst absolute deviation over all edges.
inline double residual_mass_max_dev(const Graph& g, const EigenDecomposition& decomp) {
  const int n = g.n, m = g.m();
  const bool bipartite = is_bipartite(g).bipartite;
  const int usable = bipartite ? n - 1 : n;
  const Matrix ker = incidence_kernel_basis(g);
  double worst = 0.0;
  for (int e = 0; e < m; ++e) {
    const auto& [s, t] = g.edges[e];
    double lhs = 0.0;
    for (int z = 0; z < ker.cols(); ++z) lhs += ker(e, z) * ker(e, z);
    double rhs = 1.0 - 1.0 / m;
    for (int a = 1; a < usable; ++a) {
      const double ga = decomp.vectors(s, a) / std::sqrt(static_cast<double>(g.degree(s))) +
                        decomp.vectors(t, a) / std::sqrt(static_cast<double>(g.degree(t)));
      rhs -= ga * ga / (1.0 + decomp.sigma[a]);
    }
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace specsub
