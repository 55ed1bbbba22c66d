#pragma once

#include <gmpxx.h>

#include <cmath>
#include <vector>

#include "specsub/config.hpp"
#include "specsub/errors.hpp"
#include "specsub/graph.hpp"

namespace specsub {

// Matrix-Tree oracle: tau(G) is any cofactor of the combinatorial Laplacian.
// Bareiss fraction-free elimination keeps every intermediate value an exact
// integer; the Laplacian minor of a connected graph is positive definite, so
// pivots never vanish and no row exchanges are needed.
inline mpz_class spanning_tree_count_exact(const Graph& g, int drop_vertex = 0) {
  if (g.n > size_caps().matrix_tree)
    fail(errc::size_cap_exceeded, "matrix-tree elimination capped at n <= " +
                                      std::to_string(size_caps().matrix_tree));
  if (drop_vertex < 0 || drop_vertex >= g.n)
    fail(errc::invalid_params, "cofactor vertex out of range");

  const int sz = g.n - 1;
  std::vector<std::vector<mpz_class>> a(sz, std::vector<mpz_class>(sz, 0));
  auto idx = [&](int v) { return v < drop_vertex ? v : v - 1; };
  for (int v = 0; v < g.n; ++v)
    if (v != drop_vertex) a[idx(v)][idx(v)] = g.degree(v);
  for (const auto& [u, v] : g.edges)
    if (u != drop_vertex && v != drop_vertex) {
      a[idx(u)][idx(v)] = -1;
      a[idx(v)][idx(u)] = -1;
    }

  mpz_class prev = 1;
  for (int k = 0; k + 1 < sz; ++k) {
    if (a[k][k] == 0) fail(errc::singular_system, "zero pivot in Bareiss elimination");
    for (int i = k + 1; i < sz; ++i)
      for (int j = k + 1; j < sz; ++j) {
        mpz_class num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return a[sz - 1][sz - 1];
}

// Natural log of a positive big integer, usable far beyond double range.
inline double log_mpz(const mpz_class& v) {
  signed long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

}  // namespace specsub
