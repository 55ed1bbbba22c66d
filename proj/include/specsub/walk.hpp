#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "specsub/config.hpp"
#include "specsub/errors.hpp"
#include "specsub/graph.hpp"
#include "specsub/linalg.hpp"
#include "specsub/spectra.hpp"
#include "specsub/transforms.hpp"

namespace specsub {

// Expected hitting times by first-step analysis: for each target j solve
// h_i = 1 + (1/d_i) sum_{u~i} h_u with h_j = 0. Entry (i, j) is E_i T_j.
inline Matrix hitting_times_oracle(const Graph& g) {
  const int n = g.n;
  if (n > size_caps().walk_oracle)
    fail(errc::size_cap_exceeded,
         "hitting-time oracle capped at n <= " + std::to_string(size_caps().walk_oracle));
  Matrix h(n, n);
  for (int target = 0; target < n; ++target) {
    std::vector<int> keep;
    keep.reserve(n - 1);
    for (int v = 0; v < n; ++v)
      if (v != target) keep.push_back(v);
    Matrix a(n - 1, n - 1);
    std::vector<int> pos(n, -1);
    for (int r = 0; r < n - 1; ++r) pos[keep[r]] = r;
    for (int r = 0; r < n - 1; ++r) {
      const int v = keep[r];
      a(r, r) = 1.0;
      const double inv_d = 1.0 / g.degree(v);
      for (int w : g.adjacency[v])
        if (w != target) a(r, pos[w]) -= inv_d;
    }
    const std::vector<double> sol = solve(std::move(a), std::vector<double>(n - 1, 1.0));
    for (int r = 0; r < n - 1; ++r) h(keep[r], target) = sol[r];
  }
  return h;
}

enum class Lemma25Sign {
  corrected,     // minus cross term; agrees with the first-step oracle
  as_published,  // plus cross term, exactly as printed
};

// Spectral hitting-time formula
//   E_i T_j = 2m sum_{a>=2} (v_{aj}^2/d_j -+ v_{ai} v_{aj}/sqrt(d_i d_j)) / (1 - sigma_a)
// over the normalized-adjacency eigenpairs (sigma_1 = 1 is excluded). The
// printed form carries a plus cross term; the oracle on K3 forces the minus,
// so corrected is the default and the published variant stays available for
// the errata report.
inline double hitting_time_spectral(const Graph& g, const EigenDecomposition& decomp, int i,
                                    int j, Lemma25Sign sign = Lemma25Sign::corrected) {
  if (i == j) return 0.0;
  const int n = g.n;
  if (i < 0 || i >= n || j < 0 || j >= n)
    fail(errc::vertex_out_of_range, "hitting-time query outside [0, n)");
  const double dj = g.degree(j);
  const double scale = std::sqrt(static_cast<double>(g.degree(i)) * dj);
  double sum = 0.0;
  for (int a = 1; a < n; ++a) {
    const double gap = 1.0 - decomp.sigma[a];
    if (std::abs(gap) < 1e-12)
      fail(errc::degenerate_eigenvalue, "repeated unit eigenvalue; graph disconnected?");
    const double vij = decomp.vectors(i, a) * decomp.vectors(j, a) / scale;
    const double vjj = decomp.vectors(j, a) * decomp.vectors(j, a) / dj;
    sum += (sign == Lemma25Sign::corrected ? vjj - vij : vjj + vij) / gap;
  }
  return 2.0 * g.m() * sum;
}

// Resistance distances from the Moore-Penrose pseudoinverse of the
// combinatorial Laplacian: Omega_ij = L+_ii + L+_jj - 2 L+_ij.
inline Matrix resistance_oracle(const Graph& g) {
  const int n = g.n;
  if (n > size_caps().walk_oracle)
    fail(errc::size_cap_exceeded,
         "resistance oracle capped at n <= " + std::to_string(size_caps().walk_oracle));
  Matrix lap(n, n);
  for (int v = 0; v < n; ++v) lap(v, v) = g.degree(v);
  for (const auto& [u, v] : g.edges) {
    lap(u, v) = -1.0;
    lap(v, u) = -1.0;
  }
  SymmetricEigen eig = jacobi_eigen(lap);
  const double zero_tol = 1e-9 * std::max(1.0, eig.values[n - 1]);
  Matrix pinv(n, n);
  for (int a = 0; a < n; ++a) {
    if (std::abs(eig.values[a]) <= zero_tol) continue;
    const double inv = 1.0 / eig.values[a];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) pinv(i, j) += inv * eig.vectors(i, a) * eig.vectors(j, a);
  }
  Matrix omega(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) omega(i, j) = pinv(i, i) + pinv(j, j) - 2.0 * pinv(i, j);
  return omega;
}

inline Matrix commute_from_hitting(const Matrix& h) {
  Matrix c(h.rows(), h.cols());
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j) c(i, j) = h(i, j) + h(j, i);
  return c;
}

// A vertex of S_k(G) seen through its provenance label: an original vertex or
// the mid vertex of (parent edge {s, t}, branch l).
struct SkVertexRef {
  bool is_mid = false;
  int v = -1;       // original vertex
  int edge = -1;    // parent edge index
  int branch = -1;  // l in [0, k)
  int s = -1, t = -1;
};

inline SkVertexRef resolve_sk_vertex(const TransformedGraph& tg, int vertex) {
  if (tg.variant != Variant::sk)
    fail(errc::ref_mismatch, "vertex reference requires an S_k transform");
  if (vertex < 0 || vertex >= tg.graph.n)
    fail(errc::ref_mismatch, "vertex outside the transformed graph");
  const VertexLabel& lb = tg.labels[vertex];
  SkVertexRef r;
  if (lb.kind == VertexLabel::Kind::original) {
    r.v = lb.vertex;
    return r;
  }
  r.is_mid = true;
  r.edge = lb.edge;
  r.branch = lb.branch;
  return r;
}

inline SkVertexRef sk_ref_original(const Graph& base, int v) {
  if (v < 0 || v >= base.n) fail(errc::ref_mismatch, "original vertex out of range");
  SkVertexRef r;
  r.v = v;
  return r;
}

inline SkVertexRef sk_ref_mid(const Graph& base, int k, int edge, int branch) {
  if (edge < 0 || edge >= base.m()) fail(errc::ref_mismatch, "parent edge out of range");
  if (branch < 0 || branch >= k) fail(errc::ref_mismatch, "branch out of range");
  SkVertexRef r;
  r.is_mid = true;
  r.edge = edge;
  r.branch = branch;
  r.s = base.edges[edge].first;
  r.t = base.edges[edge].second;
  return r;
}

// CLI label syntax: "v:3" for an original vertex, "e:2,b:0" for a mid vertex.
inline SkVertexRef parse_sk_ref(const Graph& base, int k, const std::string& text) {
  if (text.rfind("v:", 0) == 0) return sk_ref_original(base, std::stoi(text.substr(2)));
  if (text.rfind("e:", 0) == 0) {
    const auto comma = text.find(",b:");
    if (comma == std::string::npos)
      fail(errc::ref_mismatch, "mid reference must look like e:E,b:L");
    return sk_ref_mid(base, k, std::stoi(text.substr(2, comma - 2)),
                      std::stoi(text.substr(comma + 3)));
  }
  fail(errc::ref_mismatch, "reference must look like v:V or e:E,b:L");
}

// Index of the referenced vertex inside S_k(G) under the deterministic layout.
inline int sk_ref_index(const Graph& base, const SkVertexRef& r) {
  return r.is_mid ? base.n + r.branch * base.m() + r.edge : r.v;
}

namespace detail {

inline void complete_ref(const Graph& base, int k, SkVertexRef& r) {
  if (!r.is_mid) {
    if (r.v < 0 || r.v >= base.n) fail(errc::ref_mismatch, "original vertex out of range");
    return;
  }
  if (r.edge < 0 || r.edge >= base.m()) fail(errc::ref_mismatch, "parent edge out of range");
  if (r.branch < 0 || r.branch >= k) fail(errc::ref_mismatch, "branch out of range");
  r.s = base.edges[r.edge].first;
  r.t = base.edges[r.edge].second;
}

}  // namespace detail

// Hitting times on S_k(G) from base-graph hitting times. Three cases:
//  1. both original:          E_i T_j(S_k) = 4 E_i T_j(G)
//  2. mid {s,t} -> original:  1 + 2 E_s T_j + 2 E_t T_j
//     original -> mid {s,t}:  2km - 1 + 2(E_j T_s + E_j T_t) - (E_t T_s + E_s T_t)
//  3. mid {s,t} -> mid {p,q}: 2km + E_s T_p + E_s T_q + E_t T_p + E_t T_q
//                                 - E_q T_p - E_p T_q
//     and the reverse with the roles of {s,t} and {p,q} exchanged.
inline double sk_hitting_time(const Graph& base, const Matrix& hitting, int k, SkVertexRef i,
                              SkVertexRef j) {
  detail::complete_ref(base, k, i);
  detail::complete_ref(base, k, j);
  const double km2 = 2.0 * k * base.m();
  if (!i.is_mid && !j.is_mid) return i.v == j.v ? 0.0 : 4.0 * hitting(i.v, j.v);
  if (i.is_mid && !j.is_mid)
    return 1.0 + 2.0 * hitting(i.s, j.v) + 2.0 * hitting(i.t, j.v);
  if (!i.is_mid && j.is_mid)
    return km2 - 1.0 + 2.0 * (hitting(i.v, j.s) + hitting(i.v, j.t)) -
           (hitting(j.t, j.s) + hitting(j.s, j.t));
  if (i.edge == j.edge && i.branch == j.branch) return 0.0;
  return km2 + hitting(i.s, j.s) + hitting(i.s, j.t) + hitting(i.t, j.s) + hitting(i.t, j.t) -
         hitting(j.t, j.s) - hitting(j.s, j.t);
}

// Resistance distances on S_k(G) from base-graph resistances:
//  1. both original:          (2/k) Omega_ij
//  2. mid {s,t} <-> original: (k + 2 Omega_sj + 2 Omega_tj - Omega_st) / 2k
//  3. mid {s,t} <-> mid {p,q}:
//     (2k + Omega_sp + Omega_sq + Omega_tp + Omega_tq - Omega_pq - Omega_st) / 2k
inline double sk_resistance(const Graph& base, const Matrix& omega, int k, SkVertexRef i,
                            SkVertexRef j) {
  detail::complete_ref(base, k, i);
  detail::complete_ref(base, k, j);
  if (!i.is_mid && !j.is_mid) return 2.0 * omega(i.v, j.v) / k;
  if (i.is_mid != j.is_mid) {
    const SkVertexRef& mid = i.is_mid ? i : j;
    const int o = i.is_mid ? j.v : i.v;
    return (k + 2.0 * omega(mid.s, o) + 2.0 * omega(mid.t, o) - omega(mid.s, mid.t)) /
           (2.0 * k);
  }
  if (i.edge == j.edge && i.branch == j.branch) return 0.0;
  return (2.0 * k + omega(i.s, j.s) + omega(i.s, j.t) + omega(i.t, j.s) + omega(i.t, j.t) -
          omega(j.s, j.t) - omega(i.s, i.t)) /
         (2.0 * k);
}

// The commute-time corollary exactly as printed; no agreement with the oracle
// is implied. Case 1 is stated through Omega, cases 2-3 through base commute
// times.
inline double sk_commute_published(const Graph& base, const Matrix& commute,
                                   const Matrix& omega, int k, SkVertexRef i, SkVertexRef j) {
  detail::complete_ref(base, k, i);
  detail::complete_ref(base, k, j);
  const double m = base.m();
  if (!i.is_mid && !j.is_mid) return 4.0 * m / k * omega(i.v, j.v);
  if (i.is_mid != j.is_mid) {
    const SkVertexRef& mid = i.is_mid ? i : j;
    const int o = i.is_mid ? j.v : i.v;
    return m *
           (k + 2.0 * commute(mid.s, o) + 2.0 * commute(mid.t, o) - commute(mid.s, mid.t)) / k;
  }
  return m *
         (2.0 * k + commute(i.s, j.s) + commute(i.s, j.t) + commute(i.t, j.s) +
          commute(i.t, j.t) - commute(j.s, j.t) - commute(i.s, i.t)) /
         k;
}

}  // namespace specsub
