#pragma once

#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "specsub/corpus.hpp"
#include "specsub/eigenbasis.hpp"
#include "specsub/errors.hpp"
#include "specsub/invariants.hpp"
#include "specsub/report.hpp"
#include "specsub/spanning_tree.hpp"
#include "specsub/spectra.hpp"
#include "specsub/transforms.hpp"
#include "specsub/walk.hpp"

namespace specsub {

struct VerifyOptions {
  std::optional<double> tol_override;  // replaces every per-claim tolerance when set
  Lemma25Sign lemma25 = Lemma25Sign::corrected;
};

namespace verify_detail {

// Pinned claim tolerances.
constexpr double kTolSpectrum = 1e-8;
constexpr double kTolSpectrumIterated = 1e-7;
constexpr double kTolEigenbasis = 1e-8;
constexpr double kTolHitting = 1e-6;
constexpr double kTolResistance = 1e-8;
constexpr double kTolInvariantRel = 1e-8;
constexpr double kTolTauLog = 1e-6;
constexpr double kTolCommute = 1e-6;

// Largest spanning-tree count for which the spectral product still resolves
// individual integers; beyond it the log-space tolerance is the arbiter.
constexpr long kExactTauLimit = 1000000000000L;

struct BaseData {
  bool bipartite = false;
  Spectrum spectrum;
  EigenDecomposition decomp;
  Matrix hitting, resistance, commute;
  double kf = 0.0, ke = 0.0;
  mpz_class tau;
  double log_tau = 0.0;
};

struct TransformData {
  Graph graph;
  Spectrum spectrum;
  double kf = 0.0, ke = 0.0;
  bool has_exact_tau = false;
  mpz_class tau;
  double log_tau = 0.0;                 // from the exact count when available
  std::optional<Matrix> hitting, resistance;  // S_k r=1 only
};

template <typename T>
struct Slot {
  std::optional<T> data;
  std::string error;
};

inline BaseData compute_base(const Graph& g) {
  BaseData b;
  b.bipartite = is_bipartite(g).bipartite;
  EigenResult eig = eigen_decompose(g);
  b.spectrum = std::move(eig.spectrum);
  b.decomp = std::move(eig.decomp);
  b.hitting = hitting_times_oracle(g);
  b.resistance = resistance_oracle(g);
  b.commute = commute_from_hitting(b.hitting);
  b.kf = kf_star(b.spectrum, g.m());
  b.ke = kemeny(b.spectrum);
  b.tau = spanning_tree_count_exact(g);
  b.log_tau = log_mpz(b.tau);
  return b;
}

inline TransformData compute_transform(const Graph& g, Variant variant, int k, int r,
                                       bool walk_oracles) {
  TransformData t;
  t.graph = iterate_transform(g, k, r, variant);
  EigenResult eig = eigen_decompose(t.graph);
  t.spectrum = std::move(eig.spectrum);
  t.kf = kf_star(t.spectrum, t.graph.m());
  t.ke = kemeny(t.spectrum);
  if (t.graph.n <= size_caps().matrix_tree) {
    t.tau = spanning_tree_count_exact(t.graph);
    t.log_tau = log_mpz(t.tau);
    t.has_exact_tau = true;
  }
  if (walk_oracles) {
    t.hitting = hitting_times_oracle(t.graph);
    t.resistance = resistance_oracle(t.graph);
  }
  return t;
}

inline void run_parallel(std::vector<std::function<void()>>& tasks) {
  std::atomic<size_t> next{0};
  const unsigned workers =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                         static_cast<unsigned>(tasks.size()));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) tasks[i]();
    });
  for (auto& th : pool) th.join();
}

}  // namespace verify_detail

// Runs every claim of the verification suite over the corpus and returns the
// sorted report. Expensive per-(graph, variant, k, r) artifacts are computed
// concurrently; row assembly is deterministic.
inline VerificationReport run_verification(const CorpusSpec& corpus,
                                           const VerifyOptions& opts = {}) {
  using namespace verify_detail;

  const size_t ng = corpus.graphs.size();
  std::vector<Slot<BaseData>> base(ng);
  std::map<std::tuple<size_t, Variant, int, int>, Slot<TransformData>> tctx;

  for (size_t gi = 0; gi < ng; ++gi) {
    for (int k : corpus.sk_k) {
      for (int r : corpus.r_set) tctx[{gi, Variant::sk, k, r}];
      tctx[{gi, Variant::sk, k, 1}];  // walk claims always need r = 1
    }
    for (int k : corpus.s2k_k)
      for (int r : corpus.r_set) tctx[{gi, Variant::s2k, k, r}];
  }

  std::vector<std::function<void()>> tasks;
  for (size_t gi = 0; gi < ng; ++gi)
    tasks.push_back([&, gi] {
      try {
        base[gi].data = compute_base(corpus.graphs[gi].graph);
      } catch (const std::exception& e) {
        base[gi].error = e.what();
      }
    });
  for (auto& [key, slot] : tctx) {
    const auto [gi, variant, k, r] = key;
    Slot<TransformData>* out = &slot;
    tasks.push_back([&, gi, variant, k, r, out] {
      try {
        out->data = compute_transform(corpus.graphs[gi].graph, variant, k, r,
                                      variant == Variant::sk && r == 1);
      } catch (const std::exception& e) {
        out->error = e.what();
      }
    });
  }
  run_parallel(tasks);

  VerificationReport rep;
  auto tol_of = [&](double pinned) { return opts.tol_override.value_or(pinned); };

  auto error_row = [&](const std::string& claim, const std::string& graph, int k, int r,
                       double tol, const std::string& note) {
    ReportRow row;
    row.claim = claim;
    row.graph = graph;
    row.k = k;
    row.r = r;
    row.tol = tol;
    row.status = "error";
    row.note = note;
    rep.rows.push_back(std::move(row));
  };

  // status from an absolute or relative comparison of two finite scalars
  auto scalar_row = [&](const std::string& claim, const std::string& graph, int k, int r,
                        double published, double oracle, double tol, bool relative) {
    ReportRow row;
    row.claim = claim;
    row.graph = graph;
    row.k = k;
    row.r = r;
    row.published = published;
    row.oracle = oracle;
    const double diff = std::abs(published - oracle);
    const double rel = diff / std::max(std::abs(oracle), 1e-300);
    row.diff = diff;
    row.rel_diff = rel;
    row.tol = tol;
    if (!std::isfinite(published) || !std::isfinite(oracle))
      row.status = "error";
    else
      row.status = (relative ? rel : diff) <= tol ? "pass" : "discrepancy";
    rep.rows.push_back(std::move(row));
  };

  auto diff_row = [&](const std::string& claim, const std::string& graph, int k, int r,
                      double diff, double tol) {
    ReportRow row;
    row.claim = claim;
    row.graph = graph;
    row.k = k;
    row.r = r;
    row.diff = diff;
    row.tol = tol;
    row.status = std::isfinite(diff) ? (diff <= tol ? "pass" : "discrepancy") : "error";
    rep.rows.push_back(std::move(row));
  };

  // tau comparisons happen in log space; the report columns show the linear
  // value while it is exactly representable, the log after that
  auto tau_row = [&](const std::string& claim, const std::string& graph, int k, int r,
                     double published_log, double oracle_log, double tol,
                     std::optional<bool> forced_status = {}) {
    ReportRow row;
    row.claim = claim;
    row.graph = graph;
    row.k = k;
    row.r = r;
    const double linear_limit = std::log(1e15);
    if (std::max(published_log, oracle_log) <= linear_limit) {
      row.published = std::exp(published_log);
      row.oracle = std::exp(oracle_log);
    } else {
      row.published = published_log;
      row.oracle = oracle_log;
    }
    const double diff = std::abs(published_log - oracle_log);
    row.diff = diff;
    row.tol = tol;
    const bool pass = forced_status ? *forced_status : diff <= tol;
    row.status = pass ? "pass" : "discrepancy";
    rep.rows.push_back(std::move(row));
  };

  auto tslot = [&](size_t gi, Variant v, int k, int r) -> Slot<TransformData>& {
    return tctx.at({gi, v, k, r});
  };

  for (size_t gi = 0; gi < ng; ++gi) {
    const std::string& name = corpus.graphs[gi].name;
    const Graph& g = corpus.graphs[gi].graph;
    const int n = g.n, m = g.m();

    if (!base[gi].data) {
      error_row("base_context", name, 0, 0, 0.0, base[gi].error);
      continue;
    }
    const BaseData& bd = *base[gi].data;

    // --- Lemma 2.5: spectral hitting times -------------------------------
    {
      double worst = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          const double pred = hitting_time_spectral(g, bd.decomp, i, j, opts.lemma25);
          worst = std::max(worst, std::abs(pred - bd.hitting(i, j)));
        }
      diff_row("lemma25_spectral", name, 0, 0, worst, tol_of(kTolHitting));
      const double printed =
          hitting_time_spectral(g, bd.decomp, 0, 1, Lemma25Sign::as_published);
      scalar_row("lemma25_sign", name, 0, 0, printed, bd.hitting(0, 1), tol_of(kTolHitting),
                 false);
    }

    // --- S_k claims --------------------------------------------------------
    for (int k : corpus.sk_k) {
      const auto& slot1 = tslot(gi, Variant::sk, k, 1);
      if (!slot1.data) {
        error_row("spectrum_sk", name, k, 1, tol_of(kTolSpectrum), slot1.error);
        continue;
      }
      const TransformData& t1 = *slot1.data;

      try {
        const Spectrum pred = predicted_spectrum_sk(bd.spectrum, n, m, k, bd.bipartite);
        const SpectraMatch mr = spectra_match(pred, t1.spectrum, tol_of(kTolSpectrum));
        if (mr.length_mismatch)
          error_row("spectrum_sk", name, k, 1, tol_of(kTolSpectrum), "length mismatch");
        else
          diff_row("spectrum_sk", name, k, 1, mr.max_abs_diff, tol_of(kTolSpectrum));
      } catch (const std::exception& e) {
        error_row("spectrum_sk", name, k, 1, tol_of(kTolSpectrum), e.what());
      }

      // Lemma 4.1 eigenbasis: eigen-equation residual, orthonormality and the
      // residual-mass identity, all against the actual N(S_k(G)).
      try {
        const SkEigenbasis basis = sk_eigenbasis(g, k, bd.decomp);
        const Matrix nsk = normalized_adjacency(t1.graph);
        const int total = basis.size();
        double resid = 0.0;
        for (int c = 0; c < total; ++c) {
          for (int i = 0; i < total; ++i) {
            double acc = 0.0;
            for (int j = 0; j < total; ++j) acc += nsk(i, j) * basis.vectors(j, c);
            resid = std::max(resid, std::abs(acc - basis.values[c] * basis.vectors(i, c)));
          }
        }
        double gram = 0.0;
        for (int a = 0; a < total; ++a)
          for (int b2 = a; b2 < total; ++b2) {
            double dot = 0.0;
            for (int i = 0; i < total; ++i)
              dot += basis.vectors(i, a) * basis.vectors(i, b2);
            gram = std::max(gram, std::abs(dot - (a == b2 ? 1.0 : 0.0)));
          }
        const double mass = residual_mass_max_dev(g, bd.decomp);
        diff_row("eigenbasis_lemma41", name, k, 1, std::max({resid, gram, mass}),
                 tol_of(kTolEigenbasis));
      } catch (const std::exception& e) {
        error_row("eigenbasis_lemma41", name, k, 1, tol_of(kTolEigenbasis), e.what());
      }

      // hitting-time theorem and the resistance corollary, all pairs and
      // both directions
      try {
        const Matrix& hs = *t1.hitting;
        const Matrix& rs = *t1.resistance;
        const int tn = t1.graph.n;
        const TransformedGraph labeled = sk_transform(g, k);
        std::vector<SkVertexRef> refs(tn);
        for (int v = 0; v < tn; ++v) refs[v] = resolve_sk_vertex(labeled, v);
        double worst_h = 0.0, worst_r = 0.0;
        for (int i = 0; i < tn; ++i)
          for (int j = 0; j < tn; ++j) {
            if (i == j) continue;
            worst_h = std::max(worst_h, std::abs(sk_hitting_time(g, bd.hitting, k, refs[i],
                                                                 refs[j]) -
                                                 hs(i, j)));
            worst_r = std::max(
                worst_r,
                std::abs(sk_resistance(g, bd.resistance, k, refs[i], refs[j]) - rs(i, j)));
          }
        diff_row("hitting_thm_cases", name, k, 1, worst_h, tol_of(kTolHitting));
        diff_row("resistance_corollary", name, k, 1, worst_r, tol_of(kTolResistance));

        // canonical commute pairs per case, published vs 2|E| Omega
        const double two_e = 2.0 * t1.graph.m();
        const auto orig0 = sk_ref_original(g, 0);
        const auto orig1 = sk_ref_original(g, 1);
        scalar_row("commute_corollary_published_c1", name, k, 1,
                   sk_commute_published(g, bd.commute, bd.resistance, k, orig0, orig1),
                   two_e * rs(0, 1), tol_of(kTolCommute), false);
        const auto mid0 = sk_ref_mid(g, k, 0, 0);
        scalar_row("commute_corollary_published_c2", name, k, 1,
                   sk_commute_published(g, bd.commute, bd.resistance, k, mid0, orig0),
                   two_e * rs(sk_ref_index(g, mid0), g.edges[0].first), tol_of(kTolCommute),
                   false);
        if (m >= 2 || k >= 2) {
          const auto mid1 = m >= 2 ? sk_ref_mid(g, k, 1, 0) : sk_ref_mid(g, k, 0, 1);
          scalar_row("commute_corollary_published_c3", name, k, 1,
                     sk_commute_published(g, bd.commute, bd.resistance, k, mid0, mid1),
                     two_e * rs(sk_ref_index(g, mid0), sk_ref_index(g, mid1)),
                     tol_of(kTolCommute), false);
        }
      } catch (const std::exception& e) {
        error_row("hitting_thm_cases", name, k, 1, tol_of(kTolHitting), e.what());
      }

      for (int r : corpus.r_set) {
        const auto& slot = tslot(gi, Variant::sk, k, r);
        if (!slot.data) {
          error_row("kf_sk", name, k, r, tol_of(kTolInvariantRel), slot.error);
          continue;
        }
        const TransformData& tr = *slot.data;

        if (r >= 2) {
          try {
            const Spectrum pred =
                predicted_spectrum_iterated(bd.spectrum, n, m, k, r, Variant::sk, bd.bipartite);
            const SpectraMatch mr = spectra_match(pred, tr.spectrum, tol_of(kTolSpectrumIterated));
            if (mr.length_mismatch)
              error_row("spectrum_iterated_sk", name, k, r, tol_of(kTolSpectrumIterated),
                        "length mismatch");
            else
              diff_row("spectrum_iterated_sk", name, k, r, mr.max_abs_diff,
                       tol_of(kTolSpectrumIterated));
          } catch (const std::exception& e) {
            error_row("spectrum_iterated_sk", name, k, r, tol_of(kTolSpectrumIterated), e.what());
          }
        }

        scalar_row("kf_sk", name, k, r, as_published::kf_sk_step_iterated(bd.kf, n, m, k, r),
                   tr.kf, tol_of(kTolInvariantRel), true);
        scalar_row("kf_sk_closed", name, k, r, kf_star_sk_closed(bd.kf, n, m, k, r), tr.kf,
                   tol_of(kTolInvariantRel), true);
        scalar_row("ke_sk", name, k, r, as_published::ke_sk_step_iterated(bd.ke, n, m, k, r),
                   tr.ke, tol_of(kTolInvariantRel), true);
        scalar_row("ke_sk_closed", name, k, r, kemeny_sk_closed(bd.ke, bd.kf, n, m, k, r),
                   tr.ke, tol_of(kTolInvariantRel), true);

        if (tr.has_exact_tau)
          tau_row("tau_sk_published", name, k, r,
                  as_published::tau_sk_log(bd.log_tau, n, m, k, r), tr.log_tau,
                  tol_of(kTolTauLog));
        else
          error_row("tau_sk_published", name, k, r, tol_of(kTolTauLog),
                    "transformed graph exceeds the matrix-tree cap");

        // ground-truth chain: tau from the predicted spectrum equals the
        // exact matrix-tree count
        try {
          if (tr.has_exact_tau) {
            const Spectrum pred =
                predicted_spectrum_iterated(bd.spectrum, n, m, k, r, Variant::sk, bd.bipartite);
            std::vector<int> degrees(tr.graph.n);
            for (int v = 0; v < tr.graph.n; ++v) degrees[v] = tr.graph.degree(v);
            const TauEstimate est = tau_spectral(pred, degrees);
            // round-trip exactness is resolvable only while the log-space
            // product can still separate integers
            std::optional<bool> forced;
            if (est.rounded && tr.tau < kExactTauLimit)
              forced = *est.rounded == tr.tau.get_d();
            tau_row("tau_chain_sk", name, k, r, est.log_value, tr.log_tau, tol_of(kTolTauLog),
                    forced);
          } else {
            error_row("tau_chain_sk", name, k, r, tol_of(kTolTauLog),
                      "transformed graph exceeds the matrix-tree cap");
          }
        } catch (const std::exception& e) {
          error_row("tau_chain_sk", name, k, r, tol_of(kTolTauLog), e.what());
        }
      }

      // size formulas, including the r = 0 identity
      std::vector<int> size_rs = {0};
      size_rs.insert(size_rs.end(), corpus.r_set.begin(), corpus.r_set.end());
      for (int r : size_rs) {
        try {
          const Graph it = iterate_transform(g, k, r, Variant::sk);
          const auto [pv, pe] = predicted_sizes(n, m, k, r, Variant::sk);
          ReportRow row;
          row.claim = "sizes_sk";
          row.graph = name;
          row.k = k;
          row.r = r;
          row.published = static_cast<double>(it.n);
          row.oracle = pv.get_d();
          row.diff = std::max(std::abs(it.n - pv.get_d()), std::abs(it.m() - pe.get_d()));
          row.tol = tol_of(0.0);
          row.status = *row.diff <= row.tol ? "pass" : "discrepancy";
          rep.rows.push_back(std::move(row));
        } catch (const std::exception& e) {
          error_row("sizes_sk", name, k, r, 0.0, e.what());
        }
      }
    }

    // --- S_2k claims --------------------------------------------------------
    for (int k : corpus.s2k_k) {
      for (int r : corpus.r_set) {
        const auto& slot = tslot(gi, Variant::s2k, k, r);
        if (!slot.data) {
          error_row("kf_s2k_published", name, k, r, tol_of(kTolInvariantRel), slot.error);
          continue;
        }
        const TransformData& tr = *slot.data;

        try {
          const Spectrum pred =
              predicted_spectrum_iterated(bd.spectrum, n, m, k, r, Variant::s2k, bd.bipartite);
          const SpectraMatch mr = spectra_match(
              pred, tr.spectrum, tol_of(r == 1 ? kTolSpectrum : kTolSpectrumIterated));
          const std::string claim = r == 1 ? "spectrum_s2k" : "spectrum_iterated_s2k";
          const double tol = tol_of(r == 1 ? kTolSpectrum : kTolSpectrumIterated);
          if (mr.length_mismatch)
            error_row(claim, name, k, r, tol, "length mismatch");
          else
            diff_row(claim, name, k, r, mr.max_abs_diff, tol);
        } catch (const std::exception& e) {
          error_row(r == 1 ? "spectrum_s2k" : "spectrum_iterated_s2k", name, k, r,
                    tol_of(kTolSpectrum), e.what());
        }

        scalar_row("kf_s2k_published", name, k, r,
                   as_published::kf_s2k_step_iterated(bd.kf, n, m, k, r), tr.kf,
                   tol_of(kTolInvariantRel), true);
        scalar_row("kf_s2k_closed", name, k, r, kf_star_s2k_closed(bd.kf, n, m, k, r), tr.kf,
                   tol_of(kTolInvariantRel), true);
        scalar_row("ke_s2k_published", name, k, r,
                   as_published::ke_s2k_step_iterated(bd.ke, n, m, k, r), tr.ke,
                   tol_of(kTolInvariantRel), true);
        scalar_row("ke_s2k_closed", name, k, r, kemeny_s2k_closed(bd.ke, n, m, k, r), tr.ke,
                   tol_of(kTolInvariantRel), true);

        if (tr.has_exact_tau)
          tau_row("tau_s2k_published", name, k, r,
                  as_published::tau_s2k_log(bd.log_tau, n, m, k, r), tr.log_tau,
                  tol_of(kTolTauLog));
        else
          error_row("tau_s2k_published", name, k, r, tol_of(kTolTauLog),
                    "transformed graph exceeds the matrix-tree cap");

        try {
          if (tr.has_exact_tau) {
            const Spectrum pred = predicted_spectrum_iterated(bd.spectrum, n, m, k, r,
                                                              Variant::s2k, bd.bipartite);
            std::vector<int> degrees(tr.graph.n);
            for (int v = 0; v < tr.graph.n; ++v) degrees[v] = tr.graph.degree(v);
            const TauEstimate est = tau_spectral(pred, degrees);
            std::optional<bool> forced;
            if (est.rounded && tr.tau < kExactTauLimit)
              forced = *est.rounded == tr.tau.get_d();
            tau_row("tau_chain_s2k", name, k, r, est.log_value, tr.log_tau,
                    tol_of(kTolTauLog), forced);
          } else {
            error_row("tau_chain_s2k", name, k, r, tol_of(kTolTauLog),
                      "transformed graph exceeds the matrix-tree cap");
          }
        } catch (const std::exception& e) {
          error_row("tau_chain_s2k", name, k, r, tol_of(kTolTauLog), e.what());
        }
      }

      std::vector<int> size_rs = {0};
      size_rs.insert(size_rs.end(), corpus.r_set.begin(), corpus.r_set.end());
      for (int r : size_rs) {
        try {
          const Graph it = iterate_transform(g, k, r, Variant::s2k);
          const auto [pv, pe] = predicted_sizes(n, m, k, r, Variant::s2k);
          ReportRow row;
          row.claim = "sizes_s2k";
          row.graph = name;
          row.k = k;
          row.r = r;
          row.published = static_cast<double>(it.n);
          row.oracle = pv.get_d();
          row.diff = std::max(std::abs(it.n - pv.get_d()), std::abs(it.m() - pe.get_d()));
          row.tol = tol_of(0.0);
          row.status = *row.diff <= row.tol ? "pass" : "discrepancy";
          rep.rows.push_back(std::move(row));
        } catch (const std::exception& e) {
          error_row("sizes_s2k", name, k, r, 0.0, e.what());
        }
      }
    }
  }

  rep.sort_rows();
  return rep;
}

}  // namespace specsub
