// Command-line front end: graph generation, parallel subdivision transforms,
// spectrum prediction vs computation, random-walk metrics, invariants and the
// full verification run with machine-readable discrepancy reports.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "specsub/specsub.hpp"

namespace {

using namespace specsub;

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open graph file " + path);
  return read_edge_list(in);
}

void write_text(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_error, "cannot open output file " + path);
  out << body;
}

std::string matrix_to_json(const Matrix& m) {
  std::string out = "{\"n\":" + std::to_string(m.rows()) + ",\"rows\":[";
  for (int i = 0; i < m.rows(); ++i) {
    if (i) out += ',';
    out += '[';
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_sig12(m(i, j));
    }
    out += ']';
  }
  out += "]}";
  return out;
}

std::string matrix_to_csv(const Matrix& m) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_sig12(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string matrix_to_text(const Matrix& m) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += format_sig12(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string spectrum_to_text(const Spectrum& s) {
  std::string out;
  for (int i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += format_sig12(s.values[i]);
  }
  out += '\n';
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"parallel subdivision graphs: spectra, walk metrics, invariants, verification"};
  app.require_subcommand(1);

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "generate a named graph as an edge list");
  std::string gen_kind, gen_out;
  int gen_n = 0, gen_a = 0, gen_b = 0;
  unsigned gen_seed = 0;
  double gen_p = 0.0;
  gen->add_option("--kind", gen_kind,
                  "path | cycle | complete | complete_bipartite | random_connected")
      ->required();
  gen->add_option("--n", gen_n, "vertex count");
  gen->add_option("--a", gen_a, "left part size (complete_bipartite)");
  gen->add_option("--b", gen_b, "right part size (complete_bipartite)");
  gen->add_option("--p", gen_p, "edge probability (random_connected)");
  gen->add_option("--seed", gen_seed, "PRNG seed (random_connected)");
  gen->add_option("-o,--out", gen_out, "output file (default stdout)");

  // --- transform ---
  auto* tr = app.add_subcommand("transform", "apply S_k or S_2k, r-fold");
  std::string tr_graph, tr_variant = "sk", tr_out, tr_labels;
  int tr_k = 1, tr_r = 1;
  tr->add_option("--graph", tr_graph, "edge-list file")->required();
  tr->add_option("--variant", tr_variant, "sk | s2k");
  tr->add_option("--k", tr_k, "parallel branch count");
  tr->add_option("--r", tr_r, "iterations");
  tr->add_option("-o,--out", tr_out, "output file (default stdout)");
  tr->add_option("--labels", tr_labels, "sidecar JSON with vertex provenance (r = 1 only)");

  // --- spectrum ---
  auto* sp = app.add_subcommand("spectrum", "predicted and/or computed normalized Laplacian spectra");
  std::string sp_graph, sp_variant, sp_format = "text";
  int sp_k = 1, sp_r = 1;
  bool sp_predict = false, sp_compute = false;
  sp->add_option("--graph", sp_graph, "edge-list file")->required();
  sp->add_option("--variant", sp_variant, "sk | s2k (omit for the base graph)");
  sp->add_option("--k", sp_k, "parallel branch count");
  sp->add_option("--r", sp_r, "iterations");
  sp->add_flag("--predict", sp_predict, "predict the transformed spectrum from the base one");
  sp->add_flag("--compute", sp_compute, "eigensolve the (transformed) graph directly");
  sp->add_option("--format", sp_format, "text | json");

  // --- metrics ---
  auto* me = app.add_subcommand("metrics", "hitting / resistance / commute tables or pairs");
  std::string me_graph, me_variant, me_table = "hitting", me_i, me_j, me_format = "text";
  int me_k = 1;
  bool me_published = false;
  me->add_option("--graph", me_graph, "edge-list file")->required();
  me->add_option("--variant", me_variant, "sk (closed forms on S_k(G))");
  me->add_option("--k", me_k, "parallel branch count");
  me->add_option("--table", me_table, "hitting | resistance | commute");
  me->add_option("--i", me_i, "pair query, v:V or e:E,b:L");
  me->add_option("--j", me_j, "pair query, v:V or e:E,b:L");
  me->add_option("--format", me_format, "text | json | csv");
  me->add_flag("--as-published", me_published, "use the printed sign in the spectral formula");

  // --- invariants ---
  auto* in = app.add_subcommand("invariants", "Kf*, Kemeny constant and spanning trees");
  std::string in_graph, in_variant;
  int in_k = 1, in_r = 1;
  in->add_option("--graph", in_graph, "edge-list file")->required();
  in->add_option("--variant", in_variant, "sk | s2k (adds published-formula evaluations)");
  in->add_option("--k", in_k, "parallel branch count");
  in->add_option("--r", in_r, "iterations");

  // --- verify ---
  auto* ve = app.add_subcommand("verify", "run the whole verification suite");
  std::string ve_corpus = "default", ve_format = "json", ve_out;
  std::optional<double> ve_tol;
  bool ve_published = false;
  ve->add_option("--corpus", ve_corpus, "default | corpus JSON file");
  ve->add_option("--tol", ve_tol, "override every per-claim tolerance");
  ve->add_option("--format", ve_format, "json | csv");
  ve->add_option("-o,--out", ve_out, "report file (default stdout)");
  ve->add_flag("--as-published", ve_published,
               "evaluate the spectral hitting-time formula with its printed sign");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    Graph g = [&] {
      if (gen_kind == "path") return path_graph(gen_n);
      if (gen_kind == "cycle") return cycle_graph(gen_n);
      if (gen_kind == "complete") return complete_graph(gen_n);
      if (gen_kind == "complete_bipartite") return complete_bipartite_graph(gen_a, gen_b);
      if (gen_kind == "random_connected") return random_connected_graph(gen_n, gen_p, gen_seed);
      fail(errc::invalid_params, "unknown kind " + gen_kind);
    }();
    write_text(gen_out, to_edge_list(g));
    return 0;
  }

  if (tr->parsed()) {
    const Graph g = load_graph(tr_graph);
    const Variant variant = parse_variant(tr_variant);
    if (!tr_labels.empty()) {
      if (tr_r != 1) fail(errc::invalid_params, "provenance labels exist only for r = 1");
      const TransformedGraph t =
          variant == Variant::sk ? sk_transform(g, tr_k) : s2k_transform(g, tr_k);
      write_text(tr_out, to_edge_list(t.graph));
      write_text(tr_labels, labels_to_json(t) + "\n");
      return 0;
    }
    write_text(tr_out, to_edge_list(iterate_transform(g, tr_k, tr_r, variant)));
    return 0;
  }

  if (sp->parsed()) {
    const Graph g = load_graph(sp_graph);
    std::string body;
    auto emit = [&](const std::string& tag, const Spectrum& s) {
      if (sp_format == "json")
        body += "{\"" + tag + "\":" + spectrum_to_json(s) + "}\n";
      else
        body += tag + ": " + spectrum_to_text(s);
    };
    if (sp_variant.empty()) {
      emit("spectrum", eigen_decompose(g).spectrum);
    } else {
      if (!sp_predict && !sp_compute)
        fail(errc::invalid_params, "need --predict and/or --compute with --variant");
      const Variant variant = parse_variant(sp_variant);
      if (sp_predict) {
        const EigenResult base = eigen_decompose(g);
        emit("predicted",
             predicted_spectrum_iterated(base.spectrum, g.n, g.m(), sp_k, sp_r, variant,
                                         is_bipartite(g).bipartite));
      }
      if (sp_compute)
        emit("computed",
             eigen_decompose(iterate_transform(g, sp_k, sp_r, variant)).spectrum);
    }
    std::cout << body;
    return 0;
  }

  if (me->parsed()) {
    const Graph g = load_graph(me_graph);
    const Lemma25Sign sign = me_published ? Lemma25Sign::as_published : Lemma25Sign::corrected;
    auto emit_matrix = [&](const Matrix& m) {
      if (me_format == "json") std::cout << matrix_to_json(m) << "\n";
      else if (me_format == "csv") std::cout << matrix_to_csv(m);
      else std::cout << matrix_to_text(m);
    };
    if (me_variant.empty()) {
      if (!me_i.empty() && !me_j.empty()) {
        const int i = std::stoi(me_i.substr(me_i.rfind(':') + 1));
        const int j = std::stoi(me_j.substr(me_j.rfind(':') + 1));
        const Matrix h = hitting_times_oracle(g);
        const Matrix omega = resistance_oracle(g);
        const EigenResult eig = eigen_decompose(g);
        std::cout << "hitting_oracle " << format_sig12(h(i, j)) << "\n"
                  << "hitting_spectral "
                  << format_sig12(hitting_time_spectral(g, eig.decomp, i, j, sign)) << "\n"
                  << "resistance " << format_sig12(omega(i, j)) << "\n"
                  << "commute " << format_sig12(h(i, j) + h(j, i)) << "\n";
        return 0;
      }
      if (me_table == "hitting") emit_matrix(hitting_times_oracle(g));
      else if (me_table == "resistance") emit_matrix(resistance_oracle(g));
      else if (me_table == "commute") emit_matrix(commute_from_hitting(hitting_times_oracle(g)));
      else fail(errc::invalid_params, "unknown table " + me_table);
      return 0;
    }
    if (parse_variant(me_variant) != Variant::sk)
      fail(errc::invalid_params, "closed-form metrics exist for --variant sk only");
    if (me_i.empty() || me_j.empty())
      fail(errc::invalid_params, "transformed metrics need --i and --j label references");
    const SkVertexRef ri = parse_sk_ref(g, me_k, me_i);
    const SkVertexRef rj = parse_sk_ref(g, me_k, me_j);
    const Matrix h = hitting_times_oracle(g);
    const Matrix omega = resistance_oracle(g);
    const Matrix commute = commute_from_hitting(h);
    const TransformedGraph t = sk_transform(g, me_k);
    const Matrix hs = hitting_times_oracle(t.graph);
    const Matrix rs = resistance_oracle(t.graph);
    const int ii = sk_ref_index(g, ri), jj = sk_ref_index(g, rj);
    std::cout << "hitting_closed_form " << format_sig12(sk_hitting_time(g, h, me_k, ri, rj))
              << "\n"
              << "hitting_oracle " << format_sig12(hs(ii, jj)) << "\n"
              << "resistance_closed_form "
              << format_sig12(sk_resistance(g, omega, me_k, ri, rj)) << "\n"
              << "resistance_oracle " << format_sig12(rs(ii, jj)) << "\n"
              << "commute_published "
              << format_sig12(sk_commute_published(g, commute, omega, me_k, ri, rj)) << "\n"
              << "commute_oracle " << format_sig12(2.0 * t.graph.m() * rs(ii, jj)) << "\n";
    return 0;
  }

  if (in->parsed()) {
    const Graph g = load_graph(in_graph);
    const InvariantBundle b = invariant_bundle(g);
    std::cout << "kf_star " << format_sig12(b.kf_star) << "\n"
              << "kemeny " << format_sig12(b.kemeny) << "\n"
              << "log_tau " << format_sig12(b.log_tau) << "\n";
    if (b.tau_exact) std::cout << "tau_exact " << b.tau_exact->get_str() << "\n";
    if (!in_variant.empty()) {
      const Variant variant = parse_variant(in_variant);
      const int n = g.n, m = g.m();
      const double log_tau = b.tau_exact ? log_mpz(*b.tau_exact) : b.log_tau;
      const EigenResult eig = eigen_decompose(g);
      const bool bip = is_bipartite(g).bipartite;
      if (variant == Variant::sk) {
        std::cout << "kf_step_published "
                  << format_sig12(as_published::kf_sk_step_iterated(b.kf_star, n, m, in_k, in_r))
                  << "\n"
                  << "kf_closed_published "
                  << format_sig12(kf_star_sk_closed(b.kf_star, n, m, in_k, in_r)) << "\n"
                  << "ke_closed_published "
                  << format_sig12(kemeny_sk_closed(b.kemeny, b.kf_star, n, m, in_k, in_r))
                  << "\n"
                  << "log_tau_published "
                  << format_sig12(as_published::tau_sk_log(log_tau, n, m, in_k, in_r)) << "\n";
      } else {
        std::cout << "kf_step_published "
                  << format_sig12(
                         as_published::kf_s2k_step_iterated(b.kf_star, n, m, in_k, in_r))
                  << "\n"
                  << "kf_closed_published "
                  << format_sig12(kf_star_s2k_closed(b.kf_star, n, m, in_k, in_r)) << "\n"
                  << "ke_closed_published "
                  << format_sig12(kemeny_s2k_closed(b.kemeny, n, m, in_k, in_r)) << "\n"
                  << "log_tau_published "
                  << format_sig12(as_published::tau_s2k_log(log_tau, n, m, in_k, in_r)) << "\n";
      }
      std::cout << "kf_spectral "
                << format_sig12(kf_star_transformed_spectral(eig.spectrum, n, m, in_k, in_r,
                                                             variant, bip))
                << "\n"
                << "ke_spectral "
                << format_sig12(kemeny_transformed_spectral(eig.spectrum, n, m, in_k, in_r,
                                                            variant, bip))
                << "\n";
    }
    return 0;
  }

  // verify
  const CorpusSpec corpus = ve_corpus == "default" ? default_corpus() : corpus_from_json(ve_corpus);
  VerifyOptions opts;
  opts.tol_override = ve_tol;
  opts.lemma25 = ve_published ? Lemma25Sign::as_published : Lemma25Sign::corrected;
  const auto start = std::chrono::steady_clock::now();
  const VerificationReport rep = run_verification(corpus, opts);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_text(ve_out, ve_format == "csv" ? report_to_csv(rep) : report_to_jsonl(rep));
  const ReportSummary s = rep.summary();
  std::cerr << "verify: " << s.pass << " pass, " << s.discrepancy << " discrepancy, "
            << s.error << " error in " << format_sig12(secs) << "s\n";
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const specsub::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
