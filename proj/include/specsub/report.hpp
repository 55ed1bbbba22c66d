#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "specsub/spectra.hpp"

namespace specsub {

// One verified claim instance. "published" and "oracle" carry the two scalars
// being compared where the claim has them (tau rows hold ln tau once the
// linear value no longer fits a double exactly); aggregate claims such as
// spectrum matches report only the figure of merit in "diff".
struct ReportRow {
  std::string claim;
  std::string graph;
  int k = 0;  // 0 when not applicable
  int r = 0;
  std::optional<double> published;
  std::optional<double> oracle;
  std::optional<double> diff;      // absolute comparison the status is based on
  std::optional<double> rel_diff;  // |published-oracle| / |oracle| where meaningful
  double tol = 0.0;
  std::string status;  // pass | discrepancy | error
  std::string note;    // set on error rows
};

struct ReportSummary {
  int pass = 0;
  int discrepancy = 0;
  int error = 0;
};

struct VerificationReport {
  std::vector<ReportRow> rows;

  ReportSummary summary() const {
    ReportSummary s;
    for (const auto& r : rows) {
      if (r.status == "pass") ++s.pass;
      else if (r.status == "discrepancy") ++s.discrepancy;
      else ++s.error;
    }
    return s;
  }

  void sort_rows() {
    std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
      return std::tie(a.claim, a.graph, a.k, a.r) < std::tie(b.claim, b.graph, b.k, b.r);
    });
  }

  int exit_code() const {
    const ReportSummary s = summary();
    if (s.error > 0) return 1;
    return s.discrepancy > 0 ? 2 : 0;
  }
};

namespace detail {

inline std::string opt_json(const std::optional<double>& v) {
  return v ? format_sig12(*v) : std::string("null");
}

inline std::string opt_csv(const std::optional<double>& v) {
  return v ? format_sig12(*v) : std::string();
}

}  // namespace detail

// JSON lines, one row per line, then a summary line. Ordering and the fixed
// 12-significant-digit float format make reports byte-reproducible.
inline std::string report_to_jsonl(const VerificationReport& rep) {
  std::string out;
  for (const auto& r : rep.rows) {
    out += "{\"claim\":\"" + r.claim + "\",\"graph\":\"" + r.graph +
           "\",\"k\":" + std::to_string(r.k) + ",\"r\":" + std::to_string(r.r) +
           ",\"published\":" + detail::opt_json(r.published) +
           ",\"oracle\":" + detail::opt_json(r.oracle) +
           ",\"diff\":" + detail::opt_json(r.diff) +
           ",\"rel_diff\":" + detail::opt_json(r.rel_diff) +
           ",\"tol\":" + format_sig12(r.tol) + ",\"status\":\"" + r.status + "\"";
    if (!r.note.empty()) out += ",\"note\":\"" + r.note + "\"";
    out += "}\n";
  }
  const ReportSummary s = rep.summary();
  out += "{\"summary\":{\"pass\":" + std::to_string(s.pass) +
         ",\"discrepancy\":" + std::to_string(s.discrepancy) +
         ",\"error\":" + std::to_string(s.error) + "}}\n";
  return out;
}

inline std::string report_to_csv(const VerificationReport& rep) {
  std::string out = "claim,graph,k,r,published,oracle,diff,rel_diff,tol,status\n";
  for (const auto& r : rep.rows) {
    out += r.claim + "," + r.graph + "," + std::to_string(r.k) + "," + std::to_string(r.r) +
           "," + detail::opt_csv(r.published) + "," + detail::opt_csv(r.oracle) + "," +
           detail::opt_csv(r.diff) + "," + detail::opt_csv(r.rel_diff) + "," +
           format_sig12(r.tol) + "," + r.status + "\n";
  }
  return out;
}

}  // namespace specsub
