#include "wcema/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <tuple>

#include "wcema/errors.hpp"

namespace wcema {

namespace {

// Rows sort by (algorithm, alpha, repetition); the config order of algorithms
// is not part of the key so reordering the list leaves files unchanged.
std::vector<const RunRecord*> sorted_runs(const ExperimentResult& result) {
  std::vector<const RunRecord*> out;
  for (const auto& r : result.runs) out.push_back(&r);
  std::sort(out.begin(), out.end(), [](const RunRecord* a, const RunRecord* b) {
    return std::tie(a->algorithm, a->alpha, a->repetition) <
           std::tie(b->algorithm, b->alpha, b->repetition);
  });
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string runs_csv(const ExperimentResult& result) {
  std::ostringstream os;
  os << kRunsHeader << '\n';
  for (const RunRecord* r : sorted_runs(result)) {
    if (!r->ok()) continue;
    for (std::size_t e = 0; e < r->epoch_gaps.size(); ++e) {
      const bool last = e + 1 == r->epoch_gaps.size();
      os << r->algorithm << ',' << format_double(r->alpha) << ',' << r->repetition << ','
         << e + 1 << ',' << format_double(r->epoch_gaps[e]) << ','
         << (last ? format_optional(r->moreau_vhat) : std::string()) << ',' << r->tstar << ','
         << r->seed << '\n';
    }
  }
  return os.str();
}

std::string summary_csv(const ExperimentResult& result) {
  auto rows = summarize(result);
  std::sort(rows.begin(), rows.end(), [](const SummaryRow& a, const SummaryRow& b) {
    return std::tie(a.algorithm, a.alpha) < std::tie(b.algorithm, b.alpha);
  });
  std::ostringstream os;
  os << kSummaryHeader << '\n';
  for (const auto& row : rows) {
    os << row.algorithm << ',' << format_double(row.alpha) << ','
       << format_optional(row.mean_final_gap) << ','
       << format_optional(row.mean_moreau_grad_norm_sq) << '\n';
  }
  return os.str();
}

std::string best_curve_csv(const ExperimentResult& result) {
  auto curves = best_over_grid(result);
  std::sort(curves.begin(), curves.end(),
            [](const BestCurve& a, const BestCurve& b) { return a.algorithm < b.algorithm; });
  std::ostringstream os;
  os << kBestCurveHeader << '\n';
  for (const auto& c : curves) {
    for (std::size_t e = 0; e < c.gaps.size(); ++e) {
      os << c.algorithm << ',' << e + 1 << ',' << format_double(c.gaps[e]) << '\n';
    }
  }
  return os.str();
}

std::string stationarity_csv(const ExperimentResult& result) {
  std::ostringstream os;
  os << kStationarityHeader << '\n';
  for (const RunRecord* r : sorted_runs(result)) {
    if (!r->ok()) continue;
    os << r->algorithm << ',' << format_double(r->alpha) << ',' << r->repetition << ','
       << r->tstar << ',' << format_optional(r->zeta_vhat) << ','
       << format_optional(r->moreau_vhat) << ',' << format_optional(r->zeta_identity) << ','
       << format_optional(r->moreau_identity) << ',' << format_optional(r->envelope_gap) << ','
       << (r->inner_converged ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string failures_csv(const ExperimentResult& result) {
  std::ostringstream os;
  os << kFailuresHeader << '\n';
  for (const RunRecord* r : sorted_runs(result)) {
    if (r->ok()) continue;
    os << r->algorithm << ',' << format_double(r->alpha) << ',' << r->repetition << ','
       << quote(r->error) << '\n';
  }
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

void write_results(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
  write_text_file(dir / "runs.csv", runs_csv(result));
  write_text_file(dir / "summary.csv", summary_csv(result));
  write_text_file(dir / "best_curve.csv", best_curve_csv(result));
  write_text_file(dir / "stationarity.csv", stationarity_csv(result));
  const bool any_failed = std::any_of(result.runs.begin(), result.runs.end(),
                                      [](const RunRecord& r) { return !r.ok(); });
  const auto failures = dir / "failures.csv";
  if (any_failed) {
    write_text_file(failures, failures_csv(result));
  } else {
    std::filesystem::remove(failures, ec);
  }
}

}  // namespace wcema
