// Criteria that run optimizers to completion: the rate slope, the phase
// retrieval sweep through the CLI, and byte-level determinism of its output.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "criteria.hpp"
#include "wcema/moreau.hpp"
#include "wcema/optimizer.hpp"
#include "wcema/random.hpp"
#include "wcema/test_problems.hpp"

using namespace wcema;
namespace fs = std::filesystem;

namespace acceptance {

namespace {

const fs::path kWork = WCEMA_WORK_DIR;
const fs::path kPaperConfig = fs::path(WCEMA_SOURCE_DIR) / "configs/paper_phase_retrieval.ini";

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Runs the paper config into `dir` through the CLI, at most once per process;
// output left over from an earlier process is discarded.
bool paper_run(const fs::path& dir) {
  static std::map<fs::path, bool> done;
  if (auto it = done.find(dir); it != done.end()) return it->second;
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cmd = std::string("\"") + WCEMA_CLI_PATH + "\" run \"" +
                          kPaperConfig.string() + "\" -q -o \"" + dir.string() + "\"";
  const bool ok = std::system(cmd.c_str()) == 0 && fs::exists(dir / "runs.csv");
  done[dir] = ok;
  return ok;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

Outcome rate_slope() {
  // f(x) = ||Ax - b||_1 with a fixed Gaussian design; convex, so any zeta works
  // and rho_bar = 1 / zeta = 1.
  const std::size_t d = 5, n = 20;
  const auto problem = make_absolute_deviation(d, n, 0.5, 1010);
  const double alpha = 1.0;
  const double zeta = 1.0;
  const int reps = 20;
  const auto fema3 = preset("FEMA3");

  std::vector<double> log_t, log_g;
  std::string detail;
  for (std::uint64_t T1 : {100ULL, 1000ULL, 10000ULL}) {
    double sum = 0.0;
    for (int r = 0; r < reps; ++r) {
      RandomStream init(derive_seed({1010, StreamPurpose::init, 0, T1, static_cast<std::uint64_t>(r)}));
      const Vector x0 = init.unit_sphere(d);
      const RunSeeds seeds{derive_seed({1010, StreamPurpose::xi, 0, T1, static_cast<std::uint64_t>(r)}),
                           derive_seed({1010, StreamPurpose::u, 0, T1, static_cast<std::uint64_t>(r)}),
                           derive_seed({1010, StreamPurpose::tstar, 0, T1, static_cast<std::uint64_t>(r)})};
      const auto tr = fema_run(problem, fema3, StepsizeSchedule::over_sqrt_horizon(alpha), T1 - 1,
                               x0, seeds);
      const auto rep = moreau_gradient(problem, tr.x_tstar, zeta,
                                       DiagonalMetric(elementwise_sqrt(tr.v_hat_tstar)));
      sum += rep.grad_norm_sq;
    }
    const double mean = sum / reps;
    log_t.push_back(std::log(static_cast<double>(T1)));
    log_g.push_back(std::log(mean));
    detail += "T+1=" + std::to_string(T1) + ": " + fmt("%.3g", mean) + "; ";
  }
  // Least-squares slope of log mean against log T.
  const double mt = (log_t[0] + log_t[1] + log_t[2]) / 3.0;
  const double mg = (log_g[0] + log_g[1] + log_g[2]) / 3.0;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 3; ++i) {
    num += (log_t[i] - mt) * (log_g[i] - mg);
    den += (log_t[i] - mt) * (log_t[i] - mt);
  }
  const double slope = num / den;
  Outcome out;
  out.pass = slope <= -0.35;
  out.detail = "FEMA3 slope " + fmt("%.3f", slope) + " (limit -0.35)";
  out.notes.push_back("mean squared envelope gradient at x_t*: " + detail.substr(0, detail.size() - 2));
  return out;
}

Outcome figure_ordering() {
  const fs::path dir = kWork / "paper_run_1";
  if (!paper_run(dir)) {
    return {false, "the CLI run of the paper config failed", {}};
  }
  // (algorithm, alpha) -> final-epoch gaps over repetitions.
  std::map<std::string, std::map<std::string, std::vector<double>>> finals;
  std::ifstream in(dir / "runs.csv");
  std::string line;
  std::getline(in, line);
  std::uint64_t last_epoch = 0;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() < 5) continue;
    last_epoch = std::max<std::uint64_t>(last_epoch, std::stoull(f[3]));
    rows.push_back(std::move(f));
  }
  for (const auto& f : rows) {
    if (std::stoull(f[3]) == last_epoch) finals[f[0]][f[1]].push_back(std::stod(f[4]));
  }
  std::map<std::string, double> best;
  for (const auto& [alg, by_alpha] : finals) {
    double b = INFINITY;
    for (const auto& [alpha, gaps] : by_alpha) b = std::min(b, median(gaps));
    best[alg] = b;
  }
  for (const char* alg : {"FEMA1", "FEMA3", "SGD", "ZEMA3", "ZSGD"}) {
    if (!best.count(alg)) return {false, std::string("no runs for ") + alg, {}};
  }
  const bool a = best["FEMA3"] <= best["FEMA1"];
  const bool b = best["FEMA1"] <= best["SGD"];
  const bool c = best["ZEMA3"] <= best["ZSGD"];
  Outcome out;
  out.pass = a && b && c;
  out.detail = std::string("FEMA3 <= FEMA1 ") + (a ? "holds" : "fails") + ", FEMA1 <= SGD " +
               (b ? "holds" : "fails") + ", ZEMA3 <= ZSGD " + (c ? "holds" : "fails");
  std::string values = "best median final gap at epoch " + std::to_string(last_epoch) + ":";
  for (const auto& [alg, v] : best) values += " " + alg + " " + fmt("%.3g", v);
  out.notes.push_back(values);
  return out;
}

Outcome determinism() {
  const fs::path one = kWork / "paper_run_1";
  const fs::path two = kWork / "paper_run_2";
  if (!paper_run(one) || !paper_run(two)) {
    return {false, "the CLI run of the paper config failed", {}};
  }
  std::vector<std::string> differing;
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(one)) {
    if (entry.path().extension() != ".csv") continue;
    ++compared;
    const auto other = two / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
      differing.push_back(entry.path().filename().string());
    }
  }
  Outcome out;
  out.pass = compared > 0 && differing.empty();
  out.detail = std::to_string(compared) + " CSV files compared, " +
               std::to_string(differing.size()) + " differ";
  return out;
}

}  // namespace acceptance
