// Acceptance suite: one verdict line per criterion. Exit status is nonzero
// when any criterion fails. Pass criterion numbers as arguments to run a subset.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <set>
#include <string>

#include "criteria.hpp"

namespace {

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // 0 means no runtime requirement
  acceptance::Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "scaled prox nonexpansiveness", 10, acceptance::prox_nonexpansive},
    {2, "envelope gradient formula vs finite differences", 30, acceptance::moreau_gradient_formula},
    {3, "two-point estimator unbiasedness", 60, acceptance::zeroth_order_unbiased},
    {4, "smoothing error within mu L_F", 60, acceptance::smoothing_bound},
    {5, "ball moments d/(d+p)", 30, acceptance::sphere_moments},
    {6, "SGD and AMSGrad reductions", 0, acceptance::reductions},
    {7, "v_hat monotonicity and infinity-norm bounds", 0, acceptance::accumulator_bounds},
    {8, "momentum bound", 0, acceptance::momentum_bound},
    {9, "t* law goodness of fit", 0, acceptance::tstar_law},
    {10, "stationarity rate slope on least absolute deviations", 600, acceptance::rate_slope},
    {11, "phase retrieval ordering of best final gaps", 1800, acceptance::figure_ordering},
    {12, "weak convexity certificates", 0, acceptance::weak_convexity_certificates},
    {13, "byte-identical CSVs across repeated runs", 0, acceptance::determinism},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : kCriteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    acceptance::Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = out.pass;
    std::string detail = out.detail;
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
      pass = false;
      detail += "; over the runtime budget";
    }
    if (!pass) ++failures;
    std::printf("criterion %2d: %s  %s (%s) [%.1f s]\n", c.id, pass ? "PASS" : "FAIL", c.name,
                detail.c_str(), secs);
    for (const auto& note : out.notes) std::printf("    %s\n", note.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
