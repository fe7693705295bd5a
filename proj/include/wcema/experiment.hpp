#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wcema/config.hpp"
#include "wcema/optimizer.hpp"
#include "wcema/phase_retrieval.hpp"
#include "wcema/problem.hpp"

namespace wcema {

struct ProblemInstance {
  CompositeProblem problem;
  /// psi*, when known exactly (0 for noiseless phase retrieval).
  std::optional<double> optimal_value;
  std::shared_ptr<const PhaseRetrievalInstance> phase_retrieval;
};

/// Builds the composite problem; `data_seed` drives any random data.
ProblemInstance build_problem(const ProblemSpec& spec, std::uint64_t data_seed);
Regularizer build_regularizer(const ProblemSpec& spec);

/// Uniform on the unit sphere, then mapped into dom h by the identity-metric prox.
Vector initial_point(const ProblemSpec& spec, const CompositeProblem& problem,
                     std::uint64_t init_seed);

/// Stream seeds. Data and initial point depend on (master seed, repetition)
/// only, so every algorithm in a repetition sees the same instance and x_0.
std::uint64_t data_seed(std::uint64_t master_seed, std::uint64_t repetition);
std::uint64_t init_seed(std::uint64_t master_seed, std::uint64_t repetition);
RunSeeds run_seeds(std::uint64_t master_seed, std::uint64_t algorithm_id,
                   std::uint64_t grid_index, std::uint64_t repetition);

struct RunRecord {
  std::string algorithm;
  double alpha = 0.0;
  std::size_t grid_index = 0;
  std::uint64_t repetition = 0;
  /// Seed of the run's sample stream; identifies the run in the CSV.
  std::uint64_t seed = 0;
  /// psi(x_0) - psi*.
  double initial_gap = 0.0;
  /// psi(x_{e n}) - psi* for epochs e = 1..E (raw psi when psi* is unknown).
  std::vector<double> epoch_gaps;
  std::uint64_t tstar = 0;
  Vector x_tstar;
  Vector v_hat_tstar;
  Vector q;
  /// Stationarity at x_{t*} in the metric V_{t*}^{1/2}, and in Q = I.
  std::optional<double> moreau_vhat;
  std::optional<double> zeta_vhat;
  std::optional<double> moreau_identity;
  std::optional<double> zeta_identity;
  /// psi_{zeta, I}(x_{t*}) - psi*.
  std::optional<double> envelope_gap;
  bool inner_converged = true;
  std::vector<std::string> warnings;
  /// Nonempty when the run failed; the other outputs are then meaningless.
  std::string error;

  bool ok() const { return error.empty(); }
  double final_gap() const { return epoch_gaps.back(); }
};

struct ExperimentResult {
  ExperimentConfig config;
  /// Sorted by (algorithm order in the config, grid index, repetition).
  std::vector<RunRecord> runs;
  bool optimal_value_known = false;
};

using ProgressCallback = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every (algorithm, stepsize, repetition). Independent runs execute on
/// `config.threads` workers; the result does not depend on the thread count.
/// A failing run is recorded with its error and does not stop the sweep.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const ProgressCallback& progress = {});

/// Executes one run of the sweep.
RunRecord run_single(const ExperimentConfig& config, const AlgorithmSpec& algorithm,
                     std::size_t grid_index, double alpha, std::uint64_t repetition);

struct SummaryRow {
  std::string algorithm;
  double alpha = 0.0;
  std::optional<double> mean_final_gap;
  std::optional<double> mean_moreau_grad_norm_sq;
  std::optional<double> median_final_gap;
  std::size_t successful_runs = 0;
};

std::vector<SummaryRow> summarize(const ExperimentResult& result);

struct BestCurve {
  std::string algorithm;
  /// Pointwise-in-epoch minimum over alpha of the repetition-mean gap, e = 1..E.
  std::vector<double> gaps;
};

std::vector<BestCurve> best_over_grid(const ExperimentResult& result);

/// min over alpha of the median (over repetitions) final gap.
std::optional<double> best_median_final_gap(const ExperimentResult& result,
                                            const std::string& algorithm);

}  // namespace wcema
