#include "wcema/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "wcema/errors.hpp"
#include "wcema/moreau.hpp"
#include "wcema/random.hpp"
#include "wcema/test_problems.hpp"

namespace wcema {

namespace {

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::optional<double> quadratic_optimum(const ProblemSpec& spec) {
  if (spec.regularizer != "none") return std::nullopt;
  double s = 0.0;
  for (std::size_t i = 0; i < spec.d; ++i) {
    const double a = spec.spectrum[i];
    const double c = spec.linear[i];
    if (a > 0.0) {
      s -= c * c / (4.0 * a);
    } else if (!(a == 0.0 && c == 0.0)) {
      return std::nullopt;
    }
  }
  return s;
}

}  // namespace

Regularizer build_regularizer(const ProblemSpec& spec) {
  if (spec.regularizer == "l1") return Regularizer::l1(spec.l1_weight);
  if (spec.regularizer == "box") {
    return Regularizer::box(Vector(spec.d, spec.box_lower), Vector(spec.d, spec.box_upper));
  }
  if (spec.regularizer == "ball") return Regularizer::ball(spec.ball_radius);
  if (spec.regularizer == "none") return Regularizer::zero();
  throw ConfigError("unknown regularizer '" + spec.regularizer + "'");
}

ProblemInstance build_problem(const ProblemSpec& spec, std::uint64_t seed) {
  ProblemInstance out;
  Regularizer h = build_regularizer(spec);
  if (spec.kind == ProblemSpec::Kind::phase_retrieval) {
    auto inst = std::make_shared<const PhaseRetrievalInstance>(
        generate_phase_retrieval(spec.d, spec.n, seed));
    out.phase_retrieval = inst;
    out.problem = make_phase_retrieval_problem(inst, h);
    // The generating signal is feasible only when h = 0 is guaranteed.
    if (spec.regularizer == "none") out.optimal_value = 0.0;
  } else {
    out.problem = make_test_quadratic(spec.spectrum, spec.linear, spec.noise, h);
    out.optimal_value = quadratic_optimum(spec);
  }
  return out;
}

Vector initial_point(const ProblemSpec& spec, const CompositeProblem& problem,
                     std::uint64_t seed) {
  RandomStream rng(seed);
  Vector x = rng.unit_sphere(spec.d);
  if (problem.regularizer.is_indicator()) {
    x = scaled_project(problem.regularizer, x, DiagonalMetric::identity(spec.d));
  }
  return x;
}

std::uint64_t data_seed(std::uint64_t master_seed, std::uint64_t repetition) {
  return derive_seed({master_seed, StreamPurpose::data, 0, 0, repetition});
}

std::uint64_t init_seed(std::uint64_t master_seed, std::uint64_t repetition) {
  return derive_seed({master_seed, StreamPurpose::init, 0, 0, repetition});
}

RunSeeds run_seeds(std::uint64_t master_seed, std::uint64_t algorithm_id,
                   std::uint64_t grid_index, std::uint64_t repetition) {
  RunSeeds s;
  s.xi = derive_seed({master_seed, StreamPurpose::xi, algorithm_id, grid_index, repetition});
  s.u = derive_seed({master_seed, StreamPurpose::u, algorithm_id, grid_index, repetition});
  s.tstar = derive_seed({master_seed, StreamPurpose::tstar, algorithm_id, grid_index, repetition});
  return s;
}

RunRecord run_single(const ExperimentConfig& config, const AlgorithmSpec& algorithm,
                     std::size_t grid_index, double alpha, std::uint64_t repetition) {
  RunRecord rec;
  rec.algorithm = algorithm.name;
  rec.alpha = alpha;
  rec.grid_index = grid_index;
  rec.repetition = repetition;
  const RunSeeds seeds = run_seeds(config.master_seed, algorithm.stream_id, grid_index, repetition);
  rec.seed = seeds.xi;
  try {
    const ProblemInstance inst =
        build_problem(config.problem, data_seed(config.master_seed, repetition));
    const CompositeProblem& problem = inst.problem;
    const Vector x0 =
        initial_point(config.problem, problem, init_seed(config.master_seed, repetition));
    const std::uint64_t T = config.horizon();
    const StepsizeSchedule steps = config.step_rule == StepRule::constant
                                       ? StepsizeSchedule::constant(alpha)
                                       : StepsizeSchedule::over_sqrt_horizon(alpha);
    RunOptions options;
    options.objective_every = config.problem.n;
    RunTrace trace = algorithm.zeroth_order
                         ? zema_run(problem, algorithm.preset, steps, T, x0,
                                    config.smoothing(), seeds, options)
                         : fema_run(problem, algorithm.preset, steps, T, x0, seeds, options);
    const double offset = inst.optimal_value.value_or(0.0);
    rec.initial_gap = trace.objective_values.front() - offset;
    rec.epoch_gaps.reserve(config.epochs);
    for (std::size_t k = 1; k < trace.objective_values.size(); ++k) {
      rec.epoch_gaps.push_back(trace.objective_values[k] - offset);
    }
    rec.tstar = trace.tstar;
    rec.x_tstar = trace.x_tstar;
    rec.v_hat_tstar = trace.v_hat_tstar;
    rec.q = trace.q;
    rec.warnings = trace.warnings;

    if (config.stationarity) {
      const DiagonalMetric vmetric(elementwise_sqrt(trace.v_hat_tstar));
      const double zv = default_zeta(problem, vmetric);
      const StationarityReport rv = moreau_gradient(problem, trace.x_tstar, zv, vmetric, config.inner);
      const DiagonalMetric identity = DiagonalMetric::identity(problem.dimension());
      const double zi = default_zeta(problem, identity);
      const StationarityReport ri = moreau_gradient(problem, trace.x_tstar, zi, identity, config.inner);
      rec.moreau_vhat = rv.grad_norm_sq;
      rec.zeta_vhat = zv;
      rec.moreau_identity = ri.grad_norm_sq;
      rec.zeta_identity = zi;
      rec.envelope_gap = ri.envelope - offset;
      rec.inner_converged = rv.converged && ri.converged;
    }
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const ProgressCallback& progress) {
  validate(config);
  ExperimentResult result;
  result.config = config;
  result.optimal_value_known =
      build_problem(config.problem, data_seed(config.master_seed, 0)).optimal_value.has_value();

  struct Job {
    AlgorithmSpec algorithm;
    std::size_t grid_index;
    double alpha;
    std::uint64_t repetition;
  };
  std::vector<Job> jobs;
  const std::vector<double> alphas = config.grid.values();
  for (const auto& name : config.algorithms) {
    const AlgorithmSpec spec = algorithm_spec(name);
    for (std::size_t g = 0; g < alphas.size(); ++g) {
      for (std::uint64_t r = 0; r < config.repetitions; ++r) jobs.push_back({spec, g, alphas[g], r});
    }
  }
  result.runs.resize(jobs.size());

  std::size_t workers = config.threads;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      const Job& job = jobs[k];
      result.runs[k] = run_single(config, job.algorithm, job.grid_index, job.alpha, job.repetition);
      const std::size_t finished = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(finished, jobs.size());
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return result;
}

std::vector<SummaryRow> summarize(const ExperimentResult& result) {
  std::vector<SummaryRow> rows;
  std::map<std::pair<std::string, std::size_t>, std::size_t> index;
  std::vector<std::vector<double>> gaps;
  std::vector<std::vector<double>> moreau;
  for (const auto& run : result.runs) {
    auto key = std::make_pair(run.algorithm, run.grid_index);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, rows.size()).first;
      rows.push_back({run.algorithm, run.alpha, std::nullopt, std::nullopt, std::nullopt, 0});
      gaps.emplace_back();
      moreau.emplace_back();
    }
    if (!run.ok()) continue;
    gaps[it->second].push_back(run.final_gap());
    if (run.moreau_vhat) moreau[it->second].push_back(*run.moreau_vhat);
  }
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rows[k].successful_runs = gaps[k].size();
    if (!gaps[k].empty()) {
      rows[k].mean_final_gap = mean(gaps[k]);
      rows[k].median_final_gap = median(gaps[k]);
    }
    if (!moreau[k].empty()) rows[k].mean_moreau_grad_norm_sq = mean(moreau[k]);
  }
  return rows;
}

std::vector<BestCurve> best_over_grid(const ExperimentResult& result) {
  std::vector<BestCurve> out;
  const std::size_t epochs = result.config.epochs;
  for (const auto& name : result.config.algorithms) {
    const std::string key = algorithm_spec(name).name;
    // Per grid point: sum of gaps and count of successful runs.
    std::map<std::size_t, std::pair<std::vector<double>, std::size_t>> acc;
    for (const auto& run : result.runs) {
      if (run.algorithm != key || !run.ok()) continue;
      auto& [sum, count] = acc[run.grid_index];
      if (sum.empty()) sum.assign(epochs, 0.0);
      for (std::size_t e = 0; e < epochs; ++e) sum[e] += run.epoch_gaps[e];
      ++count;
    }
    BestCurve curve{key, std::vector<double>(epochs, std::numeric_limits<double>::infinity())};
    for (const auto& [g, entry] : acc) {
      for (std::size_t e = 0; e < epochs; ++e) {
        curve.gaps[e] = std::min(curve.gaps[e], entry.first[e] / static_cast<double>(entry.second));
      }
    }
    if (!acc.empty()) out.push_back(std::move(curve));
  }
  return out;
}

std::optional<double> best_median_final_gap(const ExperimentResult& result,
                                            const std::string& algorithm) {
  const std::string key = algorithm_spec(algorithm).name;
  std::optional<double> best;
  for (const auto& row : summarize(result)) {
    if (row.algorithm != key || !row.median_final_gap) continue;
    if (!best || *row.median_final_gap < *best) best = row.median_final_gap;
  }
  return best;
}

}  // namespace wcema
