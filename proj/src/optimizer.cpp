#include "wcema/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wcema/errors.hpp"
#include "wcema/zoo.hpp"

namespace wcema {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("stepsize alpha must be finite and positive");
  }
}

Vector default_q(const CompositeProblem& problem, const Preset& accumulator) {
  const std::size_t d = problem.dimension();
  if (accumulator.mode == AccumulatorMode::identity) return Vector(d, 1.0);
  if (problem.metric) return problem.metric->diagonal();
  return Vector(d, 1e-8);
}

enum class OracleKind { first_order, zeroth_order };

RunTrace run_loop(const CompositeProblem& problem, const Preset& accumulator,
                  const StepsizeSchedule& steps, std::uint64_t T, const Vector& x0,
                  OracleKind kind, double mu, const RunSeeds& seeds,
                  const RunOptions& options) {
  const std::size_t d = problem.dimension();
  require_same_size(x0.size(), d, "optimizer x0");
  require_finite(x0, "optimizer x0");
  if (!problem.regularizer.contains(x0.view())) {
    throw DomainError("optimizer: x0 is outside dom h (" + problem.regularizer.describe() +
                      ")");
  }
  accumulator.schedule.validate();
  if (kind == OracleKind::zeroth_order && (!(mu > 0.0) || !std::isfinite(mu))) {
    throw DomainError("zeroth-order run: mu must be finite and positive");
  }

  RunTrace trace;
  trace.seeds = seeds;
  trace.stepsizes = steps.materialize(T);
  {
    RandomStream tstar_rng(seeds.tstar);
    trace.tstar = select_tstar(trace.stepsizes, tstar_rng);
  }
  if (accumulator.mode != AccumulatorMode::identity &&
      !accumulator.schedule.satisfies_tau_condition()) {
    trace.warnings.push_back("tau = beta1/sqrt(beta2) >= 1; the convergence bounds do not apply");
  }
  if (problem.weak_convexity > 0.0) {
    const double limit = 1.0 / (2.0 * problem.weak_convexity);
    const double biggest = *std::max_element(trace.stepsizes.begin(), trace.stepsizes.end());
    if (biggest > limit) {
      std::ostringstream os;
      os << "max stepsize " << biggest << " exceeds 1/rho_bar = " << limit
         << " with rho_bar = 2 rho";
      trace.warnings.push_back(os.str());
    }
  }

  Vector q = options.q ? *options.q : default_q(problem, accumulator);
  require_same_size(q.size(), d, "optimizer q");
  EmaState state = EmaState::initial(q, accumulator.mode);
  trace.q = std::move(q);

  const StochasticLoss& loss = *problem.loss;
  const Regularizer& h = problem.regularizer;
  const bool prox_is_identity = h.kind() == Regularizer::Kind::zero;
  RandomStream xi_rng(seeds.xi);
  RandomStream u_rng(seeds.u);

  Vector x = x0;
  std::vector<double> g(d);
  std::vector<double> u(d);
  std::vector<double> scratch(d);
  std::vector<double> metric(d);
  if (options.record_norms) {
    trace.g_norm1.reserve(T + 1);
    trace.v_hat_sqrt_norm1.reserve(T + 1);
  }

  auto record = [&](std::uint64_t t) {
    if (options.objective_every != 0 && t % options.objective_every == 0) {
      trace.objective_values.push_back(problem.objective(x));
      trace.objective_iterations.push_back(t);
    }
    if (options.store_every != 0 && t % options.store_every == 0) {
      trace.stored_iterates.emplace_back(t, x);
    }
  };

  for (std::uint64_t t = 0; t <= T; ++t) {
    record(t);
    const bool capture = t == trace.tstar;
    if (capture) trace.x_tstar = x;

    const SampleId xi = loss.draw_sample(xi_rng);
    ++trace.oracle.samples;
    if (kind == OracleKind::first_order) {
      loss.sample_subgradient(x.view(), xi, g);
      ++trace.oracle.subgradient_calls;
    } else {
      u_rng.unit_sphere(u);
      estimate_gradient(loss, x.view(), xi, u, mu, scratch, g);
      trace.oracle.value_calls += 2;
    }
    ema_update_in_place(state, g, accumulator.schedule);

    const double alpha = trace.stepsizes[t];
    auto xs = x.view();
    for (std::size_t i = 0; i < d; ++i) {
      metric[i] = std::sqrt(state.v_hat[i]);
      xs[i] -= alpha * state.m[i] / metric[i];
    }
    if (!prox_is_identity) h.prox_in_place(xs, alpha, metric);
    for (std::size_t i = 0; i < d; ++i) {
      if (!std::isfinite(xs[i])) {
        throw NumericError("non-finite iterate at iteration " + std::to_string(t + 1) +
                           " (coordinate " + std::to_string(i) + ")");
      }
    }

    if (capture) trace.v_hat_tstar = state.v_hat;
    if (options.record_norms) {
      double gn = 0.0;
      double vn = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        gn += std::abs(g[i]);
        vn += metric[i];
      }
      trace.g_norm1.push_back(gn);
      trace.v_hat_sqrt_norm1.push_back(vn);
    }
  }
  record(T + 1);
  trace.x_final = std::move(x);
  trace.final_state = std::move(state);
  return trace;
}

}  // namespace

StepsizeSchedule StepsizeSchedule::over_sqrt_horizon(double alpha) {
  check_alpha(alpha);
  StepsizeSchedule s;
  s.mode_ = Mode::over_sqrt_horizon;
  s.alpha_ = alpha;
  return s;
}

StepsizeSchedule StepsizeSchedule::constant(double alpha) {
  check_alpha(alpha);
  StepsizeSchedule s;
  s.mode_ = Mode::constant;
  s.alpha_ = alpha;
  return s;
}

StepsizeSchedule StepsizeSchedule::explicit_sequence(std::vector<double> values) {
  if (values.empty()) throw DomainError("explicit stepsize sequence is empty");
  for (double v : values) check_alpha(v);
  StepsizeSchedule s;
  s.mode_ = Mode::explicit_sequence;
  s.values_ = std::move(values);
  return s;
}

std::vector<double> StepsizeSchedule::materialize(std::uint64_t T) const {
  switch (mode_) {
    case Mode::over_sqrt_horizon:
      return std::vector<double>(T + 1, alpha_ / std::sqrt(static_cast<double>(T) + 1.0));
    case Mode::constant:
      return std::vector<double>(T + 1, alpha_);
    case Mode::explicit_sequence:
      if (values_.size() != T + 1) {
        throw DomainError("explicit stepsize sequence has " + std::to_string(values_.size()) +
                          " entries, expected T + 1 = " + std::to_string(T + 1));
      }
      return values_;
  }
  return {};
}

std::uint64_t select_tstar(const std::vector<double>& stepsizes, RandomStream& rng) {
  if (stepsizes.empty()) throw DomainError("select_tstar: empty stepsize sequence");
  double total = 0.0;
  for (double a : stepsizes) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw DomainError("select_tstar: stepsizes must be finite and positive");
    }
    total += a;
  }
  const double target = rng.uniform() * total;
  double cumulative = 0.0;
  for (std::size_t t = 0; t < stepsizes.size(); ++t) {
    cumulative += stepsizes[t];
    if (target < cumulative) return t;
  }
  return stepsizes.size() - 1;
}

RunTrace fema_run(const CompositeProblem& problem, const Preset& accumulator,
                  const StepsizeSchedule& steps, std::uint64_t T, const Vector& x0,
                  const RunSeeds& seeds, const RunOptions& options) {
  return run_loop(problem, accumulator, steps, T, x0, OracleKind::first_order, 0.0, seeds,
                  options);
}

RunTrace zema_run(const CompositeProblem& problem, const Preset& accumulator,
                  const StepsizeSchedule& steps, std::uint64_t T, const Vector& x0,
                  double mu, const RunSeeds& seeds, const RunOptions& options) {
  return run_loop(problem, accumulator, steps, T, x0, OracleKind::zeroth_order, mu, seeds,
                  options);
}

RunTrace sgd_baseline_run(const CompositeProblem& problem, const StepsizeSchedule& steps,
                          std::uint64_t T, const Vector& x0, const RunSeeds& seeds,
                          const RunOptions& options) {
  return fema_run(problem, preset("SGD"), steps, T, x0, seeds, options);
}

RunTrace zsgd_baseline_run(const CompositeProblem& problem, const StepsizeSchedule& steps,
                           std::uint64_t T, const Vector& x0, double mu,
                           const RunSeeds& seeds, const RunOptions& options) {
  return zema_run(problem, preset("SGD"), steps, T, x0, mu, seeds, options);
}

double default_smoothing(std::size_t d, std::uint64_t T) {
  return static_cast<double>(d) / std::sqrt(static_cast<double>(T) + 1.0);
}

}  // namespace wcema
