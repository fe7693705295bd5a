#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wcema/accumulator.hpp"
#include "wcema/problem.hpp"
#include "wcema/random.hpp"
#include "wcema/vector.hpp"

namespace wcema {

/// alpha_0..alpha_T.
class StepsizeSchedule {
 public:
  enum class Mode { over_sqrt_horizon, constant, explicit_sequence };

  /// alpha_t = alpha / sqrt(T + 1).
  static StepsizeSchedule over_sqrt_horizon(double alpha);
  /// alpha_t = alpha.
  static StepsizeSchedule constant(double alpha);
  /// alpha_t = values[t]; T + 1 must equal values.size().
  static StepsizeSchedule explicit_sequence(std::vector<double> values);

  Mode mode() const { return mode_; }
  double alpha() const { return alpha_; }

  /// The T + 1 stepsizes. Throws DomainError on a nonpositive entry or a
  /// length mismatch for explicit sequences.
  std::vector<double> materialize(std::uint64_t T) const;

 private:
  Mode mode_ = Mode::constant;
  double alpha_ = 0.0;
  std::vector<double> values_;
};

/// Draws t with probability stepsizes[t] / sum(stepsizes) by inverse CDF.
std::uint64_t select_tstar(const std::vector<double>& stepsizes, RandomStream& rng);

/// Seeds of the per-run random streams.
struct RunSeeds {
  std::uint64_t xi = 0;
  std::uint64_t u = 0;
  std::uint64_t tstar = 0;
};

struct RunOptions {
  /// v_hat_{-1}. Defaults to 1 for the identity accumulator, otherwise the
  /// problem metric when it has one, otherwise 1e-8.
  std::optional<Vector> q;
  /// Record psi(x_t) at t = 0, k, 2k, ... (0 disables). With k = n these are
  /// the epoch boundaries.
  std::uint64_t objective_every = 0;
  /// Store x_t at t = 0, k, 2k, ... (0 disables).
  std::uint64_t store_every = 0;
  /// Record ||g_t||_1 and ||v_hat_t^{1/2}||_1 for every t.
  bool record_norms = false;
};

struct OracleCounts {
  std::uint64_t samples = 0;
  std::uint64_t subgradient_calls = 0;
  std::uint64_t value_calls = 0;
};

struct RunTrace {
  std::vector<double> stepsizes;
  /// psi at the recorded iterates; objective_iterations[k] is the index t.
  std::vector<double> objective_values;
  std::vector<std::uint64_t> objective_iterations;
  std::vector<std::pair<std::uint64_t, Vector>> stored_iterates;
  std::uint64_t tstar = 0;
  Vector x_tstar;
  /// v_hat_{t*}, which defines the metric V_{t*}^{1/2} of the output.
  Vector v_hat_tstar;
  /// v_hat_{-1} = q.
  Vector q;
  /// x_{T+1}.
  Vector x_final;
  EmaState final_state;
  RunSeeds seeds;
  OracleCounts oracle;
  std::vector<double> g_norm1;
  std::vector<double> v_hat_sqrt_norm1;
  std::vector<std::string> warnings;
};

/// Proximal EMA subgradient method: T + 1 iterations of
///   g_t = G(x_t, xi_t), EMA update, x_{t+1} = prox_{alpha_t h, V_t^{1/2}}(x_t - alpha_t V_t^{-1/2} m_t).
/// t* is drawn before the loop so x_{t*} is captured in one pass.
/// Throws NumericError naming the iteration if an iterate becomes non-finite.
RunTrace fema_run(const CompositeProblem& problem, const Preset& accumulator,
                  const StepsizeSchedule& steps, std::uint64_t T, const Vector& x0,
                  const RunSeeds& seeds, const RunOptions& options = {});

/// Same loop with g_t replaced by the two-point estimator G_mu(x_t, xi_t, u_t).
RunTrace zema_run(const CompositeProblem& problem, const Preset& accumulator,
                  const StepsizeSchedule& steps, std::uint64_t T, const Vector& x0,
                  double mu, const RunSeeds& seeds, const RunOptions& options = {});

/// fema_run / zema_run with the SGD preset (identity accumulator, q = 1).
RunTrace sgd_baseline_run(const CompositeProblem& problem, const StepsizeSchedule& steps,
                          std::uint64_t T, const Vector& x0, const RunSeeds& seeds,
                          const RunOptions& options = {});
RunTrace zsgd_baseline_run(const CompositeProblem& problem, const StepsizeSchedule& steps,
                           std::uint64_t T, const Vector& x0, double mu,
                           const RunSeeds& seeds, const RunOptions& options = {});

/// d / sqrt(T + 1).
double default_smoothing(std::size_t d, std::uint64_t T);

}  // namespace wcema
