#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "wcema/vector.hpp"

namespace wcema {

/// beta_{1,t}, beta_2, beta_3 of the EMA recursion.
struct DecaySchedule {
  enum class Beta1Mode { constant, geometric };

  double beta1 = 0.0;
  Beta1Mode beta1_mode = Beta1Mode::constant;
  /// pi of beta_{1,t} = beta1 pi^{t-1}; used in geometric mode only.
  double pi = 0.5;
  double beta2 = 0.0;
  double beta3 = 0.0;

  /// Throws DomainError unless all betas lie in [0, 1) and pi in (0, 1).
  void validate() const;
  /// beta1 in constant mode; min(beta1, beta1 pi^{t-1}) in geometric mode
  /// (the min only matters at t = 0, where pi^{-1} > 1).
  double beta1_at(std::uint64_t t) const;
  /// beta1 / sqrt(beta2); +infinity when beta2 = 0 and beta1 > 0, 0 when beta1 = 0.
  double tau() const;
  /// tau < 1, the condition the convergence bounds need. Not enforced.
  bool satisfies_tau_condition() const;
};

enum class AccumulatorMode {
  /// Lines 5-7 of the method: momentum, second moment, max-corrected average.
  ema,
  /// m = g and v_hat = q forever (plain stochastic subgradient).
  identity,
  /// v_hat = v + q with no max correction (Adam without bias correction).
  plain,
};

const char* to_string(AccumulatorMode mode);

struct EmaState {
  Vector m;
  Vector v;
  Vector v_hat;
  /// Number of updates applied so far.
  std::uint64_t t = 0;
  AccumulatorMode mode = AccumulatorMode::ema;
  /// The initial v_hat; kept for the plain mode floor and for checkpoints.
  Vector q;

  /// m = v = 0, v_hat = q. Throws DomainError unless q > 0 elementwise.
  static EmaState initial(Vector q, AccumulatorMode mode = AccumulatorMode::ema);

  std::size_t size() const { return m.size(); }
};

/// Applies one step of the recursion in place. Throws NumericError on a
/// non-finite g and DimensionError on a length mismatch.
void ema_update_in_place(EmaState& state, std::span<const double> g,
                         const DecaySchedule& schedule);

EmaState ema_update(EmaState state, const Vector& g, const DecaySchedule& schedule);

struct Preset {
  std::string name;
  DecaySchedule schedule;
  AccumulatorMode mode = AccumulatorMode::ema;
};

/// FEMA1, FEMA2, FEMA3, AMSGrad, RMSProp, Adam, SGD (case-insensitive).
/// Throws ConfigError for anything else.
Preset preset(std::string_view name);

std::string checkpoint_to_json(const EmaState& state);
/// Throws ConfigError on malformed input.
EmaState checkpoint_from_json(std::string_view text);

}  // namespace wcema
