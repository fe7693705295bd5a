#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "wcema/accumulator.hpp"

namespace wcema {

enum class BoundVariant { projected_fema, proximal_fema, projected_zema, proximal_zema };

const char* to_string(BoundVariant variant);
/// Throws ConfigError for an unknown name.
BoundVariant parse_bound_variant(std::string_view name);

struct BoundInputs {
  double rho = 0.0;
  double rho_bar = 0.0;
  /// sup ||G(x, xi)||_inf. Ignored by the zeroth-order variants, which use d L_F.
  double G_inf = 0.0;
  double D_inf = 0.0;
  std::size_t d = 0;
  DecaySchedule schedule;
  /// alpha_0..alpha_T; T + 1 = stepsizes.size().
  std::vector<double> stepsizes;
  /// psi_{1/rho_bar}(x_0) - psi*.
  double delta_psi = 0.0;
  std::optional<double> mu;
  std::optional<double> lipschitz;
  /// lambda_min(Q), needed by the proximal variants.
  std::optional<double> lambda_min_q;
};

/// Per-iteration quantities of one run for the a posteriori form of the bound.
struct BoundTrace {
  std::vector<double> g_norm1;
  std::vector<double> v_hat_sqrt_norm1;
  /// Lower bound on lambda_min(V_t^{1/2}) used in the proximal C_1 term.
  double min_metric = 0.0;
};

struct BoundBreakdown {
  double value = 0.0;
  double tau = 0.0;
  /// The a priori constants (sum_t alpha_t^2 C_1 and C_2 in trace mode).
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double sum_alpha = 0.0;
  double sum_alpha_sq = 0.0;
};

/// Worst-case bound on E ||grad psi_{1/rho_bar, V_{t*}^{1/2}}(x_{t*})||^2 with the
/// corollary-style constants
///   C_1 = d G / ((1 - tau)(1 - beta1) sqrt((1 - beta2)(1 - beta3)))           projected
///   C_1 = (2 / ((1 - tau)(1 - beta1)) + 1) d G / sqrt(...) + d G^2 / lambda_min(Q)  proximal
///   C_2 = (d D^2 G / 2)(beta1^2 / (1 - 2 pi) + 1)    geometric beta1 (pi < 1/2)
///   C_2 = (d D^2 G / 2)((T + 1) beta1^2 + 1)       constant beta1
///   C_3 = 2 mu L_F                                 zeroth order, G = d L_F.
/// Throws DomainError when a parameter is outside the domain of the formula.
BoundBreakdown theory_bound(const BoundInputs& in, BoundVariant variant);

/// Same bound with C_{1,t} and C_{2,T} evaluated from one run's recorded norms
/// instead of their worst-case values.
BoundBreakdown theory_bound_from_trace(const BoundInputs& in, BoundVariant variant,
                                       const BoundTrace& trace);

}  // namespace wcema
