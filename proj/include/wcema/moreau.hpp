#pragma once

#include <cstdint>

#include "wcema/metric.hpp"
#include "wcema/problem.hpp"
#include "wcema/vector.hpp"

namespace wcema {

struct InnerSolverOptions {
  /// Stop when successive iterates are within tol in the scaled norm.
  double tol = 1e-9;
  std::uint64_t max_iter = 5000;
  /// Use the loss's closed-form prox point when it provides one.
  bool allow_exact = true;
};

struct ProxPointResult {
  Vector point;
  /// Scaled distance between the last two inner iterates (0 for closed forms).
  double residual = 0.0;
  std::uint64_t iterations = 0;
  bool converged = false;
  bool exact = false;
  /// psi(y) + (1/2 zeta) ||M^{1/2}(x - y)||^2 at the returned point.
  double subproblem_value = 0.0;
};

/// argmin_y psi(y) + (1/2 zeta) ||M^{1/2}(x - y)||^2 with M = metric.
///
/// The subproblem is (1/zeta - rho_M)-strongly convex in the M-norm, where
/// rho_M is the weak-convexity modulus of f measured in M. Throws
/// PreconditionError when zeta * rho_M >= 1.
///
/// Inner solver: closed form when the loss provides one; proximal gradient
/// with a constant step for losses with a Lipschitz gradient; otherwise the
/// proximal subgradient method with steps 2 / ((1/zeta - rho_M)(k + 2)),
/// returning the best of the last iterate, the (k+1)-weighted average and
/// the best iterate seen.
ProxPointResult scaled_prox_point(const CompositeProblem& problem, const Vector& x,
                                  double zeta, const DiagonalMetric& metric,
                                  const InnerSolverOptions& options = {});

/// psi_{zeta,M}(x), the scaled Moreau envelope.
double envelope_value(const CompositeProblem& problem, const Vector& x, double zeta,
                      const DiagonalMetric& metric, const InnerSolverOptions& options = {});

struct StationarityReport {
  Vector x;
  double zeta = 0.0;
  DiagonalMetric metric = DiagonalMetric::identity(1);
  Vector prox_point;
  /// zeta^{-1} M (x - prox_point).
  Vector gradient;
  double grad_norm_sq = 0.0;
  double envelope = 0.0;
  double inner_residual = 0.0;
  std::uint64_t inner_iterations = 0;
  bool converged = false;
  bool exact = false;
};

/// Gradient of the scaled envelope, zeta^{-1} M (x - prox_{zeta psi, M}(x)).
StationarityReport moreau_gradient(const CompositeProblem& problem, const Vector& x,
                                   double zeta, const DiagonalMetric& metric,
                                   const InnerSolverOptions& options = {});

/// zeta = 1 / (2 max(rho, rho_M)) where rho_M is rho measured in `metric`;
/// equals 1/(2 rho) whenever the metric dominates Q. Convex problems use 1.
double default_zeta(const CompositeProblem& problem, const DiagonalMetric& metric);

}  // namespace wcema
