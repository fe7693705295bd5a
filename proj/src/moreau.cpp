#include "wcema/moreau.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wcema/errors.hpp"

namespace wcema {

namespace {

double scaled_dist(const Vector& a, const Vector& b, const Vector& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += m[i] * diff * diff;
  }
  return std::sqrt(s);
}

double subproblem(const CompositeProblem& problem, const Vector& x, const Vector& y,
                  double zeta, const Vector& m) {
  const double d = scaled_dist(x, y, m);
  return problem.objective(y) + d * d / (2.0 * zeta);
}

}  // namespace

ProxPointResult scaled_prox_point(const CompositeProblem& problem, const Vector& x,
                                  double zeta, const DiagonalMetric& metric,
                                  const InnerSolverOptions& options) {
  const std::size_t d = problem.dimension();
  require_same_size(x.size(), d, "scaled_prox_point x");
  require_same_size(metric.size(), d, "scaled_prox_point metric");
  require_finite(x, "scaled_prox_point x");
  if (!(zeta > 0.0) || !std::isfinite(zeta)) {
    throw DomainError("scaled_prox_point: zeta must be finite and positive");
  }
  const double rho_m = problem.weak_convexity_under(metric);
  if (zeta * rho_m >= 1.0) {
    throw PreconditionError("scaled_prox_point: zeta * rho = " + std::to_string(zeta * rho_m) +
                            " >= 1, the prox subproblem is not strongly convex");
  }
  const Vector& m = metric.diagonal();
  const StochasticLoss& loss = *problem.loss;
  const Regularizer& h = problem.regularizer;

  ProxPointResult result;
  if (options.allow_exact) {
    if (auto exact = loss.exact_prox_point(x, zeta, metric, h)) {
      result.point = std::move(*exact);
      result.exact = true;
      result.converged = true;
      result.subproblem_value = subproblem(problem, x, result.point, zeta, m);
      return result;
    }
  }

  const double strong = 1.0 / zeta - rho_m;
  Vector y = x;
  h.prox_in_place(y.view(), zeta, m.view());
  Vector g(d);
  Vector prev(d);

  if (const auto lip = loss.gradient_lipschitz()) {
    const double step = 1.0 / (*lip / metric.min_entry() + 1.0 / zeta);
    for (std::uint64_t k = 0; k < options.max_iter; ++k) {
      prev = y;
      loss.full_subgradient(y.view(), g.view());
      for (std::size_t i = 0; i < d; ++i) {
        y[i] -= step * (g[i] / m[i] + (y[i] - x[i]) / zeta);
      }
      h.prox_in_place(y.view(), step, m.view());
      result.iterations = k + 1;
      result.residual = scaled_dist(y, prev, m);
      if (result.residual < options.tol) {
        result.converged = true;
        break;
      }
    }
    result.subproblem_value = subproblem(problem, x, y, zeta, m);
    result.point = std::move(y);
    return result;
  }

  Vector average(d);
  double weight_sum = 0.0;
  Vector best = y;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::uint64_t k = 0; k < options.max_iter; ++k) {
    prev = y;
    const double fy = loss.value_and_subgradient(y.view(), g.view());
    const double dist = scaled_dist(x, y, m);
    const double phi = fy + h.value(y) + dist * dist / (2.0 * zeta);
    if (phi < best_value) {
      best_value = phi;
      best = y;
    }
    const double w = static_cast<double>(k + 1);
    weight_sum += w;
    for (std::size_t i = 0; i < d; ++i) average[i] += (w / weight_sum) * (y[i] - average[i]);

    const double step = 2.0 / (strong * static_cast<double>(k + 2));
    for (std::size_t i = 0; i < d; ++i) {
      y[i] -= step * (g[i] / m[i] + (y[i] - x[i]) / zeta);
    }
    h.prox_in_place(y.view(), step, m.view());
    require_finite(y, "scaled_prox_point inner iterate");
    result.iterations = k + 1;
    result.residual = scaled_dist(y, prev, m);
    if (result.residual < options.tol) {
      result.converged = true;
      break;
    }
  }
  const double last_value = subproblem(problem, x, y, zeta, m);
  const double avg_value = subproblem(problem, x, average, zeta, m);
  result.point = std::move(y);
  result.subproblem_value = last_value;
  if (avg_value < result.subproblem_value) {
    result.point = average;
    result.subproblem_value = avg_value;
  }
  if (best_value < result.subproblem_value) {
    result.point = best;
    result.subproblem_value = best_value;
  }
  return result;
}

double envelope_value(const CompositeProblem& problem, const Vector& x, double zeta,
                      const DiagonalMetric& metric, const InnerSolverOptions& options) {
  return scaled_prox_point(problem, x, zeta, metric, options).subproblem_value;
}

StationarityReport moreau_gradient(const CompositeProblem& problem, const Vector& x,
                                   double zeta, const DiagonalMetric& metric,
                                   const InnerSolverOptions& options) {
  ProxPointResult prox = scaled_prox_point(problem, x, zeta, metric, options);
  StationarityReport r;
  r.x = x;
  r.zeta = zeta;
  r.metric = metric;
  r.gradient = Vector(x.size());
  const Vector& m = metric.diagonal();
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.gradient[i] = m[i] * (x[i] - prox.point[i]) / zeta;
    s += r.gradient[i] * r.gradient[i];
  }
  r.grad_norm_sq = s;
  r.envelope = prox.subproblem_value;
  r.prox_point = std::move(prox.point);
  r.inner_residual = prox.residual;
  r.inner_iterations = prox.iterations;
  r.converged = prox.converged;
  r.exact = prox.exact;
  return r;
}

double default_zeta(const CompositeProblem& problem, const DiagonalMetric& metric) {
  const double rho = std::max(problem.weak_convexity, problem.weak_convexity_under(metric));
  if (rho <= 0.0) return 1.0;
  return 1.0 / (2.0 * rho);
}

}  // namespace wcema
