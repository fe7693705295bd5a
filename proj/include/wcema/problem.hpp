#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "wcema/metric.hpp"
#include "wcema/random.hpp"
#include "wcema/regularizer.hpp"
#include "wcema/vector.hpp"

namespace wcema {

/// Identifier of one stochastic sample xi. For finite sums this is the row index.
using SampleId = std::uint64_t;

/// The weakly convex loss f = E_xi[F(., xi)] with value and subgradient oracles.
///
/// The span-based virtuals are the hot-path interface; the Vector overloads
/// are conveniences built on top of them.
class StochasticLoss {
 public:
  virtual ~StochasticLoss() = default;

  virtual std::size_t dimension() const = 0;
  /// Number of samples for a finite sum; nullopt for a streaming oracle.
  virtual std::optional<std::uint64_t> sample_space_size() const = 0;
  virtual std::string name() const = 0;

  /// F(x, xi).
  virtual double sample_value(std::span<const double> x, SampleId xi) const = 0;
  /// G(x, xi), written into `out`.
  virtual void sample_subgradient(std::span<const double> x, SampleId xi,
                                  std::span<double> out) const = 0;
  /// Deterministic f(x).
  virtual double value(std::span<const double> x) const = 0;
  /// A deterministic element of the subdifferential of f at x.
  virtual void full_subgradient(std::span<const double> x,
                                std::span<double> out) const = 0;
  /// f(x) and a full subgradient in one pass; override when that is cheaper.
  virtual double value_and_subgradient(std::span<const double> x,
                                       std::span<double> out) const;

  /// Lipschitz constant of grad f when f is smooth; nullopt otherwise.
  virtual std::optional<double> gradient_lipschitz() const { return std::nullopt; }

  /// Exact argmin_y f(y) + h(y) + (1/2 zeta) sum_i m_i (x_i - y_i)^2 when a closed
  /// form exists for this loss and regularizer, nullopt otherwise.
  virtual std::optional<Vector> exact_prox_point(const Vector& x, double zeta,
                                                 const DiagonalMetric& metric,
                                                 const Regularizer& h) const;

  double sample_value(const Vector& x, SampleId xi) const {
    return sample_value(x.view(), xi);
  }
  Vector sample_subgradient(const Vector& x, SampleId xi) const;
  double value(const Vector& x) const { return value(x.view()); }
  Vector full_subgradient(const Vector& x) const;

  /// Draws xi uniformly from the sample space (with replacement), or a fresh
  /// 64-bit id for streaming oracles.
  SampleId draw_sample(RandomStream& rng) const;
};

/// psi = f + h together with the constants the theory refers to.
struct CompositeProblem {
  std::shared_ptr<const StochasticLoss> loss;
  Regularizer regularizer;
  /// rho such that f + (rho/2)||Q^{1/2} .||^2 is convex.
  double weak_convexity = 0.0;
  /// Q; nullopt means the problem does not supply one (rho is then w.r.t. I).
  std::optional<DiagonalMetric> metric;
  /// L_F of Assumption 3 when known or estimated.
  std::optional<double> lipschitz;
  bool lipschitz_is_estimate = false;

  std::size_t dimension() const { return loss->dimension(); }
  /// psi(x) = f(x) + h(x).
  double objective(const Vector& x) const;
  /// Weak-convexity modulus of f measured in the metric `m`:
  /// rho * max_i q_i / m_i, so that f + (rho_m/2)||M^{1/2} .||^2 is convex.
  double weak_convexity_under(const DiagonalMetric& m) const;
};

}  // namespace wcema
