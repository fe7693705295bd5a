#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "wcema/problem.hpp"
#include "wcema/vector.hpp"

namespace wcema {

/// f(x) = sum_i A_i x_i^2 + <c, x> with a streaming stochastic oracle
/// F(x, xi) = f(x) + <e(xi), x>, G(x, xi) = grad f(x) + e(xi), where e(xi) has
/// independent coordinates uniform on [-noise, noise] derived by hashing xi.
class QuadraticLoss final : public StochasticLoss {
 public:
  QuadraticLoss(Vector spectrum, Vector linear, double noise = 0.0);

  const Vector& spectrum() const { return a_; }
  const Vector& linear() const { return c_; }
  double noise() const { return noise_; }

  std::size_t dimension() const override { return a_.size(); }
  std::optional<std::uint64_t> sample_space_size() const override { return std::nullopt; }
  std::string name() const override { return "quadratic"; }

  double sample_value(std::span<const double> x, SampleId xi) const override;
  void sample_subgradient(std::span<const double> x, SampleId xi,
                          std::span<double> out) const override;
  double value(std::span<const double> x) const override;
  void full_subgradient(std::span<const double> x,
                        std::span<double> out) const override;
  std::optional<double> gradient_lipschitz() const override;

  /// Closed form for h in {Zero, L1, Box}; nullopt for the ball or when the
  /// per-coordinate curvature 2 A_i + m_i / zeta is not positive.
  std::optional<Vector> exact_prox_point(const Vector& x, double zeta,
                                         const DiagonalMetric& metric,
                                         const Regularizer& h) const override;

  /// Perturbation coordinate e_j(xi).
  double perturbation(SampleId xi, std::size_t j) const;

  using StochasticLoss::full_subgradient;
  using StochasticLoss::sample_subgradient;
  using StochasticLoss::sample_value;
  using StochasticLoss::value;

 private:
  Vector a_;
  Vector c_;
  double noise_;
};

/// f(x) = weight * sum_i |<a_i, x> - b_i| over n rows, sampled uniformly.
/// With weight 1 this is ||Ax - b||_1 and F(x, i) = n |<a_i, x> - b_i|;
/// with weight 1/n it is the mean absolute deviation and F(x, i) = |<a_i,x> - b_i|.
class AbsoluteDeviationLoss final : public StochasticLoss {
 public:
  /// `rows` is row-major n x d.
  AbsoluteDeviationLoss(std::size_t d, std::vector<double> rows,
                        std::vector<double> targets, double weight = 1.0);

  std::size_t rows() const { return targets_.size(); }
  double weight() const { return weight_; }

  std::size_t dimension() const override { return d_; }
  std::optional<std::uint64_t> sample_space_size() const override { return rows(); }
  std::string name() const override { return "absolute_deviation"; }

  double sample_value(std::span<const double> x, SampleId xi) const override;
  void sample_subgradient(std::span<const double> x, SampleId xi,
                          std::span<double> out) const override;
  double value(std::span<const double> x) const override;
  void full_subgradient(std::span<const double> x,
                        std::span<double> out) const override;

  /// For h = Zero the prox subproblem is solved through its box-constrained dual
  /// by exact coordinate ascent; the primal point is recovered as
  /// y = x - zeta M^{-1} A^T lambda.
  std::optional<Vector> exact_prox_point(const Vector& x, double zeta,
                                         const DiagonalMetric& metric,
                                         const Regularizer& h) const override;

  /// max_i ||G(., i)||_2, a global Lipschitz constant of every F(., i).
  double sample_lipschitz() const;

  using StochasticLoss::full_subgradient;
  using StochasticLoss::sample_subgradient;
  using StochasticLoss::sample_value;
  using StochasticLoss::value;

 private:
  std::span<const double> row(std::size_t i) const { return {rows_.data() + i * d_, d_}; }
  double sample_scale() const { return weight_ * static_cast<double>(rows()); }

  std::size_t d_;
  std::vector<double> rows_;
  std::vector<double> targets_;
  double weight_;
};

/// Quadratic problem with rho = max(0, -2 min A) under Q = I.
CompositeProblem make_test_quadratic(Vector spectrum, Vector linear, double noise = 0.0,
                                     Regularizer h = Regularizer::zero());

/// ||Ax - b||_1 with Gaussian A (n x d) and b = A x_true + Gaussian noise
/// of scale `noise`; rho = 0, L_F = max_i n ||a_i||.
CompositeProblem make_absolute_deviation(std::size_t d, std::size_t n, double noise,
                                         std::uint64_t seed);

/// The generic form of make_absolute_deviation with explicit data.
CompositeProblem make_absolute_deviation(std::size_t d, std::vector<double> rows,
                                         std::vector<double> targets, double weight = 1.0);

}  // namespace wcema
