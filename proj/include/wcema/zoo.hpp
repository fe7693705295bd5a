#pragma once

#include <functional>
#include <span>

#include "wcema/problem.hpp"
#include "wcema/random.hpp"
#include "wcema/vector.hpp"

namespace wcema {

struct SmoothingConfig {
  /// Smoothing radius, in the units of x.
  double mu = 0.0;

  /// Throws DomainError unless mu is finite and positive.
  void validate() const;
};

/// Uniform on the unit sphere in R^d.
Vector sample_direction(std::size_t d, RandomStream& rng);

/// Two-point estimator (d/mu) (F(x + mu u, xi) - F(x, xi)) u written into `out`,
/// using exactly two value-oracle calls. `scratch` holds x + mu u (length d).
void estimate_gradient(const StochasticLoss& loss, std::span<const double> x,
                       SampleId xi, std::span<const double> u, double mu,
                       std::span<double> scratch, std::span<double> out);

Vector estimate_gradient(const StochasticLoss& loss, const Vector& x, SampleId xi,
                         const Vector& u, double mu);

/// Same estimator for an arbitrary value oracle F(x).
Vector estimate_gradient(const std::function<double(const Vector&)>& value,
                         const Vector& x, const Vector& u, double mu);

}  // namespace wcema
