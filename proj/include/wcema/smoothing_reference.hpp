#pragma once

#include <cstddef>
#include <functional>

#include "wcema/random.hpp"
#include "wcema/vector.hpp"

namespace wcema {

/// Monte Carlo estimate with its standard error.
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Reference for the ball-smoothed f_mu(x) = E_w f(x + mu w), w uniform in the
/// unit ball. Test and diagnostic use only; the optimizers never call this.
McEstimate smoothed_value_reference(const std::function<double(const Vector&)>& f,
                                    const Vector& x, double mu, std::size_t n_samples,
                                    RandomStream& rng);

/// Componentwise Monte Carlo estimate of grad f_mu(x) = E_w g(x + mu w) for a
/// subgradient oracle g of an almost-everywhere differentiable f.
struct McVectorEstimate {
  Vector mean;
  Vector std_error;
  std::size_t samples = 0;
};

McVectorEstimate smoothed_gradient_reference(
    const std::function<Vector(const Vector&)>& subgradient, const Vector& x, double mu,
    std::size_t n_samples, RandomStream& rng);

}  // namespace wcema
