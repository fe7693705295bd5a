#include "wcema/smoothing_reference.hpp"

#include <cmath>

#include "wcema/errors.hpp"

namespace wcema {

namespace {

void check_args(double mu, std::size_t n_samples) {
  if (!(mu > 0.0)) throw DomainError("smoothing reference: mu must be positive");
  if (n_samples == 0) throw DomainError("smoothing reference: need at least one sample");
}

// x + mu w for w uniform in the unit ball, written into y. Same draws as
// RandomStream::unit_ball without the temporaries.
void ball_point(const Vector& x, double mu, RandomStream& rng, Vector& y) {
  const std::size_t d = x.size();
  rng.unit_sphere(y.view());
  const double r = mu * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) y[i] = x[i] + r * y[i];
}

// Welford running mean and variance.
struct Running {
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t n = 0;
  void add(double v) {
    ++n;
    const double delta = v - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (v - mean);
  }
  double std_error() const {
    if (n < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
  }
};

}  // namespace

McEstimate smoothed_value_reference(const std::function<double(const Vector&)>& f,
                                    const Vector& x, double mu, std::size_t n_samples,
                                    RandomStream& rng) {
  check_args(mu, n_samples);
  Running acc;
  Vector y(x.size());
  for (std::size_t k = 0; k < n_samples; ++k) {
    ball_point(x, mu, rng, y);
    acc.add(f(y));
  }
  return {acc.mean, acc.std_error(), n_samples};
}

McVectorEstimate smoothed_gradient_reference(
    const std::function<Vector(const Vector&)>& subgradient, const Vector& x, double mu,
    std::size_t n_samples, RandomStream& rng) {
  check_args(mu, n_samples);
  std::vector<Running> acc(x.size());
  Vector y(x.size());
  for (std::size_t k = 0; k < n_samples; ++k) {
    ball_point(x, mu, rng, y);
    const Vector g = subgradient(y);
    require_same_size(g.size(), x.size(), "smoothed_gradient_reference");
    for (std::size_t j = 0; j < x.size(); ++j) acc[j].add(g[j]);
  }
  McVectorEstimate out{Vector(x.size()), Vector(x.size()), n_samples};
  for (std::size_t j = 0; j < x.size(); ++j) {
    out.mean[j] = acc[j].mean;
    out.std_error[j] = acc[j].std_error();
  }
  return out;
}

}  // namespace wcema
