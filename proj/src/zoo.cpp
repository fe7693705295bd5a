#include "wcema/zoo.hpp"

#include <cmath>

#include "wcema/errors.hpp"

namespace wcema {

namespace {

void check_mu(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw DomainError("smoothing parameter mu must be finite and positive");
  }
}

void check_oracle(double v) {
  if (!std::isfinite(v)) throw NumericError("zeroth-order oracle returned a non-finite value");
}

}  // namespace

void SmoothingConfig::validate() const { check_mu(mu); }

Vector sample_direction(std::size_t d, RandomStream& rng) {
  if (d == 0) throw DimensionError("sample_direction: d must be positive");
  return rng.unit_sphere(d);
}

void estimate_gradient(const StochasticLoss& loss, std::span<const double> x,
                       SampleId xi, std::span<const double> u, double mu,
                       std::span<double> scratch, std::span<double> out) {
  const std::size_t d = x.size();
  for (std::size_t j = 0; j < d; ++j) scratch[j] = x[j] + mu * u[j];
  const double shifted = loss.sample_value(scratch, xi);
  const double base = loss.sample_value(x, xi);
  check_oracle(shifted);
  check_oracle(base);
  const double scale = static_cast<double>(d) / mu * (shifted - base);
  for (std::size_t j = 0; j < d; ++j) out[j] = scale * u[j];
}

Vector estimate_gradient(const StochasticLoss& loss, const Vector& x, SampleId xi,
                         const Vector& u, double mu) {
  check_mu(mu);
  require_same_size(x.size(), loss.dimension(), "estimate_gradient x");
  require_same_size(u.size(), x.size(), "estimate_gradient u");
  Vector scratch(x.size());
  Vector out(x.size());
  estimate_gradient(loss, x.view(), xi, u.view(), mu, scratch.view(), out.view());
  return out;
}

Vector estimate_gradient(const std::function<double(const Vector&)>& value,
                         const Vector& x, const Vector& u, double mu) {
  check_mu(mu);
  require_same_size(u.size(), x.size(), "estimate_gradient u");
  const double shifted = value(x + mu * u);
  const double base = value(x);
  check_oracle(shifted);
  check_oracle(base);
  return (static_cast<double>(x.size()) / mu * (shifted - base)) * u;
}

}  // namespace wcema
