#include "wcema/metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wcema/errors.hpp"

namespace wcema {

DiagonalMetric::DiagonalMetric(Vector q) : q_(std::move(q)) {
  if (q_.empty()) throw DomainError("DiagonalMetric: empty diagonal");
  for (std::size_t i = 0; i < q_.size(); ++i) {
    if (!(q_[i] > 0.0) || !std::isfinite(q_[i])) {
      throw DomainError("DiagonalMetric: entry " + std::to_string(i) +
                        " is not strictly positive");
    }
  }
  sqrt_ = elementwise_sqrt(q_);
  fourth_root_ = elementwise_sqrt(sqrt_);
  inv_sqrt_ = Vector(q_.size());
  inv_fourth_root_ = Vector(q_.size());
  for (std::size_t i = 0; i < q_.size(); ++i) {
    inv_sqrt_[i] = 1.0 / sqrt_[i];
    inv_fourth_root_[i] = 1.0 / fourth_root_[i];
  }
  require_finite(inv_sqrt_, "DiagonalMetric q^{-1/2}");
}

DiagonalMetric DiagonalMetric::identity(std::size_t d) {
  return DiagonalMetric(Vector(d, 1.0));
}

DiagonalMetric DiagonalMetric::uniform(std::size_t d, double value) {
  return DiagonalMetric(Vector(d, value));
}

double DiagonalMetric::min_entry() const {
  return *std::min_element(q_.begin(), q_.end());
}

double DiagonalMetric::max_entry() const {
  return *std::max_element(q_.begin(), q_.end());
}

bool DiagonalMetric::is_uniform() const {
  return min_entry() == max_entry();
}

DiagonalMetric DiagonalMetric::squared() const {
  return DiagonalMetric(elementwise_square(q_));
}

double scaled_norm_sq(const Vector& x, const DiagonalMetric& metric,
                      MetricPower power) {
  require_same_size(x.size(), metric.size(), "scaled_norm_sq");
  require_finite(x, "scaled_norm_sq");
  const Vector& w =
      power == MetricPower::half ? metric.diagonal() : metric.sqrt();
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * x[i] * x[i];
  return s;
}

}  // namespace wcema
