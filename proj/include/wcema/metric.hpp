#pragma once

#include <cstddef>

#include "wcema/vector.hpp"

namespace wcema {

/// Positive diagonal matrix Q = diag(q) defining scaled norms and proximal maps.
///
/// The elementwise powers q^{1/2}, q^{1/4}, q^{-1/2}, q^{-1/4} are computed
/// once at construction.
class DiagonalMetric {
 public:
  /// Throws DomainError unless every entry of `q` is finite and strictly positive.
  explicit DiagonalMetric(Vector q);

  static DiagonalMetric identity(std::size_t d);
  static DiagonalMetric uniform(std::size_t d, double value);

  std::size_t size() const { return q_.size(); }
  const Vector& diagonal() const { return q_; }
  const Vector& sqrt() const { return sqrt_; }
  const Vector& fourth_root() const { return fourth_root_; }
  const Vector& inv_sqrt() const { return inv_sqrt_; }
  const Vector& inv_fourth_root() const { return inv_fourth_root_; }

  double min_entry() const;
  double max_entry() const;
  bool is_uniform() const;

  /// diag(q^2).
  DiagonalMetric squared() const;

 private:
  Vector q_;
  Vector sqrt_;
  Vector fourth_root_;
  Vector inv_sqrt_;
  Vector inv_fourth_root_;
};

/// Exponent applied to Q inside the norm: ||Q^{1/2} x||^2 or ||Q^{1/4} x||^2.
enum class MetricPower { half, quarter };

/// Sum_i q_i^{2p} x_i^2 for p in {1/2, 1/4}.
double scaled_norm_sq(const Vector& x, const DiagonalMetric& metric,
                      MetricPower power);

}  // namespace wcema
