#pragma once

#include <span>
#include <string>
#include <variant>

#include "wcema/metric.hpp"
#include "wcema/vector.hpp"

namespace wcema {

struct ZeroRegularizer {};

/// Indicator of {x : lower <= x <= upper}.
struct BoxIndicator {
  Vector lower;
  Vector upper;
};

/// weight * ||x||_1.
struct L1Penalty {
  double weight = 0.0;
};

/// Indicator of the Euclidean ball {x : ||x|| <= radius}.
struct BallIndicator {
  double radius = 1.0;
};

/// The closed convex term h of psi = f + h.
class Regularizer {
 public:
  using Spec = std::variant<ZeroRegularizer, BoxIndicator, L1Penalty, BallIndicator>;
  enum class Kind { zero, box, l1, ball };

  Regularizer() = default;

  static Regularizer zero();
  static Regularizer box(Vector lower, Vector upper);
  static Regularizer l1(double weight);
  static Regularizer ball(double radius);

  Kind kind() const;
  const Spec& spec() const { return spec_; }
  bool is_indicator() const;
  std::string describe() const;

  /// h(x); +infinity outside the set for indicator kinds.
  double value(std::span<const double> x) const;
  double value(const Vector& x) const { return value(x.view()); }
  bool contains(std::span<const double> x) const;

  /// In-place scaled prox: x <- argmin_y h(y) + (1/2 step) sum_i m_i (x_i - y_i)^2.
  /// `metric_diag` is the diagonal m (all entries positive).
  void prox_in_place(std::span<double> x, double step,
                     std::span<const double> metric_diag) const;

 private:
  explicit Regularizer(Spec spec) : spec_(std::move(spec)) {}
  Spec spec_{ZeroRegularizer{}};
};

/// argmin_y h(y) + (1/(2 stepsize)) ||M^{1/2}(x - y)||^2 with M = metric.
Vector scaled_prox(const Regularizer& h, const Vector& x, double stepsize,
                   const DiagonalMetric& metric);

/// argmin_{y in C} ||M^{1/2}(x - y)||^2 for an indicator regularizer of C.
Vector scaled_project(const Regularizer& set, const Vector& x,
                      const DiagonalMetric& metric);

/// sign(x) * max(|x| - threshold, 0); exact ties return 0.
double soft_threshold(double x, double threshold);

}  // namespace wcema
