#include "wcema/problem.hpp"

#include <algorithm>

#include "wcema/errors.hpp"

namespace wcema {

double StochasticLoss::value_and_subgradient(std::span<const double> x,
                                             std::span<double> out) const {
  full_subgradient(x, out);
  return value(x);
}

std::optional<Vector> StochasticLoss::exact_prox_point(const Vector&, double,
                                                       const DiagonalMetric&,
                                                       const Regularizer&) const {
  return std::nullopt;
}

Vector StochasticLoss::sample_subgradient(const Vector& x, SampleId xi) const {
  require_same_size(x.size(), dimension(), name() + " sample_subgradient");
  Vector g(dimension());
  sample_subgradient(x.view(), xi, g.view());
  require_finite(g, name() + " sample_subgradient");
  return g;
}

Vector StochasticLoss::full_subgradient(const Vector& x) const {
  require_same_size(x.size(), dimension(), name() + " full_subgradient");
  Vector g(dimension());
  full_subgradient(x.view(), g.view());
  require_finite(g, name() + " full_subgradient");
  return g;
}

SampleId StochasticLoss::draw_sample(RandomStream& rng) const {
  if (const auto n = sample_space_size()) return rng.uniform_index(*n);
  return rng.next_u64();
}

double CompositeProblem::objective(const Vector& x) const {
  require_same_size(x.size(), dimension(), "CompositeProblem::objective");
  return loss->value(x) + regularizer.value(x);
}

double CompositeProblem::weak_convexity_under(const DiagonalMetric& m) const {
  require_same_size(m.size(), dimension(), "weak_convexity_under");
  if (weak_convexity <= 0.0) return weak_convexity;
  double ratio = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double qi = metric ? metric->diagonal()[i] : 1.0;
    ratio = std::max(ratio, qi / m.diagonal()[i]);
  }
  return weak_convexity * ratio;
}

}  // namespace wcema
