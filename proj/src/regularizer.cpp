#include "wcema/regularizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wcema/errors.hpp"

namespace wcema {

namespace {

constexpr double kBallTolerance = 1e-12;
constexpr int kBallMaxIterations = 100;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double span_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// Projection onto {||y|| <= r} in the norm sum_i m_i (x_i - y_i)^2.
// Stationarity gives y_i = m_i x_i / (m_i + lambda); lambda >= 0 solves
// ||y(lambda)|| = r. Safeguarded Newton on phi(lambda) = 1/r - 1/||y(lambda)||,
// which is nearly linear in lambda.
void project_ball(std::span<double> x, double radius,
                  std::span<const double> m) {
  const double xn = span_norm(x);
  if (xn <= radius) return;

  bool uniform = true;
  for (double mi : m) uniform = uniform && (mi == m[0]);
  if (uniform) {
    const double scale = radius / xn;
    for (double& v : x) v *= scale;
    return;
  }

  const double m_max = *std::max_element(m.begin(), m.end());
  double lo = 0.0;
  double hi = m_max * (xn / radius - 1.0);
  auto y_norm = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double yi = m[i] * x[i] / (m[i] + lambda);
      s += yi * yi;
    }
    return std::sqrt(s);
  };

  double lambda = 0.0;
  bool converged = false;
  for (int it = 0; it < kBallMaxIterations; ++it) {
    const double yn = y_norm(lambda);
    if (std::abs(yn - radius) <= kBallTolerance * radius) {
      converged = true;
      break;
    }
    if (yn > radius) {
      lo = lambda;
    } else {
      hi = lambda;
    }
    // d/dlambda (1/||y||) = (1/||y||^3) sum_i y_i^2 / (m_i + lambda)
    double weighted = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double yi = m[i] * x[i] / (m[i] + lambda);
      weighted += yi * yi / (m[i] + lambda);
    }
    const double phi = 1.0 / radius - 1.0 / yn;
    const double dphi = -weighted / (yn * yn * yn);
    double next = lambda - phi / dphi;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    lambda = next;
  }
  if (!converged) {
    throw CapabilityError(
        "ball projection under non-uniform metric did not converge");
  }
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = m[i] * x[i] / (m[i] + lambda);
  const double yn = span_norm(x);
  if (yn > radius) {
    const double scale = radius / yn;
    for (double& v : x) v *= scale;
  }
}

}  // namespace

Regularizer Regularizer::zero() { return Regularizer(ZeroRegularizer{}); }

Regularizer Regularizer::box(Vector lower, Vector upper) {
  require_same_size(lower.size(), upper.size(), "Regularizer::box");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] > upper[i]) {
      throw DomainError("Regularizer::box: lower > upper at index " +
                        std::to_string(i));
    }
  }
  return Regularizer(BoxIndicator{std::move(lower), std::move(upper)});
}

Regularizer Regularizer::l1(double weight) {
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw DomainError("Regularizer::l1: weight must be nonnegative");
  }
  return Regularizer(L1Penalty{weight});
}

Regularizer Regularizer::ball(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("Regularizer::ball: radius must be positive");
  }
  return Regularizer(BallIndicator{radius});
}

Regularizer::Kind Regularizer::kind() const {
  return static_cast<Kind>(spec_.index());
}

bool Regularizer::is_indicator() const {
  return kind() == Kind::box || kind() == Kind::ball;
}

std::string Regularizer::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const ZeroRegularizer&) { os << "zero"; },
                 [&](const BoxIndicator& b) { os << "box(d=" << b.lower.size() << ")"; },
                 [&](const L1Penalty& l) { os << "l1(" << l.weight << ")"; },
                 [&](const BallIndicator& b) { os << "ball(" << b.radius << ")"; },
             },
             spec_);
  return os.str();
}

double Regularizer::value(std::span<const double> x) const {
  return std::visit(
      Overloaded{
          [](const ZeroRegularizer&) { return 0.0; },
          [&](const BoxIndicator&) {
            return contains(x) ? 0.0 : std::numeric_limits<double>::infinity();
          },
          [&](const L1Penalty& l) {
            double s = 0.0;
            for (double v : x) s += std::abs(v);
            return l.weight * s;
          },
          [&](const BallIndicator&) {
            return contains(x) ? 0.0 : std::numeric_limits<double>::infinity();
          },
      },
      spec_);
}

bool Regularizer::contains(std::span<const double> x) const {
  return std::visit(
      Overloaded{
          [](const ZeroRegularizer&) { return true; },
          [&](const BoxIndicator& b) {
            require_same_size(x.size(), b.lower.size(), "BoxIndicator");
            for (std::size_t i = 0; i < x.size(); ++i) {
              if (x[i] < b.lower[i] || x[i] > b.upper[i]) return false;
            }
            return true;
          },
          [](const L1Penalty&) { return true; },
          [&](const BallIndicator& b) { return span_norm(x) <= b.radius; },
      },
      spec_);
}

void Regularizer::prox_in_place(std::span<double> x, double step,
                                std::span<const double> m) const {
  require_same_size(x.size(), m.size(), "scaled_prox");
  std::visit(Overloaded{
                 [](const ZeroRegularizer&) {},
                 [&](const BoxIndicator& b) {
                   require_same_size(x.size(), b.lower.size(), "scaled_prox(box)");
                   for (std::size_t i = 0; i < x.size(); ++i) {
                     x[i] = std::clamp(x[i], b.lower[i], b.upper[i]);
                   }
                 },
                 [&](const L1Penalty& l) {
                   for (std::size_t i = 0; i < x.size(); ++i) {
                     x[i] = soft_threshold(x[i], step * l.weight / m[i]);
                   }
                 },
                 [&](const BallIndicator& b) { project_ball(x, b.radius, m); },
             },
             spec_);
}

double soft_threshold(double x, double threshold) {
  if (x > threshold) return x - threshold;
  if (x < -threshold) return x + threshold;
  return 0.0;
}

Vector scaled_prox(const Regularizer& h, const Vector& x, double stepsize,
                   const DiagonalMetric& metric) {
  if (!(stepsize > 0.0) || !std::isfinite(stepsize)) {
    throw DomainError("scaled_prox: stepsize must be positive");
  }
  require_finite(x, "scaled_prox");
  Vector y = x;
  h.prox_in_place(y.view(), stepsize, metric.diagonal().view());
  return y;
}

Vector scaled_project(const Regularizer& set, const Vector& x,
                      const DiagonalMetric& metric) {
  if (!set.is_indicator()) {
    throw CapabilityError("scaled_project: regularizer " + set.describe() +
                          " is not an indicator");
  }
  return scaled_prox(set, x, 1.0, metric);
}

}  // namespace wcema
