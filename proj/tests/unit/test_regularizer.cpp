#include <doctest.h>

#include <cmath>
#include <limits>

#include "wcema/errors.hpp"
#include "wcema/random.hpp"
#include "wcema/regularizer.hpp"

using namespace wcema;

namespace {

// Brute-force 1-D minimizer of w|y| + (m / 2a)(x - y)^2 by golden section
// over a bracket containing the minimizer.
double l1_oracle(double x, double w, double a, double m) {
  auto obj = [&](double y) { return w * std::abs(y) + m / (2.0 * a) * (x - y) * (x - y); };
  double lo = -std::abs(x) - 1.0, hi = std::abs(x) + 1.0;
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < 200; ++i) {
    const double c = hi - r * (hi - lo), d = lo + r * (hi - lo);
    if (obj(c) < obj(d)) {
      hi = d;
    } else {
      lo = c;
    }
  }
  return 0.5 * (lo + hi);
}

// Projection onto the ball in the M-norm by projected gradient descent with
// a Euclidean-ball projection of the scaled variable (an independent route).
Vector ball_oracle(const Vector& x, double radius, const Vector& m) {
  Vector y = x;
  const double ny = norm(y);
  if (ny > radius) y = (radius / ny) * y;
  double mmax = 0.0;
  for (double v : m) mmax = std::max(mmax, v);
  const double step = 1.0 / mmax;
  for (int it = 0; it < 200000; ++it) {
    Vector next = y;
    for (std::size_t i = 0; i < y.size(); ++i) next[i] -= step * m[i] * (y[i] - x[i]);
    const double nn = norm(next);
    if (nn > radius) next = (radius / nn) * next;
    if (norm(next - y) < 1e-15) {
      y = next;
      break;
    }
    y = next;
  }
  return y;
}

Vector random_metric(RandomStream& rng, std::size_t d) {
  Vector q(d);
  for (std::size_t i = 0; i < d; ++i) q[i] = 0.1 + 5.0 * rng.uniform();
  return q;
}

}  // namespace

TEST_CASE("prox examples") {
  const DiagonalMetric m({4, 1});
  CHECK(scaled_prox(Regularizer::zero(), {1, -2}, 0.7, m) == Vector{1, -2});
  CHECK(scaled_prox(Regularizer::box({-1, -1}, {1, 1}), {2, -3}, 0.5, DiagonalMetric({5, 1})) ==
        Vector{1, -1});
  const Vector y = scaled_prox(Regularizer::l1(1.0), {2, -0.5}, 1.0, m);
  CHECK(y[0] == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(y[1] == 0.0);
  CHECK(y[0] == doctest::Approx(l1_oracle(2.0, 1.0, 1.0, 4.0)).epsilon(1e-6));
}

TEST_CASE("projection examples") {
  const auto box = Regularizer::box({0, 0}, {1, 1});
  CHECK(scaled_project(box, {0.3, 0.9}, DiagonalMetric({1, 9})) == Vector{0.3, 0.9});
  CHECK(scaled_project(box, {-2, 0.5}, DiagonalMetric({1, 9})) == Vector{0, 0.5});
  const Vector p = scaled_project(Regularizer::ball(1.0), {3, 4}, DiagonalMetric::identity(2));
  CHECK(p[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK_THROWS_AS(scaled_project(Regularizer::l1(1.0), {1, 1}, DiagonalMetric::identity(2)),
                  CapabilityError);
}

TEST_CASE("constructor and argument checks") {
  CHECK_THROWS_AS(Regularizer::box({1, 0}, {0, 1}), DomainError);
  CHECK_THROWS_AS(Regularizer::l1(-1.0), DomainError);
  CHECK_THROWS_AS(Regularizer::ball(0.0), DomainError);
  CHECK_THROWS_AS(scaled_prox(Regularizer::zero(), {1}, 0.0, DiagonalMetric::identity(1)),
                  DomainError);
  CHECK(soft_threshold(1.0, 1.0) == 0.0);
  CHECK(soft_threshold(-1.0, 1.0) == 0.0);
  CHECK(soft_threshold(-3.0, 1.0) == -2.0);
}

TEST_CASE("regularizer values") {
  CHECK(Regularizer::l1(2.0).value(Vector{1, -3}) == 8.0);
  const auto inf = std::numeric_limits<double>::infinity();
  CHECK(Regularizer::ball(1.0).value(Vector{1, 1}) == inf);
  CHECK(Regularizer::ball(2.0).value(Vector{1, 1}) == 0.0);
  CHECK(Regularizer::box({0}, {1}).value(Vector{2}) == inf);
}

TEST_CASE("midpoint convexity of every kind") {
  RandomStream rng(11);
  const std::size_t d = 3;
  const Regularizer kinds[] = {Regularizer::zero(), Regularizer::l1(0.7),
                               Regularizer::box(Vector(d, -1.0), Vector(d, 1.0)),
                               Regularizer::ball(1.5)};
  for (const auto& h : kinds) {
    for (int trial = 0; trial < 1000; ++trial) {
      const Vector x = rng.normal_vector(d), y = rng.normal_vector(d);
      const double hx = h.value(x), hy = h.value(y);
      const double hm = h.value(0.5 * (x + y));
      if (std::isinf(hx) || std::isinf(hy)) continue;
      CHECK(hm <= 0.5 * (hx + hy) + 1e-12);
    }
  }
}

TEST_CASE("scaled nonexpansiveness for all kinds") {
  RandomStream rng(12);
  const std::size_t d = 4;
  const Regularizer kinds[] = {Regularizer::zero(), Regularizer::l1(0.7),
                               Regularizer::box(Vector(d, -0.5), Vector(d, 0.8)),
                               Regularizer::ball(1.0)};
  for (const auto& h : kinds) {
    for (int trial = 0; trial < 500; ++trial) {
      const DiagonalMetric m(random_metric(rng, d));
      const double a = 0.05 + rng.uniform();
      const Vector x = 2.0 * rng.normal_vector(d), y = 2.0 * rng.normal_vector(d);
      const Vector px = scaled_prox(h, x, a, m), py = scaled_prox(h, y, a, m);
      const double lhs = scaled_norm_sq(px - py, m, MetricPower::half);
      const double rhs = scaled_norm_sq(x - y, m, MetricPower::half);
      CHECK(lhs <= rhs * (1.0 + 1e-10) + 1e-14);
    }
  }
}

TEST_CASE("optimality certificates for l1 and box") {
  RandomStream rng(13);
  const std::size_t d = 5;
  for (int trial = 0; trial < 500; ++trial) {
    const Vector q = random_metric(rng, d);
    const DiagonalMetric m(q);
    const double a = 0.05 + rng.uniform();
    const double w = rng.uniform();
    const Vector x = 2.0 * rng.normal_vector(d);
    const Vector y = scaled_prox(Regularizer::l1(w), x, a, m);
    for (std::size_t i = 0; i < d; ++i) {
      // 0 in w d|y_i| + (m_i / a)(y_i - x_i)
      const double r = q[i] / a * (y[i] - x[i]);
      if (y[i] != 0.0) {
        CHECK(std::abs(w * (y[i] > 0 ? 1.0 : -1.0) + r) <= 1e-10 * (1.0 + std::abs(r)));
      } else {
        CHECK(std::abs(r) <= w + 1e-10);
      }
      CHECK(y[i] == doctest::Approx(l1_oracle(x[i], w, a, q[i])).epsilon(1e-6).scale(1.0));
    }
    const auto box = Regularizer::box(Vector(d, -0.3), Vector(d, 0.6));
    const Vector b = scaled_prox(box, x, a, m);
    for (std::size_t i = 0; i < d; ++i) {
      const double r = q[i] / a * (b[i] - x[i]);
      // Normal cone: r <= 0 at the upper face, r >= 0 at the lower, 0 inside.
      if (b[i] == 0.6) {
        CHECK(r <= 1e-10);
      } else if (b[i] == -0.3) {
        CHECK(r >= -1e-10);
      } else {
        CHECK(std::abs(r) <= 1e-10);
      }
    }
  }
}

TEST_CASE("indicator prox is stepsize invariant") {
  RandomStream rng(14);
  const std::size_t d = 3;
  const Regularizer sets[] = {Regularizer::box(Vector(d, -0.5), Vector(d, 0.5)),
                              Regularizer::ball(0.8)};
  for (const auto& h : sets) {
    for (int trial = 0; trial < 200; ++trial) {
      const DiagonalMetric m(random_metric(rng, d));
      const Vector x = 2.0 * rng.normal_vector(d);
      CHECK(scaled_prox(h, x, 0.1, m) == scaled_prox(h, x, 7.0, m));
    }
  }
}

TEST_CASE("ball projection under a non-uniform metric matches an independent solver") {
  RandomStream rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 3;
    const Vector q = random_metric(rng, d);
    const Vector x = 3.0 * rng.normal_vector(d);
    const Vector p = scaled_project(Regularizer::ball(1.0), x, DiagonalMetric(q));
    const Vector o = ball_oracle(x, 1.0, q);
    CHECK(norm(p) <= 1.0 + 1e-12);
    CHECK(norm(p - o) < 1e-6);
  }
}
