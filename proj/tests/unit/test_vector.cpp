#include <doctest.h>

#include <cmath>
#include <limits>

#include "wcema/errors.hpp"
#include "wcema/metric.hpp"
#include "wcema/random.hpp"
#include "wcema/vector.hpp"

using namespace wcema;

TEST_CASE("vector construction rejects non-finite entries") {
  CHECK_THROWS_AS(Vector({1.0, std::numeric_limits<double>::quiet_NaN()}), NumericError);
  CHECK_THROWS_AS(Vector(2, std::numeric_limits<double>::infinity()), NumericError);
  CHECK(Vector(3).size() == 3);
}

TEST_CASE("elementwise operations") {
  CHECK(elementwise({1, 5}, {3, 2}, ElementwiseOp::max) == Vector{3, 5});
  CHECK(elementwise({2, 9}, {2, 3}, ElementwiseOp::div) == Vector{1, 3});
  CHECK(elementwise({1, -2}, {-3, 4}, ElementwiseOp::mul) == Vector{-3, -8});
  CHECK(elementwise({1, 2}, {3, 4}, ElementwiseOp::add) == Vector{4, 6});
  CHECK(elementwise({1, 2}, {3, 4}, ElementwiseOp::sub) == Vector{-2, -2});
  CHECK_THROWS_AS(elementwise({1, 2}, {1, 0}, ElementwiseOp::div), NumericError);
  CHECK_THROWS_AS(elementwise({1, 2}, {1, 2, 3}, ElementwiseOp::add), DimensionError);
}

TEST_CASE("arithmetic overflow is reported, not propagated") {
  const double big = std::numeric_limits<double>::max();
  CHECK_THROWS_AS(Vector{big} + Vector{big}, NumericError);
  CHECK_THROWS_AS(2.0 * Vector{big}, NumericError);
}

TEST_CASE("norms and dot products") {
  const Vector x{3, -4};
  CHECK(norm_sq(x) == 25.0);
  CHECK(norm(x) == 5.0);
  CHECK(norm1(x) == 7.0);
  CHECK(norm_inf(x) == 4.0);
  CHECK(dot(x, Vector{1, 1}) == -1.0);
  CHECK_THROWS_AS(dot(x, Vector{1}), DimensionError);
}

TEST_CASE("scaled_norm_sq examples") {
  CHECK(scaled_norm_sq({3, 4}, DiagonalMetric({1, 1}), MetricPower::half) == 25.0);
  CHECK(scaled_norm_sq({0, 0}, DiagonalMetric({7, 2}), MetricPower::quarter) == 0.0);
  CHECK(scaled_norm_sq({1, 2}, DiagonalMetric({4, 9}), MetricPower::half) == doctest::Approx(40.0));
  CHECK_THROWS_AS(scaled_norm_sq({1, 2, 3}, DiagonalMetric({4, 9}), MetricPower::half),
                  DimensionError);
}

TEST_CASE("metric rejects nonpositive entries") {
  CHECK_THROWS_AS(DiagonalMetric({1, 0}), DomainError);
  CHECK_THROWS_AS(DiagonalMetric({1, -2}), DomainError);
  const DiagonalMetric m({4, 16});
  CHECK(m.sqrt() == Vector{2, 4});
  CHECK(m.fourth_root() == Vector{std::sqrt(2.0), 2});
  CHECK(m.inv_sqrt() == Vector{0.5, 0.25});
  CHECK(m.min_entry() == 4.0);
  CHECK(m.max_entry() == 16.0);
  CHECK_FALSE(m.is_uniform());
  CHECK(DiagonalMetric::uniform(3, 2.0).is_uniform());
}

TEST_CASE("scaled norm properties on random instances") {
  RandomStream rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 1 + rng.uniform_index(8);
    const Vector x = rng.normal_vector(d);
    Vector q(d), q2(d);
    for (std::size_t i = 0; i < d; ++i) {
      q[i] = 0.01 + 10.0 * rng.uniform();
      q2[i] = q[i] + 5.0 * rng.uniform();
    }
    const DiagonalMetric m(q), m2(q2);
    // Identity metric reduces to the Euclidean norm.
    CHECK(scaled_norm_sq(x, DiagonalMetric::identity(d), MetricPower::half) ==
          doctest::Approx(norm_sq(x)).epsilon(1e-14));
    // Monotone in the metric.
    CHECK(scaled_norm_sq(x, m, MetricPower::half) <= scaled_norm_sq(x, m2, MetricPower::half));
    CHECK(scaled_norm_sq(x, m, MetricPower::quarter) <=
          scaled_norm_sq(x, m2, MetricPower::quarter));
    // Power 1/2 on q equals power 1/4 on q^2.
    const double a = scaled_norm_sq(x, m, MetricPower::half);
    const double b = scaled_norm_sq(x, m.squared(), MetricPower::quarter);
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
    // Products of powers are consistent.
    for (std::size_t i = 0; i < d; ++i) {
      CHECK(m.fourth_root()[i] * m.fourth_root()[i] == doctest::Approx(m.sqrt()[i]).epsilon(1e-15));
      CHECK(m.sqrt()[i] * m.inv_sqrt()[i] == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(m.fourth_root()[i] * m.inv_fourth_root()[i] == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
}
