#include <doctest.h>

#include <cmath>

#include "wcema/errors.hpp"
#include "wcema/random.hpp"
#include "wcema/smoothing_reference.hpp"
#include "wcema/zoo.hpp"

using namespace wcema;

TEST_CASE("estimator examples") {
  auto lin = [](const Vector& x) { return 3.0 * x[0]; };
  const Vector g = estimate_gradient(lin, Vector{0.7}, Vector{-1}, 0.25);
  CHECK(g[0] == doctest::Approx(3.0).epsilon(1e-12));

  const Vector c{1, -2, 0.5};
  auto f = [&](const Vector& x) { return dot(c, x); };
  RandomStream rng(1);
  for (int k = 0; k < 100; ++k) {
    const Vector u = sample_direction(3, rng);
    const Vector e = estimate_gradient(f, rng.normal_vector(3), u, 0.1);
    const Vector expected = (3.0 * dot(c, u)) * u;
    CHECK(norm(e - expected) < 1e-9);
  }
  auto constant = [](const Vector&) { return 4.0; };
  CHECK(estimate_gradient(constant, Vector{1, 2}, Vector{1, 0}, 0.5) == Vector{0, 0});
}

TEST_CASE("estimator rejects bad oracles and radii") {
  auto nan = [](const Vector& x) { return x[0] > 0.5 ? NAN : 0.0; };
  CHECK_THROWS_AS(estimate_gradient(nan, Vector{0.0}, Vector{1}, 1.0), NumericError);
  CHECK_THROWS_AS((SmoothingConfig{0.0}).validate(), DomainError);
}

TEST_CASE("one-dimensional directions are signs") {
  RandomStream rng(2);
  int plus = 0;
  const int n = 10000;
  for (int k = 0; k < n; ++k) {
    const Vector u = sample_direction(1, rng);
    CHECK(std::abs(u[0]) == 1.0);
    if (u[0] > 0) ++plus;
  }
  CHECK(std::abs(plus - n / 2) < 4.0 * std::sqrt(n / 4.0));
}

TEST_CASE("direction moments") {
  RandomStream rng(3);
  const std::size_t d = 4;
  const int n = 200000;
  Vector sum(d), sq(d);
  for (int k = 0; k < n; ++k) {
    const Vector u = sample_direction(d, rng);
    sum = sum + u;
    sq = sq + elementwise_square(u);
  }
  for (std::size_t i = 0; i < d; ++i) {
    CHECK(std::abs(sum[i] / n) < 4.0 / std::sqrt(n));
    // Var(u_i^2) = 2(d-1)/(d^2 (d+2)).
    const double sd = std::sqrt(2.0 * (d - 1) / (d * d * (d + 2.0)) / n);
    CHECK(std::abs(sq[i] / n - 1.0 / d) < 4.0 * sd);
  }
}

TEST_CASE("estimator magnitude bound for Lipschitz losses") {
  auto f = [](const Vector& x) { return norm1(x); };  // 1-Lipschitz in l1, sqrt(d) in l2
  RandomStream rng(4);
  const std::size_t d = 5;
  const double lf = std::sqrt(static_cast<double>(d));
  for (int k = 0; k < 1000; ++k) {
    const Vector g = estimate_gradient(f, rng.normal_vector(d), sample_direction(d, rng), 0.3);
    CHECK(norm_inf(g) <= d * lf + 1e-12);
  }
}

TEST_CASE("smoothed value reference") {
  RandomStream rng(5);
  const std::size_t d = 3;
  const Vector x{0.2, -0.5, 1.0};
  auto lin = [](const Vector& y) { return y[0] - 2.0 * y[1] + y[2]; };
  const auto e1 = smoothed_value_reference(lin, x, 0.5, 100000, rng);
  CHECK(std::abs(e1.mean - lin(x)) <= 3.0 * e1.std_error);

  auto sq = [](const Vector& y) { return norm_sq(y); };
  const double mu = 0.7;
  const auto e2 = smoothed_value_reference(sq, x, mu, 200000, rng);
  const double exact = norm_sq(x) + mu * mu * d / (d + 2.0);
  CHECK(std::abs(e2.mean - exact) <= 3.0 * e2.std_error);
  CHECK(e2.samples == 200000);
}

TEST_CASE("smoothed gradient reference agrees with the two-point estimator in mean") {
  RandomStream rng(6);
  const std::size_t d = 2;
  const Vector x{0.3, -0.1};
  const double mu = 0.2;
  auto f = [](const Vector& y) { return std::abs(y[0]) + 0.5 * y[1] * y[1]; };
  auto g = [](const Vector& y) { return Vector{y[0] > 0 ? 1.0 : -1.0, y[1]}; };
  const auto ref = smoothed_gradient_reference(g, x, mu, 200000, rng);
  Vector sum(d), sum2(d);
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const Vector e = estimate_gradient(f, x, sample_direction(d, rng), mu);
    sum = sum + e;
    sum2 = sum2 + elementwise_square(e);
  }
  for (std::size_t i = 0; i < d; ++i) {
    const double mean = sum[i] / n;
    const double se = std::sqrt((sum2[i] / n - mean * mean) / n);
    const double tol = 4.0 * std::hypot(se, ref.std_error[i]);
    CHECK(std::abs(mean - ref.mean[i]) <= tol);
  }
}
