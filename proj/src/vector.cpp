#include "wcema/vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wcema/errors.hpp"

namespace wcema {

Vector::Vector(std::size_t n, double fill) : data_(n, fill) {
  require_finite(data_, "Vector(n, fill)");
}

Vector::Vector(std::initializer_list<double> values) : data_(values) {
  require_finite(data_, "Vector{...}");
}

Vector::Vector(std::vector<double> values) : data_(std::move(values)) {
  require_finite(data_, "Vector(std::vector)");
}

bool Vector::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

void require_same_size(std::size_t a, std::size_t b, std::string_view context) {
  if (a != b) {
    throw DimensionError(std::string(context) + ": length mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

void require_finite(std::span<const double> x, std::string_view context) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw NumericError(std::string(context) + ": non-finite entry at index " +
                         std::to_string(i));
    }
  }
}

Vector elementwise(const Vector& a, const Vector& b, ElementwiseOp op) {
  require_same_size(a.size(), b.size(), "elementwise");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    switch (op) {
      case ElementwiseOp::add: out[i] = a[i] + b[i]; break;
      case ElementwiseOp::sub: out[i] = a[i] - b[i]; break;
      case ElementwiseOp::mul: out[i] = a[i] * b[i]; break;
      case ElementwiseOp::div:
        if (b[i] == 0.0) {
          throw NumericError("elementwise div: zero divisor at index " +
                             std::to_string(i));
        }
        out[i] = a[i] / b[i];
        break;
      case ElementwiseOp::max: out[i] = std::max(a[i], b[i]); break;
    }
  }
  return Vector(std::move(out));
}

Vector operator+(const Vector& a, const Vector& b) {
  return elementwise(a, b, ElementwiseOp::add);
}

Vector operator-(const Vector& a, const Vector& b) {
  return elementwise(a, b, ElementwiseOp::sub);
}

Vector operator-(const Vector& a) { return -1.0 * a; }

Vector operator*(double s, const Vector& a) {
  std::vector<double> out(a.begin(), a.end());
  for (double& v : out) v *= s;
  return Vector(std::move(out));
}

Vector operator*(const Vector& a, double s) { return s * a; }

Vector operator/(const Vector& a, double s) {
  if (s == 0.0) throw NumericError("vector / 0");
  std::vector<double> out(a.begin(), a.end());
  for (double& v : out) v /= s;
  return Vector(std::move(out));
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double dot(const Vector& a, const Vector& b) { return dot(a.view(), b.view()); }

double norm_sq(const Vector& a) { return dot(a, a); }

double norm(const Vector& a) { return std::sqrt(norm_sq(a)); }

double norm1(const Vector& a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

double norm_inf(const Vector& a) {
  double s = 0.0;
  for (double v : a) s = std::max(s, std::abs(v));
  return s;
}

Vector elementwise_sqrt(const Vector& a) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0.0) throw NumericError("elementwise_sqrt of negative entry");
    out[i] = std::sqrt(a[i]);
  }
  return Vector(std::move(out));
}

Vector elementwise_square(const Vector& a) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * a[i];
  return Vector(std::move(out));
}

Vector elementwise_pow(const Vector& a, double exponent) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::pow(a[i], exponent);
  return Vector(std::move(out));
}

}  // namespace wcema
