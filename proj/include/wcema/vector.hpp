#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace wcema {

/// Dense vector of doubles with a fixed length.
///
/// Arithmetic helpers in this header check lengths and reject non-finite
/// results, so a NaN or infinity never leaves an operation silently. The
/// mutable accessors exist for the optimizer hot loops; callers writing
/// through them are responsible for re-validating with require_finite().
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n, double fill = 0.0);
  Vector(std::initializer_list<double> values);
  explicit Vector(std::vector<double> values);

  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  std::span<const double> view() const { return data_; }
  std::span<double> view() { return data_; }
  const std::vector<double>& entries() const { return data_; }

  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }
  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }

  bool all_finite() const;

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> data_;
};

enum class ElementwiseOp { add, sub, mul, div, max };

Vector elementwise(const Vector& a, const Vector& b, ElementwiseOp op);

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator-(const Vector& a);
Vector operator*(double s, const Vector& a);
Vector operator*(const Vector& a, double s);
Vector operator/(const Vector& a, double s);

double dot(const Vector& a, const Vector& b);
double dot(std::span<const double> a, std::span<const double> b);
double norm_sq(const Vector& a);
double norm(const Vector& a);
double norm1(const Vector& a);
double norm_inf(const Vector& a);

Vector elementwise_sqrt(const Vector& a);
Vector elementwise_square(const Vector& a);
Vector elementwise_pow(const Vector& a, double exponent);

void require_same_size(std::size_t a, std::size_t b, std::string_view context);
void require_finite(std::span<const double> x, std::string_view context);
inline void require_finite(const Vector& x, std::string_view context) {
  require_finite(x.view(), context);
}

}  // namespace wcema
