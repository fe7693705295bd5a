#include "wcema/random.hpp"

#include <cmath>
#include <numbers>

#include "wcema/errors.hpp"

namespace wcema {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

const char* to_string(StreamPurpose purpose) {
  switch (purpose) {
    case StreamPurpose::data: return "data";
    case StreamPurpose::xi: return "xi";
    case StreamPurpose::u: return "u";
    case StreamPurpose::tstar: return "tstar";
    case StreamPurpose::init: return "init";
  }
  return "unknown";
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(const StreamKey& key) {
  std::uint64_t h = mix64(key.master_seed + kGolden);
  h = mix64(h ^ (static_cast<std::uint64_t>(key.purpose) * kGolden));
  h = mix64(h + key.algorithm * 0xd6e8feb86659fd93ULL);
  h = mix64(h ^ (key.grid_index * 0xa0761d6478bd642fULL));
  h = mix64(h + key.repetition * 0xe7037ed1a0b428dbULL);
  return h;
}

std::uint64_t RandomStream::next_u64() {
  ++counter_;
  return mix64(seed_ + counter_ * kGolden);
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_open() {
  return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

std::uint64_t RandomStream::uniform_index(std::uint64_t n) {
  if (n == 0) throw DomainError("uniform_index: empty range");
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n);
  std::uint64_t r;
  do {
    r = next_u64();
  } while (r >= limit);
  return r % n;
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_open();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Vector RandomStream::normal_vector(std::size_t d) {
  Vector z(d);
  for (std::size_t i = 0; i < d; ++i) z[i] = normal();
  return z;
}

void RandomStream::unit_sphere(std::span<double> out) {
  if (out.empty()) throw DomainError("unit_sphere: dimension must be positive");
  for (;;) {
    double s = 0.0;
    for (double& v : out) {
      v = normal();
      s += v * v;
    }
    const double n = std::sqrt(s);
    if (n > 1e-300) {
      for (double& v : out) v /= n;
      return;
    }
  }
}

Vector RandomStream::unit_sphere(std::size_t d) {
  if (d == 0) throw DomainError("unit_sphere: dimension must be positive");
  Vector z(d);
  unit_sphere(z.view());
  return z;
}

Vector RandomStream::unit_ball(std::size_t d) {
  Vector u = unit_sphere(d);
  const double r = std::pow(uniform(), 1.0 / static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) u[i] *= r;
  return u;
}

}  // namespace wcema
