#pragma once

#include <cstdint>
#include <span>

#include "wcema/vector.hpp"

namespace wcema {

/// What a random stream is used for. Each purpose gets an independent stream.
enum class StreamPurpose : std::uint64_t {
  data = 1,   ///< problem instance generation
  xi = 2,     ///< stochastic sample indices
  u = 3,      ///< zeroth-order directions
  tstar = 4,  ///< output iterate selection
  init = 5,   ///< initial point
};

const char* to_string(StreamPurpose purpose);

/// Coordinates of a stream inside an experiment.
struct StreamKey {
  std::uint64_t master_seed = 0;
  StreamPurpose purpose = StreamPurpose::data;
  std::uint64_t algorithm = 0;
  std::uint64_t grid_index = 0;
  std::uint64_t repetition = 0;

  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

/// Hashes a key into a 64-bit stream seed (SplitMix64 finalizer chain).
std::uint64_t derive_seed(const StreamKey& key);

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t z);

/// Counter-based generator: output k is mix64(seed + (k+1) * golden).
///
/// Distributions are implemented here rather than with <random> so that
/// streams are bit-identical across standard library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  /// Uniform on {0, ..., n-1}; n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);
  /// Standard normal via Box-Muller.
  double normal();

  Vector normal_vector(std::size_t d);
  /// Uniform on the unit sphere S^{d-1} (normalized Gaussian).
  Vector unit_sphere(std::size_t d);
  /// In-place variant; draws the same values as unit_sphere(out.size()).
  void unit_sphere(std::span<double> out);
  /// Uniform in the unit ball: sphere direction scaled by U^{1/d}.
  Vector unit_ball(std::size_t d);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace wcema
