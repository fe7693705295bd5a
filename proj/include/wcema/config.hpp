#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wcema/accumulator.hpp"
#include "wcema/moreau.hpp"
#include "wcema/vector.hpp"

namespace wcema {

/// An optimizer of the experiment grid: an accumulator preset plus the oracle kind.
struct AlgorithmSpec {
  std::string name;
  Preset preset;
  bool zeroth_order = false;
  /// Fixed position in the canonical list; part of the run's stream key.
  std::uint64_t stream_id = 0;
};

/// FEMA1, FEMA2, FEMA3, SGD, ZEMA1, ZEMA2, ZEMA3, ZSGD (case-insensitive;
/// Z-SGD is accepted for ZSGD). Throws ConfigError otherwise.
AlgorithmSpec algorithm_spec(std::string_view name);
const std::vector<std::string>& known_algorithms();

struct StepsizeGrid {
  enum class Spacing { linear, log };
  std::size_t count = 10;
  double min = 1e-4;
  double max = 0.1;
  Spacing spacing = Spacing::linear;

  /// Endpoints included; a single point is `min`.
  std::vector<double> values() const;
};

enum class StepRule { over_sqrt_horizon, constant };
enum class MuRule { paper_experiment, corollary, explicit_value };

struct ProblemSpec {
  enum class Kind { phase_retrieval, quadratic };
  Kind kind = Kind::phase_retrieval;
  std::size_t d = 10;
  /// Samples per epoch: the finite-sum size for phase retrieval, the epoch
  /// length for the streaming quadratic.
  std::size_t n = 1000;
  Vector spectrum;
  Vector linear;
  double noise = 0.0;
  /// none, l1, box or ball.
  std::string regularizer = "none";
  double l1_weight = 0.0;
  double box_lower = -1.0;
  double box_upper = 1.0;
  double ball_radius = 1.0;
};

struct ExperimentConfig {
  ProblemSpec problem;
  std::vector<std::string> algorithms;
  std::uint64_t epochs = 500;
  StepsizeGrid grid;
  StepRule step_rule = StepRule::over_sqrt_horizon;
  std::uint64_t repetitions = 10;
  std::uint64_t master_seed = 1;
  MuRule mu_rule = MuRule::paper_experiment;
  double mu = 0.0;
  std::filesystem::path output_dir = "results";
  /// 0 means one worker per hardware thread.
  std::size_t threads = 0;
  bool stationarity = true;
  bool save_traces = false;
  InnerSolverOptions inner;

  /// T with T + 1 = epochs * n iterations.
  std::uint64_t horizon() const;
  double smoothing() const;
};

/// Parses the sectioned key = value format. Unknown sections or keys, missing
/// required keys and out-of-range values raise ConfigError naming `source`.
ExperimentConfig parse_config(std::istream& in, const std::string& source);
ExperimentConfig load_config(const std::filesystem::path& path);
void validate(const ExperimentConfig& config);

const char* to_string(StepRule rule);
const char* to_string(MuRule rule);

}  // namespace wcema
