#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "wcema/config.hpp"
#include "wcema/experiment.hpp"
#include "wcema/vector.hpp"

namespace wcema {

/// What is needed to re-evaluate stationarity of a run's output offline: the
/// problem description with its data seed, and x_{t*} with v_hat_{t*}.
struct SavedTrace {
  ProblemSpec problem;
  std::uint64_t data_seed = 0;
  std::string algorithm;
  double alpha = 0.0;
  std::uint64_t repetition = 0;
  std::uint64_t tstar = 0;
  Vector x_tstar;
  Vector v_hat_tstar;
  Vector q;
};

SavedTrace saved_trace_from_run(const ExperimentConfig& config, const RunRecord& run);

std::string trace_to_json(const SavedTrace& trace);
/// Throws ConfigError on malformed input.
SavedTrace trace_from_json(const std::string& text);

void save_trace(const std::filesystem::path& path, const SavedTrace& trace);
/// Throws ConfigError naming the path when it cannot be read or parsed.
SavedTrace load_trace(const std::filesystem::path& path);

}  // namespace wcema
