#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "wcema/experiment.hpp"

namespace wcema {

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);
std::string format_optional(const std::optional<double>& v);

inline constexpr const char* kRunsHeader =
    "algorithm,alpha,repetition,epoch,objective_gap,moreau_grad_norm_sq,tstar_index,seed";
inline constexpr const char* kSummaryHeader =
    "algorithm,alpha,mean_final_gap,mean_moreau_grad_norm_sq";
inline constexpr const char* kBestCurveHeader = "algorithm,epoch,best_mean_objective_gap";
inline constexpr const char* kStationarityHeader =
    "algorithm,alpha,repetition,tstar_index,zeta_vhat,moreau_grad_norm_sq_vhat,"
    "zeta_identity,moreau_grad_norm_sq_identity,envelope_gap_identity,inner_converged";
inline constexpr const char* kFailuresHeader = "algorithm,alpha,repetition,message";

/// One row per (run, epoch); moreau_grad_norm_sq is filled on the final epoch only.
std::string runs_csv(const ExperimentResult& result);
std::string summary_csv(const ExperimentResult& result);
std::string best_curve_csv(const ExperimentResult& result);
std::string stationarity_csv(const ExperimentResult& result);
std::string failures_csv(const ExperimentResult& result);

/// Writes runs.csv, summary.csv, best_curve.csv, stationarity.csv and (when a
/// run failed) failures.csv into `dir`, creating it. Throws Error naming the
/// path on I/O failure.
void write_results(const ExperimentResult& result, const std::filesystem::path& dir);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace wcema
