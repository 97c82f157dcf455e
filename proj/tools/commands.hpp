#pragma once

#include <optional>
#include <string>

#include "lvyscale/config.hpp"

namespace lvyscale::cli {

/// Exit codes. Verification verdicts use 0/1 so scripts can assert them.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFailed = 1;
inline constexpr int kExitDegenerateFit = 2;
inline constexpr int kExitError = 3;

struct IndicesOptions {
  std::string psi_csv;
  double psi_min = -5.0;
  double psi_max = 5.0;
  std::size_t psi_points = 101;
  bool json = false;
};

int cmd_simulate(const ExperimentConfig& config, bool write_increments);
int cmd_indices(const LevyExponent& noise, const IndicesOptions& options);
int cmd_verify(const ExperimentConfig& config);
int cmd_report(const std::string& path);

}  // namespace lvyscale::cli
