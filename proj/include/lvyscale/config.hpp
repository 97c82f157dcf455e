#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lvyscale/verify.hpp"

namespace lvyscale {

/// Everything needed to reproduce one experiment. Text form is a flat
/// sectioned key = value file:
///
///   [noise]     spec = layered(alpha=0.7,beta=1.5)   (or family = ..., alpha = ...)
///   [operator]  kind = levy | sheet | fractional, gamma = 1.5
///   [grid]      step, n, m
///   [run]       seed, stream, ensemble, out, format, threads
///   [verify]    direction, ladder, t, y, H, target, threshold, metric, delta, resolution
///   [layered]   epsilon, compensation
struct ExperimentConfig {
  LevyExponent noise = LevyExponent::gaussian();
  Operator op = Operator::levy();
  std::optional<GridSpec> grid;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  std::size_t ensemble = 1;
  std::string out_dir = "out";
  std::string format = "csv";
  int threads = 0;

  Direction direction = Direction::coarse;
  std::vector<double> ladder;
  TestPoint test_point;
  std::optional<double> hurst;
  std::optional<LevyExponent> target;
  double threshold = 0.03;
  Metric metric = Metric::ks;
  double delta = 0.1;
  std::size_t resolution = 1;

  LayeredSamplerConfig layered;

  /// Grid used by simulate: the configured one or 1001 points at step 1e-3.
  GridSpec simulation_grid() const;
  bool operator==(const ExperimentConfig& other) const;
};

ExperimentConfig parse_config_text(const std::string& text);
std::string to_config_text(const ExperimentConfig& config);

nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Reads a config file, or a manifest JSON written by simulate/verify.
ExperimentConfig load_config(const std::string& path);

/// Cross-field checks, reported as "section.key: message". `command` is
/// "simulate" or "verify".
void validate_config(const ExperimentConfig& config, const std::string& command);

}  // namespace lvyscale
