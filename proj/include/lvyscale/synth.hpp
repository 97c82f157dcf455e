#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lvyscale/sampler.hpp"

namespace lvyscale {

/// Regular grid anchored at the origin: points k * step, k < n (and l * step,
/// l < m, on the second axis when dim == 2).
struct GridSpec {
  int dim = 1;
  double step = 1e-3;
  std::size_t n = 1001;
  std::size_t m = 1;

  static GridSpec line(double step, std::size_t n) { return {1, step, n, 1}; }
  static GridSpec plane(double step, std::size_t n, std::size_t m) { return {2, step, n, m}; }

  void validate() const;
  std::size_t points() const { return dim == 1 ? n : n * m; }
  /// Number of white-noise cells feeding the path.
  std::size_t cells() const { return dim == 1 ? n - 1 : (n - 1) * (m - 1); }
  double cell_volume() const { return dim == 1 ? step : step * step; }
  bool operator==(const GridSpec&) const = default;
};

/// The operator L with L s = w, realized through its discrete left inverse.
struct Operator {
  enum class Kind { levy, sheet, fractional };
  Kind kind = Kind::levy;
  double gamma = 1.0;

  static Operator levy() { return {Kind::levy, 1.0}; }
  static Operator sheet() { return {Kind::sheet, 2.0}; }
  static Operator fractional(double gamma);

  int dimension() const { return kind == Kind::sheet ? 2 : 1; }
  /// Homogeneity order gamma: 1 for D, d for D_1...D_d.
  double order() const { return kind == Kind::levy ? 1.0 : kind == Kind::sheet ? 2.0 : gamma; }
  /// Self-similarity index gamma + d (1/beta - 1) of the beta-stable limit.
  double hurst_for(double beta) const;
  bool operator==(const Operator&) const = default;
};

/// Accumulated effect of rescale(): amplitude (num/den)^hurst applied to raw.
struct Scaling {
  std::uint64_t num = 1;
  std::uint64_t den = 1;
  double hurst = 0.0;
  double amplitude = 1.0;
};

/// A sampled realization. raw holds the synthesized values on the (possibly
/// subsampled) grid; the observable values are scaling.amplitude * raw.
struct PathGrid {
  GridSpec grid;
  std::vector<double> raw;
  Scaling scaling;
  NoiseSpec noise;
  Operator op;

  double at(std::size_t k) const { return scaling.amplitude * raw[k]; }
  double at(std::size_t i, std::size_t j) const { return scaling.amplitude * raw[i * grid.m + j]; }
  std::vector<double> values() const;
};

/// Builds raw path values from the cell increments (length grid.cells()).
std::vector<double> assemble_path(const Operator& op, const GridSpec& grid,
                                  std::span<const double> increments);

PathGrid synth_levy_process(const NoiseSpec& noise, const GridSpec& grid,
                            const LayeredSamplerConfig& layered = {});
PathGrid synth_levy_sheet(const NoiseSpec& noise, const GridSpec& grid,
                          const LayeredSamplerConfig& layered = {});
PathGrid synth_fractional_process(const NoiseSpec& noise, double gamma, const GridSpec& grid,
                                  const LayeredSamplerConfig& layered = {});
PathGrid synthesize(const NoiseSpec& noise, const Operator& op, const GridSpec& grid,
                    const LayeredSamplerConfig& layered = {});

/// Left-endpoint Riemann-Liouville weights h_i = step^{gamma-1} (i+1)^{gamma-1} / Gamma(gamma).
std::vector<double> fractional_weights(double gamma, double step, std::size_t count);

/// Scale factor a = m (zoom in) or a = 1/m (zoom out) with exponent H.
struct RescaleSpec {
  std::uint64_t m = 1;
  bool zoom_in = true;
  double hurst = 0.0;

  /// Accepts a when a or 1/a is an integer to within 1e-9 relative.
  static RescaleSpec from_factor(double a, double hurst);
  double factor() const;
};

/// a^H s(./a) on the source grid. Zoom out keeps the step and takes every
/// m-th point; zoom in keeps the leading points and relabels the step to
/// step * m. Throws ExtentError when fewer than two output points remain.
PathGrid rescale(const PathGrid& path, const RescaleSpec& spec);

/// step^dim * sum path * phi, a Riemann sum for <s, phi>.
double pair_test_function(const PathGrid& path, std::span<const double> phi);

/// Discrete adjoint of the left inverse: coefficients c on noise cells with
/// sum_k weights[k] path[k] = sum_j c[j] w[j] for every increment vector w.
std::vector<double> adjoint_weights(const Operator& op, const GridSpec& grid,
                                    std::span<const double> weights);

}  // namespace lvyscale
