#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lvyscale/kernels.hpp"
#include "lvyscale/synth.hpp"

namespace lvyscale {

/// Empirical characteristic function on a xi grid.
struct EcfReport {
  std::vector<double> xi;
  std::vector<std::complex<double>> ecf;
  std::size_t sample_count = 0;
  std::optional<double> sup_distance;  ///< set by compare_to_exponent
  std::optional<LevyExponent> target;
  double target_volume = 1.0;
};

/// 101 equispaced points on [-5, 5].
std::vector<double> default_xi_grid();

EcfReport empirical_cf(std::span<const double> samples, std::span<const double> xi,
                       Execution exec = Execution::parallel);

/// Sets sup_xi |ecf(xi) - exp(volume Psi(xi))| on the report and returns it.
double compare_to_exponent(EcfReport& report, const LevyExponent& target, double volume);

/// Evaluation point of the rescaled field: s(t) in 1-d, s(t, y) in 2-d.
struct TestPoint {
  double t = 1.0;
  double y = 1.0;
};

/// phi(x, y); y is ignored for 1-d paths. Paired by Riemann sum.
struct TestFunction {
  std::function<double(double, double)> phi;
  double window = 1.0;  ///< support of phi lies in [0, window]^d
};

using Observable = std::variant<TestPoint, TestFunction>;

/// The observable on a (rescaled) path.
double observe(const PathGrid& path, const Observable& observable);

/// Weights v on the path's grid with observe(path) = sum_k v[k] raw[k] * amplitude.
std::vector<double> observable_weights(const GridSpec& grid, const Observable& observable);

enum class Direction { coarse, fine };
enum class Verdict { converging, non_converging, degenerate_to_zero };
enum class Metric { ks, ecf };

std::string to_string(Direction d);
std::string to_string(Verdict v);
std::string to_string(Metric m);

struct LadderEntry {
  double a = 1.0;
  double distance = 0.0;      ///< the metric driving the verdict
  double ks = 0.0;            ///< two-sample KS against the reference process
  double ks_p_value = 1.0;
  double ecf_distance = 0.0;  ///< sup ECF distance to the closed-form limit cf
  std::size_t n = 0;
};

struct ScalingReport {
  std::string kind = "scaling";  ///< "scaling" or "degeneration"
  LevyExponent noise = LevyExponent::gaussian();
  Operator op;
  Direction direction = Direction::coarse;
  double hurst = 0.0;
  std::optional<LevyExponent> target;
  Metric metric = Metric::ks;
  double threshold = 0.0;
  std::vector<LadderEntry> ladder;
  Verdict verdict = Verdict::non_converging;
  std::optional<double> slope_estimate;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string note;
};

struct ScalingRequest {
  NoiseSpec noise;
  Operator op;
  Direction direction = Direction::coarse;
  std::vector<double> ladder;
  Observable observable = TestPoint{};
  std::size_t ensemble = 10000;
  std::optional<double> hurst;           ///< default gamma + d (1/beta - 1)
  std::optional<LevyExponent> target;    ///< default SaS(beta, leading coefficient)
  std::optional<GridSpec> grid;          ///< default derived from ladder and observable
  std::size_t resolution = 1;            ///< grid points per unit window at the finest view
  double threshold = 0.03;
  Metric metric = Metric::ks;
  LayeredSamplerConfig layered;
  Execution exec = Execution::parallel;
};

/// Coarse (a -> 0) or fine (a -> infinity) limit of a^H s(./a) against the
/// stable limit process. Throws MisuseError for a fine limit with beta_inf = 0.
ScalingReport verify_scaling_limit(const ScalingRequest& request);

struct DegenerationRequest {
  NoiseSpec noise;
  Operator op;
  double hurst = 0.0;
  std::vector<double> ladder;
  double delta = 0.1;
  Observable observable = TestPoint{};
  std::size_t ensemble = 10000;
  std::optional<GridSpec> grid;
  std::size_t resolution = 1;
  LayeredSamplerConfig layered;
  Execution exec = Execution::parallel;
};

/// Estimates P(|<a^H s(./a), phi>| > delta) along a ladder a -> infinity.
/// Throws MisuseError unless beta_inf = 0.
ScalingReport verify_degeneration(const DegenerationRequest& request);

/// KS of a^H s(t/a) against an independent unrescaled ensemble of s(t).
DistanceReport self_similarity_check(const NoiseSpec& noise, const Operator& op, double a,
                                     double hurst, const TestPoint& point, std::size_t ensemble,
                                     Execution exec = Execution::parallel);

/// Ensemble of paths on independent substreams of noise.stream.
std::vector<PathGrid> synthesize_ensemble(const NoiseSpec& noise, const Operator& op,
                                          const GridSpec& grid, std::size_t members,
                                          const LayeredSamplerConfig& layered = {},
                                          Execution exec = Execution::parallel);

/// Slope of log IQR(s(t)) against log t. Each t snaps to the nearest grid point.
double estimate_hurst(std::span<const PathGrid> ensemble, std::span<const double> t_grid);

/// Base grid used when a request does not fix one.
GridSpec derive_grid(const Operator& op, std::span<const double> ladder,
                     const Observable& observable, std::size_t resolution);

}  // namespace lvyscale
