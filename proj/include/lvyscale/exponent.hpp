#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace lvyscale {

/// Psi(xi) = -variance * xi^2 / 2.
struct GaussianParams {
  double variance = 1.0;
  bool operator==(const GaussianParams&) const = default;
};

/// Psi(xi) = -scale * |xi|^alpha. Cauchy is alpha = 1.
struct StableParams {
  double alpha = 1.0;
  double scale = 1.0;
  bool operator==(const StableParams&) const = default;
};

/// Psi(xi) = -c * log(1 + xi^2).
struct GeneralizedLaplaceParams {
  double c = 1.0;
  bool operator==(const GeneralizedLaplaceParams&) const = default;
};

using JumpLaw = std::variant<GaussianParams, StableParams>;

/// Psi(xi) = rate * (cf_jump(xi) - 1).
struct CompoundPoissonParams {
  double rate = 1.0;
  JumpLaw jump = GaussianParams{};
  bool operator==(const CompoundPoissonParams&) const = default;
};

/// Levy measure |t|^{-alpha-1} on |t| <= 1 and |t|^{-beta-1} outside.
struct LayeredStableParams {
  double alpha = 1.0;
  double beta = 1.0;
  bool operator==(const LayeredStableParams&) const = default;
};

class LevyExponent;

/// Exponent of a sum of independent noises.
struct SumParams {
  std::vector<LevyExponent> terms;
  bool operator==(const SumParams& other) const;
};

enum class Family { gaussian, stable, generalized_laplace, compound_poisson, layered_stable, sum };

/// A symmetric, real, nonpositive Levy exponent. Construction validates the
/// family's parameter domain and throws InvalidParameter otherwise.
class LevyExponent {
 public:
  using Params = std::variant<GaussianParams, StableParams, GeneralizedLaplaceParams,
                              CompoundPoissonParams, LayeredStableParams, SumParams>;

  static LevyExponent gaussian(double variance = 1.0);
  static LevyExponent stable(double alpha, double scale = 1.0);
  static LevyExponent cauchy(double scale = 1.0);
  static LevyExponent generalized_laplace(double c = 1.0);
  static LevyExponent compound_poisson(double rate, JumpLaw jump);
  static LevyExponent layered_stable(double alpha, double beta);
  static LevyExponent sum(std::vector<LevyExponent> terms);
  /// Validating constructor from raw parameters.
  static LevyExponent from_params(Params params);

  Family family() const { return static_cast<Family>(params_.index()); }
  const Params& params() const { return params_; }

  /// Psi(xi). Layered-stable exponents go through adaptive quadrature and may
  /// throw QuadratureError.
  double psi(double xi) const;

  bool operator==(const LevyExponent& other) const { return params_ == other.params_; }

 private:
  explicit LevyExponent(Params params) : params_(std::move(params)) {}
  Params params_;
};

double eval_psi(const LevyExponent& exponent, double xi);

struct IndexPair {
  double beta0 = 2.0;    ///< Pruitt index, behaviour at xi -> 0
  double beta_inf = 2.0; ///< Blumenthal-Getoor index, behaviour at xi -> infinity
  bool operator==(const IndexPair&) const = default;
};

enum class End { zero, infinity };

IndexPair theoretical_indices(const LevyExponent& exponent);

/// Constant C with Psi(xi) ~ -C |xi|^beta at the given end, beta being the
/// matching theoretical index. Throws MisuseError when that index is 0.
double leading_coefficient(const LevyExponent& exponent, End end);

/// Log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t count);
/// 16 points on [1e-6, 1e-3] for the zero end, [1e4, 1e8] at infinity.
std::vector<double> default_index_grid(End end);

struct IndexFit {
  double slope = 0.0;      ///< clamped to [0, 2]
  double raw_slope = 0.0;  ///< before clamping
  double intercept = 0.0;
  double rms_residual = 0.0;
};

/// Least-squares slope of log|Psi| against log xi. Throws DegenerateFit when
/// Psi vanishes on the grid, InvalidParameter when the grid is out of range.
IndexFit fit_index(const LevyExponent& exponent, End end, std::span<const double> grid);
double estimate_index(const LevyExponent& exponent, End end, std::span<const double> grid);

struct AdmissibilityCertificate {
  double p = 0.0;
  bool admissible = false;
  double constant = 0.0;
  std::optional<double> witness;
  std::vector<double> grid;
};

/// Grid-based check of |Psi(xi)| <= C |xi|^p. Only a necessary condition:
/// the ratio must not grow (in log-log slope) at either end of the grid.
AdmissibilityCertificate is_p_admissible(const LevyExponent& exponent, double p,
                                         std::span<const double> grid);

struct LayeredConstants {
  double c0 = 0.0;    ///< integral of (1 - cos x) / |x|^{beta + 1}
  double cinf = 0.0;  ///< integral of (1 - cos x) / |x|^{alpha + 1}
};

LayeredConstants layered_asymptotic_constants(double alpha, double beta);

/// Integral over the real line of (1 - cos x) / |x|^{s + 1}, s in (0, 2), by quadrature.
double stable_measure_constant(double s);

}  // namespace lvyscale
