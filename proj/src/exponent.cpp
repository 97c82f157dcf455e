#include "lvyscale/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <sstream>

#include "lvyscale/errors.hpp"
#include "lvyscale/quadrature.hpp"

namespace lvyscale {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const char* message) {
  if (!ok) throw InvalidParameter(message);
}

void validate(const GaussianParams& p) {
  require(std::isfinite(p.variance) && p.variance > 0.0, "gaussian: variance must be > 0");
}
void validate(const StableParams& p) {
  require(p.alpha > 0.0 && p.alpha <= 2.0, "stable: alpha must lie in (0, 2]");
  require(std::isfinite(p.scale) && p.scale > 0.0, "stable: scale must be > 0");
}
void validate(const GeneralizedLaplaceParams& p) {
  require(std::isfinite(p.c) && p.c > 0.0, "generalized-laplace: c must be > 0");
}
void validate(const CompoundPoissonParams& p) {
  require(std::isfinite(p.rate) && p.rate > 0.0, "compound-poisson: rate must be > 0");
  std::visit([](const auto& jump) { validate(jump); }, p.jump);
}
void validate(const LayeredStableParams& p) {
  require(p.alpha > 0.0 && p.alpha < 2.0, "layered: alpha must lie in (0, 2)");
  require(p.beta > 0.0 && p.beta < 2.0, "layered: beta must lie in (0, 2)");
}
void validate(const SumParams& p) {
  require(!p.terms.empty(), "sum: needs at least one term");
}

double jump_psi(const JumpLaw& jump, double xi) {
  return std::visit(Overloaded{
                        [xi](const GaussianParams& g) { return -0.5 * g.variance * xi * xi; },
                        [xi](const StableParams& s) {
                          return -s.scale * std::pow(std::abs(xi), s.alpha);
                        },
                    },
                    jump);
}

// Integrals of (1 - cos u) u^{-s-1}, s in (0, 2), split into:
//   [0, 1]     substitution v = u^{2-s}, which turns the integrand into the
//              bounded g(u) = (1 - cos u) / u^2 <= 1/2;
//   [1, 50]    plain Gauss-Kronrod on panels of length pi;
//   [50, inf)  u^{-s}/s minus the asymptotic expansion of the cosine integral.
constexpr double kPanelEnd = 50.0;
constexpr double kPi = 3.14159265358979323846;
const QuadratureTolerance kInnerTol{1e-15, 1e-11, 24};

double one_minus_cos_over_square(double u) {
  if (u == 0.0) return 0.5;
  const double h = std::sin(0.5 * u);
  return 2.0 * h * h / (u * u);
}

double one_minus_cos(double u) {
  const double h = std::sin(0.5 * u);
  return 2.0 * h * h;
}

// 0 <= a < b <= 1.
double small_u_part(double s, double a, double b) {
  const double m = 2.0 - s;
  const double inv_m = 1.0 / m;
  const auto integrand = [inv_m](double v) {
    return one_minus_cos_over_square(std::pow(v, inv_m));
  };
  return inv_m * integrate(integrand, std::pow(a, m), std::pow(b, m), kInnerTol).value;
}

// 1 <= a < b <= kPanelEnd.
double mid_u_part(double s, double a, double b) {
  const auto integrand = [s](double u) { return one_minus_cos(u) * std::pow(u, -s - 1.0); };
  double total = 0.0;
  double lo = a;
  for (int k = static_cast<int>(std::floor(a / kPi)) + 1; lo < b; ++k) {
    const double hi = std::min(b, k * kPi);
    if (hi > lo) total += integrate(integrand, lo, hi, kInnerTol).value;
    lo = hi;
  }
  return total;
}

// Re of the integral of e^{iu} u^{-p} over [x, inf), x >= kPanelEnd, via
// F_p(x) = i e^{ix} sum_n (-i)^n (p)_n x^{-p-n}.
double cosine_tail(double p, double x) {
  using C = std::complex<double>;
  C term = std::pow(x, -p);
  C sum = term;
  double previous = std::abs(term);
  for (int n = 0; n < 400; ++n) {
    term *= C(0.0, -1.0) * ((p + n) / x);
    const double magnitude = std::abs(term);
    if (magnitude > previous) break;  // asymptotic series: stop at the smallest term
    sum += term;
    if (magnitude <= 1e-18 * std::abs(sum)) break;
    previous = magnitude;
  }
  return (C(0.0, 1.0) * std::exp(C(0.0, x)) * sum).real();
}

double far_tail(double s, double x) { return std::pow(x, -s) / s - cosine_tail(s + 1.0, x); }

// Integral of (1 - cos u) u^{-s-1} over [x, inf).
double upper_integral(double s, double x) {
  if (x >= kPanelEnd) return far_tail(s, x);
  double total = far_tail(s, kPanelEnd);
  if (x >= 1.0) return total + mid_u_part(s, x, kPanelEnd);
  return total + mid_u_part(s, 1.0, kPanelEnd) + small_u_part(s, x, 1.0);
}

// Integral over [0, inf), i.e. half of stable_measure_constant.
double half_line_integral(double s) { return upper_integral(s, 0.0); }

// Integral of (1 - cos u) u^{-s-1} over [0, x].
double lower_integral(double s, double x) {
  if (x <= 1.0) return small_u_part(s, 0.0, x);
  if (x <= kPanelEnd) return small_u_part(s, 0.0, 1.0) + mid_u_part(s, 1.0, x);
  return half_line_integral(s) - far_tail(s, x);
}

double layered_psi(const LayeredStableParams& p, double xi) {
  const double x = std::abs(xi);
  if (x == 0.0) return 0.0;
  // t = u / x maps |t| <= 1 to u <= x.
  const double inner = std::pow(x, p.alpha) * lower_integral(p.alpha, x);
  const double outer = std::pow(x, p.beta) * upper_integral(p.beta, x);
  return -2.0 * (inner + outer);
}

}  // namespace

bool SumParams::operator==(const SumParams& other) const { return terms == other.terms; }

LevyExponent LevyExponent::from_params(Params params) {
  std::visit([](const auto& p) { validate(p); }, params);
  return LevyExponent(std::move(params));
}

LevyExponent LevyExponent::gaussian(double variance) {
  return from_params(GaussianParams{variance});
}
LevyExponent LevyExponent::stable(double alpha, double scale) {
  return from_params(StableParams{alpha, scale});
}
LevyExponent LevyExponent::cauchy(double scale) { return stable(1.0, scale); }
LevyExponent LevyExponent::generalized_laplace(double c) {
  return from_params(GeneralizedLaplaceParams{c});
}
LevyExponent LevyExponent::compound_poisson(double rate, JumpLaw jump) {
  return from_params(CompoundPoissonParams{rate, jump});
}
LevyExponent LevyExponent::layered_stable(double alpha, double beta) {
  return from_params(LayeredStableParams{alpha, beta});
}
LevyExponent LevyExponent::sum(std::vector<LevyExponent> terms) {
  return from_params(SumParams{std::move(terms)});
}

double LevyExponent::psi(double xi) const {
  return std::visit(
      Overloaded{
          [xi](const GaussianParams& g) { return -0.5 * g.variance * xi * xi; },
          [xi](const StableParams& s) { return -s.scale * std::pow(std::abs(xi), s.alpha); },
          [xi](const GeneralizedLaplaceParams& l) { return -l.c * std::log1p(xi * xi); },
          [xi](const CompoundPoissonParams& cp) {
            return cp.rate * std::expm1(jump_psi(cp.jump, xi));
          },
          [xi](const LayeredStableParams& l) { return layered_psi(l, xi); },
          [xi](const SumParams& s) {
            double total = 0.0;
            for (const auto& term : s.terms) total += term.psi(xi);
            return total;
          },
      },
      params_);
}

double eval_psi(const LevyExponent& exponent, double xi) { return exponent.psi(xi); }

IndexPair theoretical_indices(const LevyExponent& exponent) {
  return std::visit(
      Overloaded{
          [](const GaussianParams&) { return IndexPair{2.0, 2.0}; },
          [](const StableParams& s) { return IndexPair{s.alpha, s.alpha}; },
          [](const GeneralizedLaplaceParams&) { return IndexPair{2.0, 0.0}; },
          [](const CompoundPoissonParams& cp) {
            const double beta0 = std::visit(
                Overloaded{[](const GaussianParams&) { return 2.0; },
                           [](const StableParams& s) { return s.alpha; }},
                cp.jump);
            return IndexPair{beta0, 0.0};
          },
          // Tail of the Levy measure (beta) sets the behaviour at 0, the
          // singularity at the origin (alpha) the behaviour at infinity.
          [](const LayeredStableParams& l) { return IndexPair{l.beta, l.alpha}; },
          [](const SumParams& s) {
            IndexPair out{2.0, 0.0};
            for (const auto& term : s.terms) {
              const IndexPair t = theoretical_indices(term);
              out.beta0 = std::min(out.beta0, t.beta0);
              out.beta_inf = std::max(out.beta_inf, t.beta_inf);
            }
            return out;
          },
      },
      exponent.params());
}

double leading_coefficient(const LevyExponent& exponent, End end) {
  const IndexPair indices = theoretical_indices(exponent);
  const double index = end == End::zero ? indices.beta0 : indices.beta_inf;
  if (index == 0.0) {
    throw MisuseError("leading_coefficient: exponent has no power-law behaviour at this end");
  }
  return std::visit(
      Overloaded{
          [](const GaussianParams& g) { return 0.5 * g.variance; },
          [](const StableParams& s) { return s.scale; },
          [](const GeneralizedLaplaceParams& l) { return l.c; },
          [](const CompoundPoissonParams& cp) {
            return std::visit(Overloaded{[&](const GaussianParams& g) {
                                           return 0.5 * cp.rate * g.variance;
                                         },
                                         [&](const StableParams& s) { return cp.rate * s.scale; }},
                              cp.jump);
          },
          [end](const LayeredStableParams& l) {
            return stable_measure_constant(end == End::zero ? l.beta : l.alpha);
          },
          [end, index](const SumParams& s) {
            double total = 0.0;
            for (const auto& term : s.terms) {
              const IndexPair t = theoretical_indices(term);
              if ((end == End::zero ? t.beta0 : t.beta_inf) == index) {
                total += leading_coefficient(term, end);
              }
            }
            return total;
          },
      },
      exponent.params());
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi > lo) || count < 2) {
    throw InvalidParameter("log_grid: need 0 < lo < hi and at least two points");
  }
  std::vector<double> grid(count);
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo * std::exp(step * static_cast<double>(i));
  grid.back() = hi;
  return grid;
}

std::vector<double> default_index_grid(End end) {
  return end == End::zero ? log_grid(1e-6, 1e-3, 16) : log_grid(1e4, 1e8, 16);
}

IndexFit fit_index(const LevyExponent& exponent, End end, std::span<const double> grid) {
  if (grid.size() < 8) throw InvalidParameter("estimate_index: grid needs at least 8 points");
  for (double xi : grid) {
    const bool in_range = end == End::zero ? (xi > 0.0 && xi <= 1e-2) : (xi >= 1e2);
    if (!in_range || !std::isfinite(xi)) {
      throw InvalidParameter(end == End::zero
                                 ? "estimate_index: zero-end grid must lie in (0, 1e-2]"
                                 : "estimate_index: infinity-end grid must lie in [1e2, inf)");
    }
  }
  std::vector<double> x(grid.size()), y(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double magnitude = std::abs(exponent.psi(grid[i]));
    if (!(magnitude > 0.0)) {
      std::ostringstream msg;
      msg << "estimate_index: Psi vanishes at xi = " << grid[i];
      throw DegenerateFit(msg.str());
    }
    x[i] = std::log(grid[i]);
    y[i] = std::log(magnitude);
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DegenerateFit("estimate_index: grid has no spread");
  IndexFit fit;
  fit.raw_slope = sxy / sxx;
  fit.slope = std::clamp(fit.raw_slope, 0.0, 2.0);
  fit.intercept = my - fit.raw_slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.raw_slope * x[i]);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

double estimate_index(const LevyExponent& exponent, End end, std::span<const double> grid) {
  return fit_index(exponent, end, grid).slope;
}

AdmissibilityCertificate is_p_admissible(const LevyExponent& exponent, double p,
                                         std::span<const double> grid) {
  if (!(p > 0.0 && p <= 2.0)) throw InvalidParameter("is_p_admissible: p must lie in (0, 2]");
  if (grid.size() < 3) throw InvalidParameter("is_p_admissible: grid needs at least 3 points");
  AdmissibilityCertificate cert;
  cert.p = p;
  cert.grid.assign(grid.begin(), grid.end());
  std::sort(cert.grid.begin(), cert.grid.end());
  if (cert.grid.front() <= 0.0) throw InvalidParameter("is_p_admissible: grid must be positive");

  std::vector<double> ratio(cert.grid.size());
  for (std::size_t i = 0; i < ratio.size(); ++i) {
    const double xi = cert.grid[i];
    ratio[i] = std::abs(exponent.psi(xi)) / std::pow(xi, p);
  }
  cert.constant = *std::max_element(ratio.begin(), ratio.end());

  // Local log-log slope of the ratio over the two outermost grid intervals.
  constexpr double kGrowth = 1e-3;
  const auto log_slope = [&](std::size_t i, std::size_t j) {
    if (ratio[i] <= 0.0 || ratio[j] <= 0.0) return 0.0;
    return std::log(ratio[j] / ratio[i]) / std::log(cert.grid[j] / cert.grid[i]);
  };
  const std::size_t last = ratio.size() - 1;
  const bool grows_at_infinity = log_slope(last - 1, last) > kGrowth;
  const bool grows_at_zero = log_slope(0, 1) < -kGrowth;

  cert.admissible = std::isfinite(cert.constant) && !grows_at_infinity && !grows_at_zero;
  if (grows_at_infinity) {
    cert.witness = cert.grid.back();
  } else if (grows_at_zero) {
    cert.witness = cert.grid.front();
  }
  return cert;
}

double stable_measure_constant(double s) {
  if (!(s > 0.0 && s < 2.0)) throw InvalidParameter("stable_measure_constant: s must lie in (0, 2)");
  return 2.0 * half_line_integral(s);
}

LayeredConstants layered_asymptotic_constants(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 2.0 && beta > 0.0 && beta < 2.0)) {
    throw InvalidParameter("layered_asymptotic_constants: alpha, beta must lie in (0, 2)");
  }
  LayeredConstants out;
  out.cinf = stable_measure_constant(alpha);
  out.c0 = alpha == beta ? out.cinf : stable_measure_constant(beta);
  return out;
}

}  // namespace lvyscale
