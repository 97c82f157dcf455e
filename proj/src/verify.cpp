#include "lvyscale/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lvyscale/errors.hpp"
#include "lvyscale/stats.hpp"

namespace lvyscale {

namespace {

constexpr std::uint64_t kReferenceTag = 0x7265666572656e63ULL;
constexpr std::uint64_t kUnscaledTag = 0x756e7363616c6564ULL;

std::size_t snap(double coordinate, double step, std::size_t extent, const char* axis) {
  const double position = coordinate / step;
  const double k = std::round(position);
  if (k < 0.0 || std::abs(position - k) > 1e-6 * std::max(1.0, position)) {
    std::ostringstream msg;
    msg << "test point " << axis << " = " << coordinate << " is not on the grid of step " << step;
    throw InvalidParameter(msg.str());
  }
  const auto index = static_cast<std::size_t>(k);
  if (index >= extent) {
    std::ostringstream msg;
    msg << "test point " << axis << " = " << coordinate << " lies beyond the grid extent";
    throw ExtentError(msg.str(), index + 1);
  }
  return index;
}

std::size_t point_index(const GridSpec& grid, const TestPoint& point) {
  const std::size_t i = snap(point.t, grid.step, grid.n, "t");
  if (grid.dim == 1) return i;
  return i * grid.m + snap(point.y, grid.step, grid.m, "y");
}

GridSpec rescaled_grid(const GridSpec& grid, const RescaleSpec& spec) {
  GridSpec out = grid;
  out.n = (grid.n - 1) / spec.m + 1;
  if (grid.dim == 2) out.m = (grid.m - 1) / spec.m + 1;
  if (spec.zoom_in) out.step = grid.step * static_cast<double>(spec.m);
  return out;
}

// log of the cf of sum_j c_j w_j, w_j i.i.d. cells of volume `volume`, at xi.
double linear_functional_log_cf(const LevyExponent& target, std::span<const double> c,
                                double volume, double xi) {
  if (const auto* s = std::get_if<StableParams>(&target.params())) {
    double norm = 0.0;
    for (double cj : c) norm += std::pow(std::abs(cj), s->alpha);
    return -s->scale * volume * norm * std::pow(std::abs(xi), s->alpha);
  }
  double total = 0.0;
  for (double cj : c) total += target.psi(cj * xi);
  return volume * total;
}

double ecf_distance_to_linear_limit(std::span<const double> samples, const LevyExponent& target,
                                    std::span<const double> c, double volume, Execution exec) {
  const EcfReport report = empirical_cf(samples, default_xi_grid(), exec);
  // Stable targets factor as exp(-C vol ||c||^alpha |xi|^alpha): evaluate the norm once.
  double sup = 0.0;
  if (const auto* s = std::get_if<StableParams>(&target.params())) {
    double norm = 0.0;
    for (double cj : c) norm += std::pow(std::abs(cj), s->alpha);
    for (std::size_t r = 0; r < report.xi.size(); ++r) {
      const double cf = std::exp(-s->scale * volume * norm * std::pow(std::abs(report.xi[r]), s->alpha));
      sup = std::max(sup, std::abs(report.ecf[r] - cf));
    }
    return sup;
  }
  for (std::size_t r = 0; r < report.xi.size(); ++r) {
    const double cf = std::exp(linear_functional_log_cf(target, c, volume, report.xi[r]));
    sup = std::max(sup, std::abs(report.ecf[r] - cf));
  }
  return sup;
}

void check_ladder(std::span<const double> ladder, bool decreasing) {
  if (ladder.empty()) throw InvalidParameter("scale ladder is empty");
  for (double a : ladder) {
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidParameter("scale ladder entries must be > 0");
  }
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    const bool ok = decreasing ? ladder[i] < ladder[i - 1] : ladder[i] > ladder[i - 1];
    if (!ok) {
      throw InvalidParameter(decreasing ? "coarse ladder must decrease strictly toward 0"
                                        : "fine ladder must increase strictly toward infinity");
    }
  }
}

std::vector<double> column(const std::vector<std::vector<double>>& rows, std::size_t c) {
  std::vector<double> out(rows.size());
  for (std::size_t p = 0; p < rows.size(); ++p) out[p] = rows[p][c];
  return out;
}

}  // namespace

std::string to_string(Direction d) { return d == Direction::coarse ? "coarse" : "fine"; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::converging:
      return "converging";
    case Verdict::non_converging:
      return "non-converging";
    case Verdict::degenerate_to_zero:
      return "degenerate-to-zero";
  }
  return "unknown";
}

std::string to_string(Metric m) { return m == Metric::ks ? "ks" : "ecf"; }

std::vector<double> default_xi_grid() {
  std::vector<double> xi(101);
  for (int i = 0; i <= 100; ++i) xi[i] = -5.0 + 0.1 * i;
  xi[50] = 0.0;
  return xi;
}

EcfReport empirical_cf(std::span<const double> samples, std::span<const double> xi,
                       Execution exec) {
  if (samples.empty()) throw InvalidParameter("empirical_cf: no samples");
  if (std::find(xi.begin(), xi.end(), 0.0) == xi.end()) {
    throw InvalidParameter("empirical_cf: xi grid must include 0");
  }
  EcfReport report;
  report.xi.assign(xi.begin(), xi.end());
  report.ecf.resize(xi.size());
  report.sample_count = samples.size();
  kernels::empirical_cf(exec, samples, report.xi, report.ecf);
  return report;
}

double compare_to_exponent(EcfReport& report, const LevyExponent& target, double volume) {
  double sup = 0.0;
  for (std::size_t r = 0; r < report.xi.size(); ++r) {
    const double cf = std::exp(volume * target.psi(report.xi[r]));
    sup = std::max(sup, std::abs(report.ecf[r] - cf));
  }
  report.sup_distance = sup;
  report.target = target;
  report.target_volume = volume;
  return sup;
}

std::vector<double> observable_weights(const GridSpec& grid, const Observable& observable) {
  std::vector<double> weights(grid.points(), 0.0);
  if (const auto* point = std::get_if<TestPoint>(&observable)) {
    weights[point_index(grid, *point)] = 1.0;
    return weights;
  }
  const auto& fn = std::get<TestFunction>(observable);
  const double extent = static_cast<double>(grid.n - 1) * grid.step;
  if (fn.window > extent * (1.0 + 1e-9)) {
    throw ExtentError("test function window exceeds the grid extent",
                      static_cast<std::size_t>(std::ceil(fn.window / grid.step)) + 1);
  }
  const double measure = grid.dim == 1 ? grid.step : grid.step * grid.step;
  if (grid.dim == 1) {
    for (std::size_t k = 0; k < grid.n; ++k) weights[k] = measure * fn.phi(k * grid.step, 0.0);
  } else {
    for (std::size_t i = 0; i < grid.n; ++i) {
      for (std::size_t j = 0; j < grid.m; ++j) {
        weights[i * grid.m + j] = measure * fn.phi(i * grid.step, j * grid.step);
      }
    }
  }
  return weights;
}

double observe(const PathGrid& path, const Observable& observable) {
  if (const auto* point = std::get_if<TestPoint>(&observable)) {
    return path.scaling.amplitude * path.raw[point_index(path.grid, *point)];
  }
  const auto weights = observable_weights(path.grid, observable);
  double sum = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) sum += weights[k] * path.raw[k];
  return path.scaling.amplitude * sum;
}

GridSpec derive_grid(const Operator& op, std::span<const double> ladder,
                     const Observable& observable, std::size_t resolution) {
  if (ladder.empty()) throw InvalidParameter("derive_grid: empty ladder");
  if (resolution == 0) throw InvalidParameter("derive_grid: resolution must be >= 1");
  double window = 1.0;
  if (const auto* point = std::get_if<TestPoint>(&observable)) {
    window = op.dimension() == 1 ? point->t : std::max(point->t, point->y);
  } else {
    window = std::get<TestFunction>(observable).window;
  }
  if (!(window > 0.0)) throw InvalidParameter("derive_grid: observable window must be > 0");
  const auto [lo, hi] = std::minmax_element(ladder.begin(), ladder.end());
  const double top = std::max(*hi, 1.0);
  const double step = window / (top * static_cast<double>(resolution));
  const auto intervals =
      static_cast<std::size_t>(std::llround(top * static_cast<double>(resolution) / *lo));
  GridSpec grid{op.dimension(), step, intervals + 1, op.dimension() == 2 ? intervals + 1 : 1};
  grid.validate();
  return grid;
}

std::vector<PathGrid> synthesize_ensemble(const NoiseSpec& noise, const Operator& op,
                                          const GridSpec& grid, std::size_t members,
                                          const LayeredSamplerConfig& layered, Execution exec) {
  return kernels::ensemble_map(exec, members, [&](std::size_t p) {
    NoiseSpec member = noise;
    member.stream = substream(noise.stream, p);
    return synthesize(member, op, grid, layered);
  });
}

ScalingReport verify_scaling_limit(const ScalingRequest& request) {
  const bool coarse = request.direction == Direction::coarse;
  check_ladder(request.ladder, coarse);
  if (request.ensemble < 2) throw InvalidParameter("verify_scaling_limit: ensemble too small");
  const IndexPair indices = theoretical_indices(request.noise.exponent);
  const double beta = coarse ? indices.beta0 : indices.beta_inf;
  if (!coarse && beta == 0.0) {
    throw MisuseError(
        "fine-scale limit needs beta_inf > 0; this noise has beta_inf = 0, use verify_degeneration");
  }

  ScalingReport report;
  report.noise = request.noise.exponent;
  report.op = request.op;
  report.direction = request.direction;
  report.hurst = request.hurst.value_or(request.op.hurst_for(beta));
  report.target = request.target.value_or(LevyExponent::stable(
      beta, leading_coefficient(request.noise.exponent, coarse ? End::zero : End::infinity)));
  report.metric = request.metric;
  report.threshold = request.threshold;
  report.seed = request.noise.seed;
  report.stream = request.noise.stream;

  const GridSpec grid = request.grid.value_or(
      derive_grid(request.op, request.ladder, request.observable, request.resolution));
  std::vector<RescaleSpec> specs;
  for (double a : request.ladder) specs.push_back(RescaleSpec::from_factor(a, report.hurst));

  const auto rows = kernels::ensemble_map(request.exec, request.ensemble, [&](std::size_t p) {
    NoiseSpec member = request.noise;
    member.stream = substream(request.noise.stream, p);
    const PathGrid path = synthesize(member, request.op, grid, request.layered);
    std::vector<double> row(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
      row[i] = observe(rescale(path, specs[i]), request.observable);
    }
    return row;
  });

  // Reference: the limit process itself, on the grid of the last view.
  const GridSpec reference_grid = rescaled_grid(grid, specs.back());
  NoiseSpec reference_noise{*report.target, request.noise.seed,
                            substream(request.noise.stream, kReferenceTag)};
  const auto reference = kernels::ensemble_map(request.exec, request.ensemble, [&](std::size_t p) {
    NoiseSpec member = reference_noise;
    member.stream = substream(reference_noise.stream, p);
    return observe(synthesize(member, request.op, reference_grid, request.layered),
                   request.observable);
  });

  // Closed-form cf of the limit: the observable of the target process on the reference grid.
  const auto limit_c = adjoint_weights(request.op, reference_grid,
                                       observable_weights(reference_grid, request.observable));

  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto samples = column(rows, i);
    LadderEntry entry;
    entry.a = request.ladder[i];
    entry.n = samples.size();
    const KsResult ks = ks_two_sample(samples, reference);
    entry.ks = ks.statistic;
    entry.ks_p_value = ks.p_value;

    entry.ecf_distance = ecf_distance_to_linear_limit(samples, *report.target, limit_c,
                                                      reference_grid.cell_volume(), request.exec);
    entry.distance = request.metric == Metric::ks ? entry.ks : entry.ecf_distance;
    report.ladder.push_back(entry);
  }

  const double first = report.ladder.front().distance;
  const double last = report.ladder.back().distance;
  const double noise_floor = request.metric == Metric::ks
                                 ? ks_critical_value(0.01, request.ensemble, request.ensemble)
                                 : 3.0 / std::sqrt(static_cast<double>(request.ensemble));
  report.verdict = (last < request.threshold && last <= first + noise_floor)
                       ? Verdict::converging
                       : Verdict::non_converging;
  return report;
}

ScalingReport verify_degeneration(const DegenerationRequest& request) {
  const IndexPair indices = theoretical_indices(request.noise.exponent);
  if (indices.beta_inf != 0.0) {
    throw MisuseError("verify_degeneration needs a noise with beta_inf = 0");
  }
  if (!(request.delta > 0.0)) throw InvalidParameter("verify_degeneration: delta must be > 0");
  check_ladder(request.ladder, false);

  ScalingReport report;
  report.kind = "degeneration";
  report.noise = request.noise.exponent;
  report.op = request.op;
  report.direction = Direction::fine;
  report.hurst = request.hurst;
  report.threshold = 0.01;
  report.seed = request.noise.seed;
  report.stream = request.noise.stream;

  const GridSpec grid = request.grid.value_or(
      derive_grid(request.op, request.ladder, request.observable, request.resolution));
  std::vector<RescaleSpec> specs;
  for (double a : request.ladder) specs.push_back(RescaleSpec::from_factor(a, request.hurst));

  const auto rows = kernels::ensemble_map(request.exec, request.ensemble, [&](std::size_t p) {
    NoiseSpec member = request.noise;
    member.stream = substream(request.noise.stream, p);
    const PathGrid path = synthesize(member, request.op, grid, request.layered);
    std::vector<double> row(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
      row[i] = observe(rescale(path, specs[i]), request.observable);
    }
    return row;
  });

  for (std::size_t i = 0; i < specs.size(); ++i) {
    std::size_t exceed = 0;
    for (const auto& row : rows) exceed += std::abs(row[i]) > request.delta ? 1 : 0;
    LadderEntry entry;
    entry.a = request.ladder[i];
    entry.n = rows.size();
    entry.distance = static_cast<double>(exceed) / static_cast<double>(rows.size());
    report.ladder.push_back(entry);
  }
  const double first = report.ladder.front().distance;
  const double last = report.ladder.back().distance;
  report.verdict = (last < 0.01 && last <= first) ? Verdict::degenerate_to_zero
                                                  : Verdict::non_converging;
  return report;
}

DistanceReport self_similarity_check(const NoiseSpec& noise, const Operator& op, double a,
                                     double hurst, const TestPoint& point, std::size_t ensemble,
                                     Execution exec) {
  const std::vector<double> ladder{std::max(a, 1.0), std::min(a, 1.0)};
  const GridSpec grid = derive_grid(op, ladder, point, 1);
  const RescaleSpec spec = RescaleSpec::from_factor(a, hurst);
  const auto rescaled = kernels::ensemble_map(exec, ensemble, [&](std::size_t p) {
    NoiseSpec member = noise;
    member.stream = substream(noise.stream, p);
    return observe(rescale(synthesize(member, op, grid), spec), point);
  });
  const auto unscaled = kernels::ensemble_map(exec, ensemble, [&](std::size_t p) {
    NoiseSpec member = noise;
    member.stream = substream(substream(noise.stream, kUnscaledTag), p);
    return observe(synthesize(member, op, grid), point);
  });
  const KsResult ks = ks_two_sample(rescaled, unscaled);
  return {ks.statistic, ks.p_value, ensemble};
}

double estimate_hurst(std::span<const PathGrid> ensemble, std::span<const double> t_grid) {
  if (ensemble.size() < 1000) throw InvalidParameter("estimate_hurst: need at least 1e3 paths");
  if (t_grid.size() < 8) throw InvalidParameter("estimate_hurst: need at least 8 time points");
  const GridSpec& grid = ensemble.front().grid;
  if (grid.dim != 1) throw InvalidParameter("estimate_hurst: 1-d paths only");
  std::vector<double> log_t, log_spread;
  std::vector<double> marginal(ensemble.size());
  for (double t : t_grid) {
    const double k = std::round(t / grid.step);
    if (!(k >= 1.0) || k > static_cast<double>(grid.n - 1)) {
      throw InvalidParameter("estimate_hurst: time point outside (0, extent]");
    }
    const auto index = static_cast<std::size_t>(k);
    for (std::size_t p = 0; p < ensemble.size(); ++p) {
      if (!(ensemble[p].grid == grid)) throw ShapeError("estimate_hurst: paths on different grids");
      marginal[p] = ensemble[p].at(index);
    }
    const double spread = quantile(marginal, 0.75) - quantile(marginal, 0.25);
    if (!(spread > 0.0)) throw DegenerateFit("estimate_hurst: zero interquartile range");
    log_t.push_back(std::log(k * grid.step));
    log_spread.push_back(std::log(spread));
  }
  return least_squares_line(log_t, log_spread).slope;
}

}  // namespace lvyscale
