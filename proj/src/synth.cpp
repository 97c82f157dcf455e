#include "lvyscale/synth.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "lvyscale/errors.hpp"
#include "lvyscale/kernels.hpp"

namespace lvyscale {

void GridSpec::validate() const {
  if (dim != 1 && dim != 2) throw InvalidParameter("grid: dim must be 1 or 2");
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidParameter("grid: step must be > 0");
  if (n < 2) throw InvalidParameter("grid: need at least 2 points per axis");
  if (dim == 2 && m < 2) throw InvalidParameter("grid: need at least 2 points on the second axis");
}

Operator Operator::fractional(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidParameter("fractional operator: gamma must be > 0");
  }
  return {Kind::fractional, gamma};
}

double Operator::hurst_for(double beta) const {
  return order() + dimension() * (1.0 / beta - 1.0);
}

std::vector<double> PathGrid::values() const {
  std::vector<double> out(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) out[k] = scaling.amplitude * raw[k];
  return out;
}

std::vector<double> fractional_weights(double gamma, double step, std::size_t count) {
  std::vector<double> h(count);
  const double front = std::pow(step, gamma - 1.0) / std::tgamma(gamma);
  for (std::size_t i = 0; i < count; ++i) {
    h[i] = front * std::pow(static_cast<double>(i + 1), gamma - 1.0);
  }
  return h;
}

std::vector<double> assemble_path(const Operator& op, const GridSpec& grid,
                                  std::span<const double> increments) {
  grid.validate();
  if (grid.dim != op.dimension()) throw ShapeError("assemble_path: grid and operator dims differ");
  if (increments.size() != grid.cells()) throw ShapeError("assemble_path: wrong increment count");
  std::vector<double> raw(grid.points(), 0.0);
  switch (op.kind) {
    case Operator::Kind::levy:
      for (std::size_t k = 1; k < grid.n; ++k) raw[k] = raw[k - 1] + increments[k - 1];
      break;
    case Operator::Kind::sheet: {
      const std::size_t n = grid.n, m = grid.m;
      // Row i accumulates column sums of cells p < i.
      std::vector<double> column(m, 0.0);
      for (std::size_t i = 1; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 1; j < m; ++j) {
          row += increments[(i - 1) * (m - 1) + (j - 1)];
          column[j] += row;
          raw[i * m + j] = column[j];
        }
      }
      break;
    }
    case Operator::Kind::fractional: {
      const auto h = fractional_weights(op.gamma, grid.step, grid.n - 1);
      kernels::serial::causal_convolution(h, increments, std::span(raw).subspan(1));
      break;
    }
  }
  return raw;
}

namespace {

PathGrid synth_with(const NoiseSpec& noise, const Operator& op, const GridSpec& grid,
                    const LayeredSamplerConfig& layered) {
  grid.validate();
  if (grid.dim != op.dimension()) {
    throw InvalidParameter("synthesize: operator needs a " + std::to_string(op.dimension()) +
                           "-d grid");
  }
  const IncrementSampler sampler(noise.exponent, layered);
  Rng rng(noise.seed, noise.stream);
  std::vector<double> increments(grid.cells());
  sampler.fill(rng, grid.cell_volume(), increments);
  PathGrid path;
  path.grid = grid;
  path.raw = assemble_path(op, grid, increments);
  path.noise = noise;
  path.op = op;
  return path;
}

}  // namespace

PathGrid synth_levy_process(const NoiseSpec& noise, const GridSpec& grid,
                            const LayeredSamplerConfig& layered) {
  return synth_with(noise, Operator::levy(), grid, layered);
}

PathGrid synth_levy_sheet(const NoiseSpec& noise, const GridSpec& grid,
                          const LayeredSamplerConfig& layered) {
  return synth_with(noise, Operator::sheet(), grid, layered);
}

PathGrid synth_fractional_process(const NoiseSpec& noise, double gamma, const GridSpec& grid,
                                  const LayeredSamplerConfig& layered) {
  const Operator op = Operator::fractional(gamma);
  if (gamma == 1.0) return synth_levy_process(noise, grid, layered);
  return synth_with(noise, op, grid, layered);
}

PathGrid synthesize(const NoiseSpec& noise, const Operator& op, const GridSpec& grid,
                    const LayeredSamplerConfig& layered) {
  switch (op.kind) {
    case Operator::Kind::levy:
      return synth_levy_process(noise, grid, layered);
    case Operator::Kind::sheet:
      return synth_levy_sheet(noise, grid, layered);
    case Operator::Kind::fractional:
      return synth_fractional_process(noise, op.gamma, grid, layered);
  }
  throw InvalidParameter("synthesize: unknown operator");
}

RescaleSpec RescaleSpec::from_factor(double a, double hurst) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidParameter("rescale: a must be > 0");
  const bool zoom_in = a >= 1.0;
  const double ratio = zoom_in ? a : 1.0 / a;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * ratio) {
    throw InvalidParameter("rescale: a must be an integer m or 1/m on the grid");
  }
  return {static_cast<std::uint64_t>(rounded), zoom_in, hurst};
}

double RescaleSpec::factor() const {
  return zoom_in ? static_cast<double>(m) : 1.0 / static_cast<double>(m);
}

PathGrid rescale(const PathGrid& path, const RescaleSpec& spec) {
  if (spec.m == 0) throw InvalidParameter("rescale: m must be >= 1");
  const std::size_t m = spec.m;
  GridSpec out_grid = path.grid;
  out_grid.n = (path.grid.n - 1) / m + 1;
  if (path.grid.dim == 2) out_grid.m = (path.grid.m - 1) / m + 1;
  if (out_grid.n < 2 || (out_grid.dim == 2 && out_grid.m < 2)) {
    throw ExtentError("rescale: source grid too short for ratio " + std::to_string(m), m + 1);
  }
  // Zoom out reads source index k*m at the same step; zoom in reads index k
  // and relabels the step.
  const std::size_t stride = spec.zoom_in ? 1 : m;
  if (spec.zoom_in) out_grid.step = path.grid.step * static_cast<double>(m);

  PathGrid out;
  out.grid = out_grid;
  out.noise = path.noise;
  out.op = path.op;
  out.raw.resize(out_grid.points());
  if (out_grid.dim == 1) {
    for (std::size_t k = 0; k < out_grid.n; ++k) out.raw[k] = path.raw[k * stride];
  } else {
    for (std::size_t i = 0; i < out_grid.n; ++i) {
      for (std::size_t j = 0; j < out_grid.m; ++j) {
        out.raw[i * out_grid.m + j] = path.raw[(i * stride) * path.grid.m + j * stride];
      }
    }
  }

  Scaling s = path.scaling;
  const bool fresh = s.num == 1 && s.den == 1;
  (spec.zoom_in ? s.num : s.den) *= m;
  const std::uint64_t g = std::gcd(s.num, s.den);
  s.num /= g;
  s.den /= g;
  if (fresh || s.hurst == spec.hurst) {
    s.hurst = spec.hurst;
    s.amplitude = std::pow(static_cast<double>(s.num) / static_cast<double>(s.den), s.hurst);
  } else {
    s.hurst = std::nan("");
    s.amplitude = path.scaling.amplitude * std::pow(spec.factor(), spec.hurst);
  }
  out.scaling = s;
  return out;
}

double pair_test_function(const PathGrid& path, std::span<const double> phi) {
  if (phi.size() != path.raw.size()) {
    throw ShapeError("pair_test_function: phi has " + std::to_string(phi.size()) +
                     " samples, path has " + std::to_string(path.raw.size()));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < phi.size(); ++k) sum += path.raw[k] * phi[k];
  const double measure = path.grid.dim == 1 ? path.grid.step : path.grid.step * path.grid.step;
  return measure * path.scaling.amplitude * sum;
}

std::vector<double> adjoint_weights(const Operator& op, const GridSpec& grid,
                                    std::span<const double> weights) {
  grid.validate();
  if (weights.size() != grid.points()) throw ShapeError("adjoint_weights: weights off-grid");
  std::vector<double> c(grid.cells(), 0.0);
  switch (op.kind) {
    case Operator::Kind::levy: {
      double suffix = 0.0;
      for (std::size_t k = grid.n - 1; k >= 1; --k) {
        suffix += weights[k];
        c[k - 1] = suffix;
      }
      break;
    }
    case Operator::Kind::sheet: {
      const std::size_t n = grid.n, m = grid.m;
      // c[p][q] = sum over i > p, j > q of weights[i][j].
      std::vector<double> column(m, 0.0);
      for (std::size_t i = n - 1; i >= 1; --i) {
        double row = 0.0;
        for (std::size_t j = m - 1; j >= 1; --j) {
          row += weights[i * m + j];
          column[j] += row;
          c[(i - 1) * (m - 1) + (j - 1)] = column[j];
        }
      }
      break;
    }
    case Operator::Kind::fractional: {
      const auto h = fractional_weights(op.gamma, grid.step, grid.n - 1);
      for (std::size_t j = 0; j + 1 < grid.n; ++j) {
        double sum = 0.0;
        for (std::size_t k = j + 1; k < grid.n; ++k) sum += weights[k] * h[k - 1 - j];
        c[j] = sum;
      }
      break;
    }
  }
  return c;
}

}  // namespace lvyscale
