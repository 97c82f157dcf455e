#include "lvyscale/kernels.hpp"

#include <omp.h>

#include <cmath>

#include "lvyscale/errors.hpp"

namespace lvyscale::kernels {

namespace {

void check_convolution(std::span<const double> h, std::span<const double> x,
                       std::span<double> out) {
  if (x.size() != out.size() || h.size() < out.size()) {
    throw ShapeError("causal_convolution: need |x| == |out| <= |h|");
  }
}

double convolve_at(std::span<const double> h, std::span<const double> x, std::size_t i) {
  double sum = 0.0;
  for (std::size_t j = 0; j <= i; ++j) sum += h[i - j] * x[j];
  return sum;
}

std::complex<double> ecf_at(std::span<const double> samples, double xi) {
  double re = 0.0, im = 0.0;
  for (double x : samples) {
    re += std::cos(xi * x);
    im += std::sin(xi * x);
  }
  const double n = static_cast<double>(samples.size());
  return {re / n, im / n};
}

}  // namespace

namespace serial {

void causal_convolution(std::span<const double> h, std::span<const double> x,
                        std::span<double> out) {
  check_convolution(h, x, out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = convolve_at(h, x, i);
}

void empirical_cf(std::span<const double> samples, std::span<const double> xi,
                  std::span<std::complex<double>> out) {
  if (xi.size() != out.size()) throw ShapeError("empirical_cf: output size mismatch");
  for (std::size_t r = 0; r < xi.size(); ++r) out[r] = ecf_at(samples, xi[r]);
}

}  // namespace serial

namespace omp {

void causal_convolution(std::span<const double> h, std::span<const double> x,
                        std::span<double> out) {
  check_convolution(h, x, out);
  const auto count = static_cast<long long>(out.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long long i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = convolve_at(h, x, static_cast<std::size_t>(i));
  }
}

void empirical_cf(std::span<const double> samples, std::span<const double> xi,
                  std::span<std::complex<double>> out) {
  if (xi.size() != out.size()) throw ShapeError("empirical_cf: output size mismatch");
  const auto count = static_cast<long long>(xi.size());
#pragma omp parallel for schedule(static)
  for (long long r = 0; r < count; ++r) {
    out[static_cast<std::size_t>(r)] = ecf_at(samples, xi[static_cast<std::size_t>(r)]);
  }
}

}  // namespace omp

void empirical_cf(Execution exec, std::span<const double> samples, std::span<const double> xi,
                  std::span<std::complex<double>> out) {
  if (exec == Execution::parallel) {
    omp::empirical_cf(samples, xi, out);
  } else {
    serial::empirical_cf(samples, xi, out);
  }
}

void set_thread_limit(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

}  // namespace lvyscale::kernels
