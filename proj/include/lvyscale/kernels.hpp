#pragma once

// Data-parallel inner loops. Each kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::omp; the two produce
// bit-identical results because work is split across independent outputs,
// never across a reduction.

#include <complex>
#include <cstddef>
#include <exception>
#include <span>
#include <type_traits>
#include <vector>

namespace lvyscale {

enum class Execution { serial, parallel };

namespace kernels {

template <class Extract>
using MapResult = std::vector<std::invoke_result_t<Extract&, std::size_t>>;

namespace serial {

/// out[i] = sum_{j <= i} h[i - j] x[j].
void causal_convolution(std::span<const double> h, std::span<const double> x,
                        std::span<double> out);

/// out[r] = (1/n) sum_k exp(i xi[r] samples[k]).
void empirical_cf(std::span<const double> samples, std::span<const double> xi,
                  std::span<std::complex<double>> out);

/// rows[p] = extract(p) for p < members.
template <class Extract>
MapResult<Extract> ensemble_map(std::size_t members, Extract&& extract) {
  MapResult<Extract> rows(members);
  for (std::size_t p = 0; p < members; ++p) rows[p] = extract(p);
  return rows;
}

}  // namespace serial

namespace omp {

void causal_convolution(std::span<const double> h, std::span<const double> x,
                        std::span<double> out);

void empirical_cf(std::span<const double> samples, std::span<const double> xi,
                  std::span<std::complex<double>> out);

template <class Extract>
MapResult<Extract> ensemble_map(std::size_t members, Extract&& extract) {
  MapResult<Extract> rows(members);
  std::exception_ptr failure;
  const auto count = static_cast<long long>(members);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long p = 0; p < count; ++p) {
    try {
      rows[static_cast<std::size_t>(p)] = extract(static_cast<std::size_t>(p));
    } catch (...) {
#pragma omp critical(lvyscale_ensemble_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace omp

template <class Extract>
MapResult<Extract> ensemble_map(Execution exec, std::size_t members, Extract&& extract) {
  return exec == Execution::parallel ? omp::ensemble_map(members, extract)
                                     : serial::ensemble_map(members, extract);
}

void empirical_cf(Execution exec, std::span<const double> samples, std::span<const double> xi,
                  std::span<std::complex<double>> out);

/// Caps the OpenMP worker count; 0 leaves the runtime default.
void set_thread_limit(int threads);

}  // namespace kernels
}  // namespace lvyscale
