#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lvyscale/exponent.hpp"
#include "lvyscale/rng.hpp"

namespace lvyscale {

/// A white noise together with the random stream that realizes it.
struct NoiseSpec {
  LevyExponent exponent = LevyExponent::gaussian();
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Discretization of the layered-stable Levy measure: jumps with
/// |t| <= epsilon are dropped or replaced by a matching Gaussian.
struct LayeredSamplerConfig {
  double epsilon = 1e-3;
  bool gaussian_compensation = true;
};

/// Draws cell increments <w, 1_A>, whose characteristic function is
/// exp(vol(A) Psi(xi)). Exact for every family except layered stable.
class IncrementSampler {
 public:
  explicit IncrementSampler(LevyExponent exponent, LayeredSamplerConfig layered = {});

  double draw(Rng& rng, double volume) const;
  void fill(Rng& rng, double volume, std::vector<double>& out) const;

  const LevyExponent& exponent() const { return exponent_; }
  const LayeredSamplerConfig& layered_config() const { return layered_; }

 private:
  LevyExponent exponent_;
  LayeredSamplerConfig layered_;
};

/// n independent increments of a cell of the given volume, from the
/// (seed, stream) of the spec.
std::vector<double> sample_increment(const NoiseSpec& spec, double volume, std::size_t n,
                                     const LayeredSamplerConfig& layered = {});

/// Standard symmetric alpha-stable variate, cf exp(-|xi|^alpha), by
/// Chambers-Mallows-Stuck.
double standard_stable(Rng& rng, double alpha);

struct DistanceReport {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

/// Two-sample KS between n draws at `volume` and n sums of k draws at volume / k.
DistanceReport divisibility_check(const NoiseSpec& spec, double volume, int k, std::size_t n,
                                  const LayeredSamplerConfig& layered = {});

}  // namespace lvyscale
