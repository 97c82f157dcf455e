#pragma once

#include <array>
#include <cstdint>

namespace lvyscale {

using PhiloxBlock = std::array<std::uint64_t, 4>;
using PhiloxKey = std::array<std::uint64_t, 2>;

/// Philox4x64-10 block function (Salmon et al., SC'11). Pure function of
/// (counter, key); matches numpy.random.Philox word for word.
PhiloxBlock philox4x64(PhiloxBlock counter, PhiloxKey key);

/// Mixes a stream index with a member index into a fresh stream index.
/// Used to give every ensemble member its own substream.
std::uint64_t substream(std::uint64_t stream, std::uint64_t member);

/// Counter-based generator. The key is (seed, stream) and the counter is the
/// block index, so (seed, stream, draw index) -> value is a pure function and
/// distinct streams never overlap.
///
/// Variate transforms are implemented here rather than taken from <random>:
/// the standard distributions are implementation-defined and would break
/// cross-platform reproducibility.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  double normal();
  double exponential();
  /// Gamma(shape, scale = 1). Marsaglia-Tsang, with the shape < 1 boost.
  double gamma(double shape);
  /// Poisson(mean). Multiplication method below 10, PTRS above.
  std::uint64_t poisson(double mean);

  std::uint64_t seed() const { return key_[0]; }
  std::uint64_t stream() const { return key_[1]; }

 private:
  PhiloxKey key_;
  std::uint64_t block_ = 0;
  PhiloxBlock buffer_{};
  int position_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace lvyscale
