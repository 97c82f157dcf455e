#include "lvyscale/sampler.hpp"

#include <cmath>
#include <numbers>

#include "lvyscale/errors.hpp"
#include "lvyscale/stats.hpp"

namespace lvyscale {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double stable_draw(Rng& rng, const StableParams& s, double volume) {
  return std::pow(s.scale * volume, 1.0 / s.alpha) * standard_stable(rng, s.alpha);
}

// Sum of k i.i.d. jumps, using closure of both jump laws under convolution.
double jump_sum(Rng& rng, const JumpLaw& jump, std::uint64_t k) {
  if (k == 0) return 0.0;
  const double count = static_cast<double>(k);
  return std::visit(Overloaded{[&](const GaussianParams& g) {
                                 return std::sqrt(g.variance * count) * rng.normal();
                               },
                               [&](const StableParams& s) { return stable_draw(rng, s, count); }},
                    jump);
}

double random_sign(Rng& rng) { return (rng.next_u64() >> 63) ? -1.0 : 1.0; }

double layered_draw(Rng& rng, const LayeredStableParams& p, const LayeredSamplerConfig& cfg,
                    double volume) {
  double total = 0.0;
  // |t| > 1: mass 2/beta, P(|T| > x) = x^{-beta}.
  const std::uint64_t outer = rng.poisson(volume * 2.0 / p.beta);
  for (std::uint64_t i = 0; i < outer; ++i) {
    total += random_sign(rng) * std::pow(rng.uniform(), -1.0 / p.beta);
  }
  // eps < |t| <= 1: mass (2/alpha)(eps^{-alpha} - 1), inverse CDF of t^{-alpha-1}.
  const double eps_pow = std::pow(cfg.epsilon, -p.alpha);
  if (cfg.epsilon < 1.0) {
    const std::uint64_t mid = rng.poisson(volume * (2.0 / p.alpha) * (eps_pow - 1.0));
    for (std::uint64_t i = 0; i < mid; ++i) {
      const double u = rng.uniform();
      total += random_sign(rng) * std::pow(eps_pow - u * (eps_pow - 1.0), -1.0 / p.alpha);
    }
  }
  // |t| <= eps: second moment 2 eps^{2-alpha} / (2 - alpha).
  if (cfg.gaussian_compensation) {
    const double variance = volume * 2.0 * std::pow(cfg.epsilon, 2.0 - p.alpha) / (2.0 - p.alpha);
    total += std::sqrt(variance) * rng.normal();
  }
  return total;
}

double draw_one(Rng& rng, const LevyExponent& exponent, const LayeredSamplerConfig& cfg,
                double volume) {
  return std::visit(
      Overloaded{
          [&](const GaussianParams& g) { return std::sqrt(g.variance * volume) * rng.normal(); },
          [&](const StableParams& s) { return stable_draw(rng, s, volume); },
          [&](const GeneralizedLaplaceParams& l) {
            // sqrt(2G) Z with G ~ Gamma(c vol) has cf (1 + xi^2)^{-c vol}.
            const double g = rng.gamma(l.c * volume);
            return std::sqrt(2.0 * g) * rng.normal();
          },
          [&](const CompoundPoissonParams& cp) {
            return jump_sum(rng, cp.jump, rng.poisson(cp.rate * volume));
          },
          [&](const LayeredStableParams& l) { return layered_draw(rng, l, cfg, volume); },
          [&](const SumParams& s) {
            double total = 0.0;
            for (const auto& term : s.terms) total += draw_one(rng, term, cfg, volume);
            return total;
          },
      },
      exponent.params());
}

}  // namespace

double standard_stable(Rng& rng, double alpha) {
  const double v = std::numbers::pi * (rng.uniform() - 0.5);
  if (alpha == 1.0) return std::tan(v);
  const double w = rng.exponential();
  const double cos_v = std::cos(v);
  if (alpha == 2.0) return 2.0 * std::sin(v) * std::sqrt(w);
  return std::sin(alpha * v) / std::pow(cos_v, 1.0 / alpha) *
         std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
}

IncrementSampler::IncrementSampler(LevyExponent exponent, LayeredSamplerConfig layered)
    : exponent_(std::move(exponent)), layered_(layered) {
  if (!(layered_.epsilon > 0.0 && layered_.epsilon <= 1.0)) {
    throw InvalidParameter("layered sampler: epsilon must lie in (0, 1]");
  }
}

double IncrementSampler::draw(Rng& rng, double volume) const {
  return draw_one(rng, exponent_, layered_, volume);
}

void IncrementSampler::fill(Rng& rng, double volume, std::vector<double>& out) const {
  for (double& x : out) x = draw_one(rng, exponent_, layered_, volume);
}

std::vector<double> sample_increment(const NoiseSpec& spec, double volume, std::size_t n,
                                     const LayeredSamplerConfig& layered) {
  if (!(volume > 0.0) || !std::isfinite(volume)) {
    throw InvalidParameter("sample_increment: volume must be > 0");
  }
  if (n == 0) throw InvalidParameter("sample_increment: n must be >= 1");
  const IncrementSampler sampler(spec.exponent, layered);
  Rng rng(spec.seed, spec.stream);
  std::vector<double> out(n);
  sampler.fill(rng, volume, out);
  return out;
}

DistanceReport divisibility_check(const NoiseSpec& spec, double volume, int k, std::size_t n,
                                  const LayeredSamplerConfig& layered) {
  if (k < 2) throw InvalidParameter("divisibility_check: k must be >= 2");
  if (n < 10000) throw InvalidParameter("divisibility_check: n must be >= 1e4");
  const IncrementSampler sampler(spec.exponent, layered);
  Rng whole_rng(spec.seed, substream(spec.stream, 0));
  Rng parts_rng(spec.seed, substream(spec.stream, 1));
  std::vector<double> whole(n), parts(n);
  for (std::size_t i = 0; i < n; ++i) {
    whole[i] = sampler.draw(whole_rng, volume);
    double sum = 0.0;
    for (int j = 0; j < k; ++j) sum += sampler.draw(parts_rng, volume / k);
    parts[i] = sum;
  }
  const KsResult ks = ks_two_sample(whole, parts);
  return {ks.statistic, ks.p_value, n};
}

}  // namespace lvyscale
