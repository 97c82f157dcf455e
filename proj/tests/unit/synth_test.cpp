#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "lvyscale/errors.hpp"
#include "lvyscale/synth.hpp"

using namespace lvyscale;

namespace {

const NoiseSpec kNoise{LevyExponent::gaussian(), 21, 0};

std::vector<double> random_vector(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (double& x : v) x = normal(gen);
  return v;
}

}  // namespace

TEST_CASE("levy path is the running sum of its increments") {
  const GridSpec grid = GridSpec::line(0.01, 101);
  const PathGrid path = synth_levy_process(kNoise, grid);
  const auto w = sample_increment(kNoise, grid.cell_volume(), grid.cells());
  REQUIRE(path.raw.size() == 101);
  CHECK(path.raw[0] == 0.0);
  double sum = 0.0;
  for (std::size_t k = 1; k < 101; ++k) {
    sum += w[k - 1];
    CHECK(path.raw[k] == doctest::Approx(sum).epsilon(1e-12));
  }
  CHECK(path.values() == path.raw);
}

TEST_CASE("sheet is the double running sum with zero axes") {
  const GridSpec grid = GridSpec::plane(0.1, 6, 5);
  const PathGrid sheet = synth_levy_sheet(kNoise, grid);
  const auto w = sample_increment(kNoise, grid.cell_volume(), grid.cells());
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      double expected = 0.0;
      for (std::size_t a = 0; a < i; ++a) {
        for (std::size_t b = 0; b < j; ++b) expected += w[a * 4 + b];
      }
      CHECK(sheet.at(i, j) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("fractional weights and path") {
  const auto h = fractional_weights(1.5, 0.25, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(h[i] == doctest::Approx(std::pow(0.25, 0.5) * std::pow(i + 1.0, 0.5) /
                                  std::tgamma(1.5)));
  }
  const GridSpec grid = GridSpec::line(0.05, 40);
  const PathGrid path = synth_fractional_process(kNoise, 1.5, grid);
  const auto w = sample_increment(kNoise, grid.cell_volume(), grid.cells());
  const auto weights = fractional_weights(1.5, grid.step, grid.cells());
  CHECK(path.raw[0] == 0.0);
  for (std::size_t k = 1; k < grid.n; ++k) {
    double expected = 0.0;
    for (std::size_t j = 0; j < k; ++j) expected += weights[k - 1 - j] * w[j];
    CHECK(path.raw[k] == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(synth_fractional_process(kNoise, 1.0, grid).raw == synth_levy_process(kNoise, grid).raw);
}

TEST_CASE("operator orders and limit exponents") {
  CHECK(Operator::levy().hurst_for(2.0) == doctest::Approx(0.5));
  CHECK(Operator::levy().hurst_for(1.0) == doctest::Approx(1.0));
  CHECK(Operator::sheet().hurst_for(2.0) == doctest::Approx(1.0));
  CHECK(Operator::fractional(1.5).hurst_for(2.0) == doctest::Approx(1.0));
  CHECK(Operator::sheet().dimension() == 2);
  CHECK_THROWS_AS(Operator::fractional(0.0), InvalidParameter);
  CHECK_THROWS_AS(Operator::fractional(-1.0), InvalidParameter);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(GridSpec::line(0.0, 10).validate(), InvalidParameter);
  CHECK_THROWS_AS(GridSpec::line(0.1, 1).validate(), InvalidParameter);
  CHECK_THROWS_AS(GridSpec::plane(0.1, 4, 1).validate(), InvalidParameter);
  CHECK_THROWS_AS(synthesize(kNoise, Operator::sheet(), GridSpec::line(0.1, 10)),
                  InvalidParameter);
}

TEST_CASE("rescale factors") {
  CHECK(RescaleSpec::from_factor(4.0, 0.5).m == 4);
  CHECK(RescaleSpec::from_factor(4.0, 0.5).zoom_in);
  CHECK(RescaleSpec::from_factor(0.001, 0.5).m == 1000);
  CHECK_FALSE(RescaleSpec::from_factor(0.001, 0.5).zoom_in);
  CHECK(RescaleSpec::from_factor(0.2, 1.0).factor() == doctest::Approx(0.2));
  CHECK_THROWS_AS(RescaleSpec::from_factor(2.5, 0.5), InvalidParameter);
  CHECK_THROWS_AS(RescaleSpec::from_factor(0.0, 0.5), InvalidParameter);
}

TEST_CASE("zoom out subsamples, zoom in relabels") {
  const GridSpec grid = GridSpec::line(0.1, 21);
  const PathGrid path = synth_levy_process(kNoise, grid);
  const PathGrid out = rescale(path, RescaleSpec::from_factor(0.25, 0.5));
  CHECK(out.grid.n == 6);
  CHECK(out.grid.step == doctest::Approx(0.1));
  for (std::size_t k = 0; k < out.grid.n; ++k) {
    CHECK(out.at(k) == doctest::Approx(std::pow(0.25, 0.5) * path.raw[4 * k]));
  }
  const PathGrid in = rescale(path, RescaleSpec::from_factor(5.0, 0.5));
  CHECK(in.grid.n == 5);
  CHECK(in.grid.step == doctest::Approx(0.5));
  CHECK(in.at(3) == doctest::Approx(std::sqrt(5.0) * path.raw[3]));
}

TEST_CASE("rescale composes exactly") {
  const GridSpec grid = GridSpec::line(0.01, 601);
  const PathGrid path = synth_levy_process(kNoise, grid);
  for (double h : {0.5, 1.0, -0.3}) {
    const PathGrid twice =
        rescale(rescale(path, RescaleSpec::from_factor(0.5, h)), RescaleSpec::from_factor(1.0 / 3.0, h));
    const PathGrid once = rescale(path, RescaleSpec::from_factor(1.0 / 6.0, h));
    REQUIRE(twice.grid == once.grid);
    CHECK(twice.raw == once.raw);
    CHECK(twice.scaling.amplitude == doctest::Approx(once.scaling.amplitude).epsilon(1e-14));
    const PathGrid mixed =
        rescale(rescale(path, RescaleSpec::from_factor(4.0, h)), RescaleSpec::from_factor(0.5, h));
    const PathGrid net = rescale(path, RescaleSpec::from_factor(2.0, h));
    CHECK(mixed.at(10) == doctest::Approx(net.at(20)));
  }
}

TEST_CASE("rescale refuses to leave fewer than two points") {
  const PathGrid path = synth_levy_process(kNoise, GridSpec::line(0.1, 11));
  CHECK_NOTHROW(rescale(path, RescaleSpec::from_factor(0.1, 0.5)));
  bool thrown = false;
  try {
    rescale(path, RescaleSpec::from_factor(1.0 / 11.0, 0.5));
  } catch (const ExtentError& e) {
    thrown = true;
    CHECK(e.required() == 12);
  }
  CHECK(thrown);
  const PathGrid sheet = synth_levy_sheet(kNoise, GridSpec::plane(0.1, 9, 9));
  CHECK(rescale(sheet, RescaleSpec::from_factor(0.5, 1.0)).grid.m == 5);
}

TEST_CASE("test function pairing") {
  const PathGrid path = synth_levy_process(kNoise, GridSpec::line(0.1, 11));
  std::vector<double> ones(11, 1.0);
  CHECK(pair_test_function(path, ones) ==
        doctest::Approx(0.1 * std::accumulate(path.raw.begin(), path.raw.end(), 0.0)));
  CHECK_THROWS_AS(pair_test_function(path, std::vector<double>(10, 1.0)), ShapeError);
}

TEST_CASE("adjoint weights reproduce every linear functional") {
  std::mt19937_64 gen(5);
  const std::vector<std::pair<Operator, GridSpec>> cases = {
      {Operator::levy(), GridSpec::line(0.1, 33)},
      {Operator::fractional(0.7), GridSpec::line(0.1, 33)},
      {Operator::fractional(2.2), GridSpec::line(0.1, 33)},
      {Operator::sheet(), GridSpec::plane(0.1, 7, 9)},
  };
  for (const auto& [op, grid] : cases) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto v = random_vector(gen, grid.points());
      const auto w = random_vector(gen, grid.cells());
      const auto c = adjoint_weights(op, grid, v);
      const auto path = assemble_path(op, grid, w);
      const double lhs = std::inner_product(v.begin(), v.end(), path.begin(), 0.0);
      const double rhs = std::inner_product(c.begin(), c.end(), w.begin(), 0.0);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(adjoint_weights(Operator::levy(), GridSpec::line(0.1, 5), std::vector<double>(4)),
                  ShapeError);
}

TEST_CASE("synthesis is reproducible and stream dependent") {
  const GridSpec grid = GridSpec::line(0.01, 200);
  const NoiseSpec other{kNoise.exponent, kNoise.seed, 1};
  CHECK(synthesize(kNoise, Operator::levy(), grid).raw == synthesize(kNoise, Operator::levy(), grid).raw);
  CHECK(synthesize(kNoise, Operator::levy(), grid).raw != synthesize(other, Operator::levy(), grid).raw);
}
