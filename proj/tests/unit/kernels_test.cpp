#include <doctest.h>

#include <random>
#include <stdexcept>

#include "lvyscale/errors.hpp"
#include "lvyscale/kernels.hpp"
#include "lvyscale/synth.hpp"

using namespace lvyscale;

namespace {

std::vector<double> random_vector(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (double& x : v) x = normal(gen);
  return v;
}

}  // namespace

TEST_CASE("convolution kernels agree bit for bit") {
  std::mt19937_64 gen(1);
  for (std::size_t n : {1u, 7u, 300u, 2049u}) {
    const auto h = random_vector(gen, n + 3);
    const auto x = random_vector(gen, n);
    std::vector<double> a(n), b(n);
    kernels::serial::causal_convolution(h, x, a);
    kernels::omp::causal_convolution(h, x, b);
    CHECK(a == b);
  }
}

TEST_CASE("convolution against direct sums") {
  const std::vector<double> h = {1, 2, 3}, x = {1, -1, 2};
  std::vector<double> out(3);
  kernels::serial::causal_convolution(h, x, out);
  CHECK(out == std::vector<double>{1, 1, 3});
  std::vector<double> wrong(4);
  CHECK_THROWS_AS(kernels::omp::causal_convolution(h, x, wrong), ShapeError);
}

TEST_CASE("empirical cf kernels agree bit for bit") {
  std::mt19937_64 gen(2);
  const auto samples = random_vector(gen, 5000);
  const auto xi = random_vector(gen, 97);
  std::vector<std::complex<double>> a(xi.size()), b(xi.size()), c(xi.size());
  kernels::serial::empirical_cf(samples, xi, a);
  kernels::omp::empirical_cf(samples, xi, b);
  kernels::empirical_cf(Execution::parallel, samples, xi, c);
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("ensemble map is ordered and identical across executions") {
  const auto extract = [](std::size_t p) {
    NoiseSpec noise{LevyExponent::cauchy(), 3, substream(0, p)};
    return synthesize(noise, Operator::fractional(1.3), GridSpec::line(0.01, 65)).raw;
  };
  const auto a = kernels::ensemble_map(Execution::serial, 100, extract);
  const auto b = kernels::ensemble_map(Execution::parallel, 100, extract);
  CHECK(a == b);
  const auto index = kernels::omp::ensemble_map(1000, [](std::size_t p) { return p; });
  for (std::size_t p = 0; p < index.size(); ++p) REQUIRE(index[p] == p);
}

TEST_CASE("ensemble map forwards member failures") {
  const auto failing = [](std::size_t p) -> int {
    if (p == 37) throw std::runtime_error("member 37");
    return 0;
  };
  CHECK_THROWS_WITH(kernels::ensemble_map(Execution::parallel, 64, failing), "member 37");
  CHECK_THROWS_WITH(kernels::ensemble_map(Execution::serial, 64, failing), "member 37");
}

TEST_CASE("thread limit keeps results unchanged") {
  std::mt19937_64 gen(3);
  const auto h = random_vector(gen, 500);
  const auto x = random_vector(gen, 500);
  std::vector<double> a(500), b(500);
  kernels::set_thread_limit(1);
  kernels::omp::causal_convolution(h, x, a);
  kernels::set_thread_limit(0);
  kernels::omp::causal_convolution(h, x, b);
  CHECK(a == b);
}
