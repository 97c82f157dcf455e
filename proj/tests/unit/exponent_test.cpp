#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lvyscale/errors.hpp"
#include "lvyscale/exponent.hpp"
#include "lvyscale/exponent_text.hpp"

using namespace lvyscale;

namespace {

constexpr double kPi = std::numbers::pi;

// Integral of (1 - cos x) / |x|^{s+1} over the real line, closed form.
double stable_constant(double s) {
  return kPi / (std::tgamma(s + 1.0) * std::sin(kPi * s / 2.0));
}

// sum_k (-1)^{k+1} x^{2k} / ((2k)! (2k - s)) = integral over [0, 1] of (1 - cos xt) t^{-s-1}.
double cosine_series(double s, double x) {
  double total = 0.0;
  double power = 1.0;  // x^{2k} / (2k)!
  for (int k = 1; k < 200; ++k) {
    power *= x * x / ((2.0 * k - 1.0) * (2.0 * k));
    const double term = power / (2.0 * k - s);
    total += (k % 2 == 1) ? term : -term;
    if (term < 1e-18 * std::abs(total)) break;
  }
  return total;
}

// Layered exponent from the series above; independent of the quadrature path.
double layered_oracle(double alpha, double beta, double xi) {
  const double x = std::abs(xi);
  const double upper_beta = 0.5 * stable_constant(beta) * std::pow(x, beta) - cosine_series(beta, x);
  return -2.0 * (cosine_series(alpha, x) + upper_beta);
}

// Hand-rolled generator of valid exponents.
LevyExponent random_exponent(std::mt19937_64& gen, int depth = 0) {
  std::uniform_real_distribution<double> index(0.05, 1.95), positive(0.1, 3.0);
  std::uniform_int_distribution<int> pick(0, depth == 0 ? 6 : 5);
  switch (pick(gen)) {
    case 0:
      return LevyExponent::gaussian(positive(gen));
    case 1:
      return LevyExponent::stable(index(gen), positive(gen));
    case 2:
      return LevyExponent::generalized_laplace(positive(gen));
    case 3:
      return LevyExponent::compound_poisson(positive(gen), GaussianParams{positive(gen)});
    case 4:
      return LevyExponent::compound_poisson(positive(gen), StableParams{index(gen), positive(gen)});
    case 5:
      return LevyExponent::layered_stable(index(gen), index(gen));
    default:
      return LevyExponent::sum({random_exponent(gen, 1), random_exponent(gen, 1)});
  }
}

}  // namespace

TEST_CASE("closed-form exponents") {
  CHECK(LevyExponent::gaussian(2.0).psi(3.0) == doctest::Approx(-9.0));
  CHECK(LevyExponent::stable(0.5, 2.0).psi(-4.0) == doctest::Approx(-4.0));
  CHECK(LevyExponent::cauchy(1.5).psi(2.0) == doctest::Approx(-3.0));
  CHECK(LevyExponent::generalized_laplace(0.5).psi(1.0) == doctest::Approx(-0.5 * std::log(2.0)));
  CHECK(LevyExponent::compound_poisson(2.0, GaussianParams{1.0}).psi(1.0) ==
        doctest::Approx(2.0 * (std::exp(-0.5) - 1.0)));
  CHECK(LevyExponent::compound_poisson(1.0, StableParams{1.0, 1.0}).psi(2.0) ==
        doctest::Approx(std::exp(-2.0) - 1.0));
  const auto s = LevyExponent::sum({LevyExponent::gaussian(1.0), LevyExponent::cauchy(1.0)});
  CHECK(s.psi(2.0) == doctest::Approx(-2.0 - 2.0));
  CHECK(eval_psi(s, 2.0) == s.psi(2.0));
}

TEST_CASE("compound poisson stays accurate at tiny arguments") {
  const auto e = LevyExponent::compound_poisson(1.0, GaussianParams{1.0});
  CHECK(e.psi(1e-9) == doctest::Approx(-0.5e-18).epsilon(1e-9));
}

TEST_CASE("layered exponent agrees with the series oracle") {
  for (auto [alpha, beta] : {std::pair{0.7, 1.5}, {1.5, 0.7}, {1.0, 1.0}, {0.3, 1.9}, {1.2, 0.4}}) {
    const auto e = LevyExponent::layered_stable(alpha, beta);
    for (double xi : {1e-6, 1e-3, 0.05, 0.5, 1.0, 2.5, 7.0}) {
      CAPTURE(alpha);
      CAPTURE(beta);
      CAPTURE(xi);
      const double expected = layered_oracle(alpha, beta, xi);
      CHECK(e.psi(xi) == doctest::Approx(expected).epsilon(1e-9));
      CHECK(e.psi(-xi) == e.psi(xi));
    }
  }
}

TEST_CASE("layered exponent at large arguments") {
  // Psi + C(alpha)|xi|^alpha -> 2/alpha - 2/beta, with an O(1/xi) oscillation.
  for (auto [alpha, beta] : {std::pair{0.7, 1.5}, {1.5, 0.7}}) {
    const auto e = LevyExponent::layered_stable(alpha, beta);
    for (double xi : {1e4, 1e6}) {
      const double rest = e.psi(xi) + stable_constant(alpha) * std::pow(xi, alpha);
      CHECK(rest == doctest::Approx(2.0 / alpha - 2.0 / beta).epsilon(1e-3));
    }
  }
}

TEST_CASE("stable measure constant against the closed form") {
  for (double s : {0.1, 0.5, 0.7, 1.0, 1.3, 1.5, 1.9}) {
    CAPTURE(s);
    CHECK(stable_measure_constant(s) == doctest::Approx(stable_constant(s)).epsilon(1e-9));
  }
  const auto k = layered_asymptotic_constants(0.7, 1.5);
  CHECK(k.c0 == doctest::Approx(stable_constant(1.5)).epsilon(1e-9));
  CHECK(k.cinf == doctest::Approx(stable_constant(0.7)).epsilon(1e-9));
  CHECK_THROWS_AS(stable_measure_constant(2.0), InvalidParameter);
  CHECK_THROWS_AS(layered_asymptotic_constants(0.0, 1.0), InvalidParameter);
}

TEST_CASE("exponents are even, nonpositive and vanish at zero") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> magnitude(-6.0, 6.0);
  for (int trial = 0; trial < 200; ++trial) {
    const LevyExponent e = random_exponent(gen);
    CAPTURE(to_string(e));
    CHECK(e.psi(0.0) == 0.0);
    for (int k = 0; k < 5; ++k) {
      const double xi = std::pow(10.0, magnitude(gen));
      const double v = e.psi(xi);
      CHECK(v <= 0.0);
      CHECK(std::isfinite(v));
      CHECK(e.psi(-xi) == v);
    }
  }
}

TEST_CASE("parameter domains are enforced") {
  CHECK_THROWS_AS(LevyExponent::gaussian(0.0), InvalidParameter);
  CHECK_THROWS_AS(LevyExponent::gaussian(std::nan("")), InvalidParameter);
  CHECK_THROWS_AS(LevyExponent::stable(0.0), InvalidParameter);
  CHECK_THROWS_AS(LevyExponent::stable(2.1), InvalidParameter);
  CHECK_THROWS_AS(LevyExponent::stable(1.0, -1.0), InvalidParameter);
  CHECK_THROWS_AS(LevyExponent::generalized_laplace(-0.5), InvalidParameter);
  CHECK_THROWS_AS(LevyExponent::compound_poisson(0.0, GaussianParams{1.0}), InvalidParameter);
  CHECK_THROWS_AS(LevyExponent::compound_poisson(1.0, StableParams{3.0, 1.0}), InvalidParameter);
  CHECK_THROWS_AS(LevyExponent::layered_stable(2.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(LevyExponent::layered_stable(1.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(LevyExponent::sum({}), InvalidParameter);
  CHECK_NOTHROW(LevyExponent::stable(2.0));
}

TEST_CASE("theoretical indices per family") {
  CHECK(theoretical_indices(LevyExponent::gaussian()) == IndexPair{2.0, 2.0});
  CHECK(theoretical_indices(LevyExponent::stable(0.6)) == IndexPair{0.6, 0.6});
  CHECK(theoretical_indices(LevyExponent::cauchy()) == IndexPair{1.0, 1.0});
  CHECK(theoretical_indices(LevyExponent::generalized_laplace()) == IndexPair{2.0, 0.0});
  CHECK(theoretical_indices(LevyExponent::compound_poisson(1.0, GaussianParams{})) ==
        IndexPair{2.0, 0.0});
  CHECK(theoretical_indices(LevyExponent::compound_poisson(1.0, StableParams{0.8, 1.0})) ==
        IndexPair{0.8, 0.0});
  CHECK(theoretical_indices(LevyExponent::layered_stable(0.7, 1.5)) == IndexPair{1.5, 0.7});
  CHECK(theoretical_indices(LevyExponent::sum({LevyExponent::gaussian(), LevyExponent::cauchy()})) ==
        IndexPair{1.0, 2.0});
}

TEST_CASE("leading coefficients") {
  CHECK(leading_coefficient(LevyExponent::gaussian(3.0), End::zero) == doctest::Approx(1.5));
  CHECK(leading_coefficient(LevyExponent::stable(1.2, 0.4), End::infinity) == doctest::Approx(0.4));
  CHECK(leading_coefficient(LevyExponent::generalized_laplace(0.5), End::zero) ==
        doctest::Approx(0.5));
  CHECK(leading_coefficient(LevyExponent::compound_poisson(2.0, GaussianParams{3.0}), End::zero) ==
        doctest::Approx(3.0));
  CHECK(leading_coefficient(LevyExponent::layered_stable(0.7, 1.5), End::zero) ==
        doctest::Approx(stable_constant(1.5)).epsilon(1e-9));
  CHECK(leading_coefficient(LevyExponent::layered_stable(0.7, 1.5), End::infinity) ==
        doctest::Approx(stable_constant(0.7)).epsilon(1e-9));
  const auto s = LevyExponent::sum({LevyExponent::gaussian(1.0), LevyExponent::cauchy(2.0)});
  CHECK(leading_coefficient(s, End::zero) == doctest::Approx(2.0));
  CHECK(leading_coefficient(s, End::infinity) == doctest::Approx(0.5));
  CHECK_THROWS_AS(leading_coefficient(LevyExponent::generalized_laplace(), End::infinity),
                  MisuseError);
}

TEST_CASE("leading coefficient describes the fitted power law") {
  std::mt19937_64 gen(29);
  for (int trial = 0; trial < 60; ++trial) {
    const LevyExponent e = random_exponent(gen);
    const IndexPair theory = theoretical_indices(e);
    // The correction term is O(xi^{2 - beta0}) relative for these two.
    if (e.family() == Family::sum) continue;
    if (e.family() == Family::layered_stable && theory.beta0 > 1.5) continue;
    CAPTURE(to_string(e));
    const double xi = 1e-7;
    const double c = leading_coefficient(e, End::zero);
    CHECK(-e.psi(xi) / std::pow(xi, theory.beta0) == doctest::Approx(c).epsilon(0.02));
  }
}

TEST_CASE("index fits recover the theoretical indices") {
  for (const auto& e : {LevyExponent::gaussian(), LevyExponent::stable(0.5), LevyExponent::stable(1.5),
                        LevyExponent::layered_stable(0.7, 1.5), LevyExponent::layered_stable(1.6, 0.3),
                        LevyExponent::compound_poisson(1.0, StableParams{1.2, 1.0})}) {
    CAPTURE(to_string(e));
    const IndexPair theory = theoretical_indices(e);
    CHECK(estimate_index(e, End::zero, default_index_grid(End::zero)) ==
          doctest::Approx(theory.beta0).epsilon(0.02));
    const IndexFit inf = fit_index(e, End::infinity, default_index_grid(End::infinity));
    if (theory.beta_inf > 0.0) {
      CHECK(inf.slope == doctest::Approx(theory.beta_inf).epsilon(0.02));
    } else {
      CHECK(inf.slope < 0.1);
    }
  }
}

TEST_CASE("index fit preconditions") {
  const auto g = LevyExponent::gaussian();
  CHECK_THROWS_AS(fit_index(g, End::zero, log_grid(1e-6, 1e-3, 7)), InvalidParameter);
  CHECK_THROWS_AS(fit_index(g, End::zero, log_grid(1e-3, 1.0, 16)), InvalidParameter);
  CHECK_THROWS_AS(fit_index(g, End::infinity, log_grid(1.0, 1e4, 16)), InvalidParameter);
  CHECK_THROWS_AS(fit_index(g, End::zero, log_grid(1e-200, 1e-170, 16)), DegenerateFit);
  CHECK_THROWS_AS(log_grid(1.0, 1.0, 4), InvalidParameter);
  const auto grid = log_grid(1e-2, 1e2, 5);
  CHECK(grid.front() == doctest::Approx(1e-2));
  CHECK(grid[2] == doctest::Approx(1.0));
  CHECK(grid.back() == doctest::Approx(1e2));
}

TEST_CASE("p-admissibility") {
  auto grid = log_grid(1e-4, 1e-2, 8);
  const auto upper = log_grid(1e2, 1e4, 8);
  grid.insert(grid.end(), upper.begin(), upper.end());
  const auto g = LevyExponent::gaussian(2.0);
  const auto cert = is_p_admissible(g, 2.0, grid);
  CHECK(cert.admissible);
  CHECK(cert.constant == doctest::Approx(1.0));
  CHECK_FALSE(cert.witness);
  const auto too_small = is_p_admissible(g, 1.0, grid);
  CHECK_FALSE(too_small.admissible);
  CHECK(too_small.witness == doctest::Approx(1e4));
  const auto cauchy = is_p_admissible(LevyExponent::cauchy(), 1.5, grid);
  CHECK_FALSE(cauchy.admissible);
  CHECK(cauchy.witness == doctest::Approx(1e-4));
  CHECK(is_p_admissible(LevyExponent::layered_stable(0.7, 1.5), 0.7, upper).admissible);
  CHECK_THROWS_AS(is_p_admissible(g, 0.0, grid), InvalidParameter);
}

TEST_CASE("noise text round trip") {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 100; ++trial) {
    const LevyExponent e = random_exponent(gen);
    const std::string text = to_string(e);
    CAPTURE(text);
    CHECK(parse_exponent(text) == e);
  }
}

TEST_CASE("noise text aliases and errors") {
  CHECK(parse_exponent("cauchy") == LevyExponent::cauchy());
  CHECK(parse_exponent("laplace(c=2)") == LevyExponent::generalized_laplace(2.0));
  CHECK(parse_exponent("poisson-cauchy") ==
        LevyExponent::compound_poisson(1.0, StableParams{1.0, 1.0}));
  CHECK(parse_exponent(" sum( gaussian , cauchy ) ") ==
        LevyExponent::sum({LevyExponent::gaussian(), LevyExponent::cauchy()}));
  CHECK(make_exponent("sum", {}, "gaussian,cauchy") ==
        LevyExponent::sum({LevyExponent::gaussian(), LevyExponent::cauchy()}));
  CHECK(make_exponent("layered", {{"alpha", 0.7}, {"beta", 1.5}}) ==
        LevyExponent::layered_stable(0.7, 1.5));
  CHECK(make_exponent("poisson", {{"rate", 2.0}, {"jump_alpha", 0.5}}, "", "sas") ==
        LevyExponent::compound_poisson(2.0, StableParams{0.5, 1.0}));
  CHECK_THROWS_AS(parse_exponent("gaussian(variance=)"), InvalidParameter);
  CHECK_THROWS_AS(parse_exponent("gaussian(alpha=1)"), InvalidParameter);
  CHECK_THROWS_AS(parse_exponent("nonsense"), InvalidParameter);
  CHECK_THROWS_AS(parse_exponent("sas(alpha=1"), InvalidParameter);
  CHECK_THROWS_AS(make_exponent("gaussian", {{"scale", 1.0}}), InvalidParameter);
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e-300) == "1e-300");
}
