#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "lvyscale/config.hpp"
#include "lvyscale/errors.hpp"
#include "lvyscale/exponent_text.hpp"

using namespace lvyscale;

namespace {

const char* kText = R"(# experiment
[noise]
family = layered
alpha = 0.7
beta = 1.5

[operator]
kind = fractional
gamma = 1.5

[grid]
step = 0.001
n = 2001

[run]
seed = 42
ensemble = 500
out = results ; trailing comment

[verify]
direction = fine
ladder = 1, 10, 100
H = 0.6
target = sas(alpha=0.7,scale=2)
metric = ecf
)";

std::string field_error(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const InvalidParameter& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("config text is parsed into the experiment") {
  const ExperimentConfig c = parse_config_text(kText);
  CHECK(c.noise == LevyExponent::layered_stable(0.7, 1.5));
  CHECK(c.op == Operator::fractional(1.5));
  REQUIRE(c.grid);
  CHECK(*c.grid == GridSpec::line(0.001, 2001));
  CHECK(c.seed == 42);
  CHECK(c.ensemble == 500);
  CHECK(c.out_dir == "results");
  CHECK(c.direction == Direction::fine);
  CHECK(c.ladder == std::vector<double>{1, 10, 100});
  CHECK(c.hurst == 0.6);
  CHECK(c.target == LevyExponent::stable(0.7, 2.0));
  CHECK(c.metric == Metric::ecf);
  CHECK(c.threshold == 0.03);
}

TEST_CASE("config round trips through text and JSON") {
  const ExperimentConfig c = parse_config_text(kText);
  CHECK(parse_config_text(to_config_text(c)) == c);
  CHECK(config_from_json(config_to_json(c)) == c);
  ExperimentConfig sheet;
  sheet.noise = LevyExponent::sum({LevyExponent::gaussian(0.3), LevyExponent::cauchy(0.1)});
  sheet.op = Operator::sheet();
  sheet.grid = GridSpec::plane(1.0 / 3.0, 5, 7);
  sheet.layered = {0.01, false};
  sheet.test_point = {0.1, 0.7};
  CHECK(parse_config_text(to_config_text(sheet)) == sheet);
  CHECK(config_from_json(config_to_json(sheet)) == sheet);
  CHECK(config_from_json(config_to_json(sheet)).grid->m == 7);
}

TEST_CASE("defaults without sections") {
  const ExperimentConfig c = parse_config_text("");
  CHECK(c.noise == LevyExponent::gaussian());
  CHECK_FALSE(c.grid);
  CHECK(c.simulation_grid() == GridSpec::line(1e-3, 1001));
  CHECK(parse_config_text("[noise]\nspec = cauchy\n").noise == LevyExponent::cauchy());
}

TEST_CASE("errors name the offending field") {
  CHECK(field_error("[noise]\nfamily = gaussian\nalpha = 1\n").find("alpha") != std::string::npos);
  CHECK(field_error("[run]\nseed = -3\n").find("run.seed") != std::string::npos);
  CHECK(field_error("[run]\ncolour = red\n").find("run.colour") != std::string::npos);
  CHECK(field_error("[extra]\n").find("extra") != std::string::npos);
  CHECK(field_error("[operator]\nkind = fractional\n").find("operator.gamma") != std::string::npos);
  CHECK(field_error("seed = 1\n").find("line 1") != std::string::npos);
  CHECK(field_error("[noise]\nspec = cauchy\nscale = 2\n").find("noise.scale") != std::string::npos);
}

TEST_CASE("validation before any computation") {
  ExperimentConfig c;
  CHECK_NOTHROW(validate_config(c, "simulate"));
  CHECK_THROWS_AS(validate_config(c, "verify"), InvalidParameter);
  c.ladder = {1.0, 0.1};
  c.ensemble = 100;
  CHECK_NOTHROW(validate_config(c, "verify"));
  c.ladder = {1.0, 0.4};
  CHECK_THROWS_WITH_AS(validate_config(c, "verify"), doctest::Contains("verify.ladder"),
                       InvalidParameter);
  c.ladder = {1.0};
  c.grid = GridSpec::plane(0.1, 5, 5);
  CHECK_THROWS_WITH_AS(validate_config(c, "simulate"), doctest::Contains("grid"), InvalidParameter);
  c.grid.reset();
  c.format = "xml";
  CHECK_THROWS_WITH_AS(validate_config(c, "simulate"), doctest::Contains("run.format"),
                       InvalidParameter);
}

TEST_CASE("manifests load as configs") {
  const ExperimentConfig c = parse_config_text(kText);
  const std::string path = "config_test_manifest.json";
  {
    std::ofstream out(path);
    nlohmann::json manifest;
    manifest["command"] = "simulate";
    manifest["config"] = config_to_json(c);
    out << manifest.dump(2);
  }
  CHECK(load_config(path) == c);
  {
    std::ofstream out(path);
    out << to_config_text(c);
  }
  CHECK(load_config(path) == c);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config("does/not/exist.cfg"), InvalidParameter);
}
