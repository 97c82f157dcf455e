#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "lvyscale/errors.hpp"
#include "lvyscale/exponent_text.hpp"
#include "lvyscale/kernels.hpp"

using namespace lvyscale;

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> out;
  std::optional<std::string> format;
};

struct NoiseFlags {
  std::string noise;
  std::string spec;
  std::string jump;
  std::string components;
  std::map<std::string, std::optional<double>> params{
      {"alpha", {}}, {"beta", {}},  {"c", {}},          {"variance", {}},   {"scale", {}},
      {"rate", {}},  {"jump_variance", {}}, {"jump_scale", {}}, {"jump_alpha", {}}};

  bool given() const { return !noise.empty() || !spec.empty(); }

  LevyExponent build() const {
    if (!spec.empty()) return parse_exponent(spec);
    std::map<std::string, double> values;
    for (const auto& [key, value] : params) {
      if (value) values[key] = *value;
    }
    return make_exponent(noise, values, components, jump);
  }
};

struct ModelFlags {
  std::optional<std::string> op;
  std::optional<double> gamma;
  std::optional<double> step;
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::optional<std::uint64_t> stream;
  std::optional<double> epsilon;
  bool no_compensation = false;
};

struct VerifyFlags {
  std::optional<std::string> direction;
  std::vector<double> ladder;
  std::optional<double> hurst;
  std::optional<std::string> target;
  std::optional<std::size_t> ensemble;
  std::optional<double> threshold;
  std::optional<std::string> metric;
  std::optional<double> delta;
  std::optional<double> t;
  std::optional<double> y;
  std::optional<std::size_t> resolution;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "Config file or manifest JSON")->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "Seed (overrides LVYSCALE_SEED and the config)");
  cmd->add_option("--threads", f.threads, "Worker cap")->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"csv", "bin", "json"}));
}

void add_noise(CLI::App* cmd, NoiseFlags& f) {
  cmd->add_option("--noise", f.noise,
                  "Family: gaussian, sas, cauchy, laplace, poisson-gaussian, poisson-cauchy, "
                  "compound-poisson, layered, sum");
  cmd->add_option("--spec", f.spec, "Full noise text, e.g. \"layered(alpha=0.7,beta=1.5)\"");
  cmd->add_option("--jump", f.jump, "Compound-Poisson jump law");
  cmd->add_option("--components", f.components, "Sum components, e.g. gaussian,cauchy");
  for (auto& [key, value] : f.params) {
    std::string flag = "--" + key;
    for (char& ch : flag) {
      if (ch == '_') ch = '-';
    }
    cmd->add_option(flag, value, key);
  }
}

void add_model(CLI::App* cmd, ModelFlags& f) {
  cmd->add_option("--operator", f.op, "levy, sheet or fractional")
      ->check(CLI::IsMember({"levy", "sheet", "fractional"}));
  cmd->add_option("--gamma", f.gamma, "Fractional order");
  cmd->add_option("--step", f.step, "Grid step");
  cmd->add_option("--n", f.n, "Points along the first axis");
  cmd->add_option("--m", f.m, "Points along the second axis (sheets)");
  cmd->add_option("--stream", f.stream, "RNG stream");
  cmd->add_option("--epsilon", f.epsilon, "Layered small-jump cutoff");
  cmd->add_flag("--no-compensation", f.no_compensation, "Drop the small-jump Gaussian term");
}

void add_verify(CLI::App* cmd, VerifyFlags& f) {
  cmd->add_option("--direction", f.direction)->check(CLI::IsMember({"coarse", "fine"}));
  cmd->add_option("--ladder", f.ladder, "Scale factors a")->delimiter(',');
  cmd->add_option("--H", f.hurst, "Scaling exponent (default from the indices)");
  cmd->add_option("--target", f.target, "Limit noise text (default stable with the fitted index)");
  cmd->add_option("--ensemble", f.ensemble, "Ensemble size");
  cmd->add_option("--threshold", f.threshold, "Distance threshold");
  cmd->add_option("--metric", f.metric)->check(CLI::IsMember({"ks", "ecf"}));
  cmd->add_option("--delta", f.delta, "Degeneration level");
  cmd->add_option("--t", f.t, "Test point t");
  cmd->add_option("--y", f.y, "Test point y (sheets)");
  cmd->add_option("--resolution", f.resolution, "Grid points per unit window");
}

ExperimentConfig resolve(const CommonFlags& common, const NoiseFlags& noise,
                         const ModelFlags& model) {
  ExperimentConfig cfg = common.config.empty() ? ExperimentConfig{} : load_config(common.config);
  if (const char* env = std::getenv("LVYSCALE_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidParameter("LVYSCALE_SEED: not an unsigned integer");
    }
  }
  if (common.seed) cfg.seed = *common.seed;
  if (common.threads) cfg.threads = *common.threads;
  if (common.out) cfg.out_dir = *common.out;
  if (common.format) cfg.format = *common.format;
  if (noise.given()) cfg.noise = noise.build();

  if (model.op) {
    if (*model.op == "levy") {
      cfg.op = Operator::levy();
    } else if (*model.op == "sheet") {
      cfg.op = Operator::sheet();
    } else {
      if (!model.gamma) throw InvalidParameter("--gamma: required with --operator fractional");
      cfg.op = Operator::fractional(*model.gamma);
    }
  } else if (model.gamma) {
    cfg.op = Operator::fractional(*model.gamma);
  }
  if (model.step || model.n || model.m || (cfg.grid && cfg.grid->dim != cfg.op.dimension())) {
    const bool had_plane = cfg.grid && cfg.grid->dim == 2;
    GridSpec g = cfg.simulation_grid();
    if (model.step) g.step = *model.step;
    if (model.n) g.n = *model.n;
    g.dim = cfg.op.dimension();
    if (g.dim == 1) {
      g.m = 1;
    } else if (model.m) {
      g.m = *model.m;
    } else if (!had_plane) {
      g.m = g.n;
    }
    cfg.grid = g;
  }
  if (model.stream) cfg.stream = *model.stream;
  if (model.epsilon) cfg.layered.epsilon = *model.epsilon;
  if (model.no_compensation) cfg.layered.gaussian_compensation = false;
  return cfg;
}

void apply_verify(ExperimentConfig& cfg, const VerifyFlags& f) {
  if (f.direction) cfg.direction = *f.direction == "fine" ? Direction::fine : Direction::coarse;
  if (!f.ladder.empty()) cfg.ladder = f.ladder;
  if (f.hurst) cfg.hurst = *f.hurst;
  if (f.target) cfg.target = parse_exponent(*f.target);
  if (f.ensemble) cfg.ensemble = *f.ensemble;
  if (f.threshold) cfg.threshold = *f.threshold;
  if (f.metric) cfg.metric = *f.metric == "ecf" ? Metric::ecf : Metric::ks;
  if (f.delta) cfg.delta = *f.delta;
  if (f.t) cfg.test_point.t = *f.t;
  if (f.y) cfg.test_point.y = *f.y;
  if (f.resolution) cfg.resolution = *f.resolution;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiscale simulation and scaling-limit checks for Levy-driven processes"};
  app.require_subcommand(1);

  CommonFlags sim_common, ver_common, idx_common;
  NoiseFlags sim_noise, ver_noise, idx_noise;
  ModelFlags sim_model, ver_model;
  VerifyFlags ver_flags;
  bool increments = false;
  std::optional<std::size_t> paths;
  cli::IndicesOptions idx_opts;
  std::string report_path;

  auto* simulate = app.add_subcommand("simulate", "Synthesize paths and write them with a manifest");
  add_common(simulate, sim_common);
  add_noise(simulate, sim_noise);
  add_model(simulate, sim_model);
  simulate->add_option("--paths", paths, "Number of ensemble members to write");
  simulate->add_flag("--increments", increments, "Also write the white-noise increments");

  auto* indices = app.add_subcommand("indices", "Theoretical and fitted indices of a noise");
  add_common(indices, idx_common);
  add_noise(indices, idx_noise);
  indices->add_option("--psi-csv", idx_opts.psi_csv, "Write xi,psi samples to this file");
  indices->add_option("--psi-range", idx_opts.psi_max, "Half-width of the xi range");
  indices->add_option("--psi-points", idx_opts.psi_points, "Number of xi samples")
      ->check(CLI::PositiveNumber);
  indices->add_flag("--json", idx_opts.json, "JSON output");

  auto* verify = app.add_subcommand("verify", "Check a coarse or fine scaling limit");
  add_common(verify, ver_common);
  add_noise(verify, ver_noise);
  add_model(verify, ver_model);
  add_verify(verify, ver_flags);

  auto* report = app.add_subcommand("report", "Summarize a report JSON written by verify");
  report->add_option("path", report_path, "report.json")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      ExperimentConfig cfg = resolve(sim_common, sim_noise, sim_model);
      if (paths) cfg.ensemble = *paths;
      kernels::set_thread_limit(cfg.threads);
      return cli::cmd_simulate(cfg, increments);
    }
    if (*indices) {
      ExperimentConfig cfg = resolve(idx_common, idx_noise, ModelFlags{});
      idx_opts.psi_min = -idx_opts.psi_max;
      if (idx_common.format && *idx_common.format == "json") idx_opts.json = true;
      return cli::cmd_indices(cfg.noise, idx_opts);
    }
    if (*verify) {
      ExperimentConfig cfg = resolve(ver_common, ver_noise, ver_model);
      apply_verify(cfg, ver_flags);
      kernels::set_thread_limit(cfg.threads);
      return cli::cmd_verify(cfg);
    }
    return cli::cmd_report(report_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitError;
  }
}
