#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "lvyscale/errors.hpp"
#include "lvyscale/exponent_text.hpp"
#include "lvyscale/io.hpp"

namespace lvyscale::cli {

namespace fs = std::filesystem;

namespace {

fs::path prepare_dir(const std::string& dir) {
  const fs::path out(dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) {
    throw std::runtime_error("output directory " + dir + " is not writable");
  }
  return out;
}

std::ofstream open_out(const fs::path& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string member_name(const char* stem, std::size_t index, std::size_t count,
                        const std::string& ext) {
  if (count == 1) return std::string(stem) + "." + ext;
  std::ostringstream name;
  name << stem << "_" << std::setw(4) << std::setfill('0') << index << "." + ext;
  return name.str();
}

void write_path_json(std::ostream& out, const PathGrid& path) {
  nlohmann::json j;
  j["dim"] = path.grid.dim;
  j["step"] = path.grid.step;
  j["n"] = path.grid.n;
  j["m"] = path.grid.m;
  j["values"] = path.values();
  out << j.dump() << "\n";
}

bool passed(const ScalingReport& report) {
  return report.kind == "degeneration" ? report.verdict == Verdict::degenerate_to_zero
                                       : report.verdict == Verdict::converging;
}

void print_report(std::ostream& out, const nlohmann::json& r) {
  out << r.value("kind", "scaling") << " " << r.value("direction", "") << "  noise "
      << r.value("noise", "") << "  operator " << r.value("operator", "") << "\n";
  out << "H = " << r.value("H", 0.0);
  if (r.contains("target") && !r["target"].is_null()) out << "  target " << r["target"].get<std::string>();
  out << "  metric " << r.value("metric", "") << "  threshold " << r.value("threshold", 0.0) << "\n";
  out << std::setw(12) << "a" << std::setw(14) << "distance" << std::setw(14) << "ks"
      << std::setw(14) << "p" << std::setw(14) << "ecf" << "\n";
  for (const auto& e : r.value("ladder", nlohmann::json::array())) {
    out << std::setw(12) << e.value("a", 0.0) << std::setw(14) << e.value("distance", 0.0)
        << std::setw(14) << e.value("ks", 0.0) << std::setw(14) << e.value("ks_p_value", 0.0)
        << std::setw(14) << e.value("ecf_distance", 0.0) << "\n";
  }
  out << "verdict: " << r.value("verdict", "") << "\n";
  const std::string note = r.value("note", "");
  if (!note.empty()) out << "note: " << note << "\n";
}

}  // namespace

int cmd_simulate(const ExperimentConfig& config, bool write_increments) {
  validate_config(config, "simulate");
  const GridSpec grid = config.simulation_grid();
  const fs::path dir = prepare_dir(config.out_dir);
  const std::string ext = config.format;

  std::vector<std::string> files;
  for (std::size_t i = 0; i < config.ensemble; ++i) {
    NoiseSpec member{config.noise, config.seed,
                     config.ensemble == 1 ? config.stream : substream(config.stream, i)};
    const PathGrid path = synthesize(member, config.op, grid, config.layered);
    const std::string name = member_name("path", i, config.ensemble, ext);
    auto out = open_out(dir / name, ext == "bin");
    if (ext == "csv") {
      io::write_path_csv(out, path);
    } else if (ext == "bin") {
      io::write_path_binary(out, path);
    } else {
      write_path_json(out, path);
    }
    files.push_back(name);
    if (write_increments) {
      const auto increments =
          sample_increment(member, grid.cell_volume(), grid.cells(), config.layered);
      const std::string inc = member_name("increments", i, config.ensemble, ext == "bin" ? "bin" : "csv");
      auto inc_out = open_out(dir / inc, ext == "bin");
      if (ext == "bin") {
        io::write_samples_binary(inc_out, increments);
      } else {
        io::write_samples_csv(inc_out, increments);
      }
      files.push_back(inc);
    }
  }

  nlohmann::json manifest;
  manifest["command"] = "simulate";
  manifest["config"] = config_to_json(config);
  manifest["config"]["grid"] = {{"step", grid.step}, {"n", grid.n}, {"m", grid.m}};
  manifest["files"] = files;
  open_out(dir / "manifest.json") << manifest.dump(2) << "\n";
  std::cout << "wrote " << files.size() << " file(s) to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_indices(const LevyExponent& noise, const IndicesOptions& options) {
  const IndexPair theory = theoretical_indices(noise);
  nlohmann::json j;
  j["noise"] = to_string(noise);
  j["theoretical"] = {{"beta0", theory.beta0}, {"beta_inf", theory.beta_inf}};
  int code = kExitOk;
  for (const End end : {End::zero, End::infinity}) {
    const char* key = end == End::zero ? "beta0" : "beta_inf";
    const auto grid = default_index_grid(end);
    try {
      const IndexFit fit = fit_index(noise, end, grid);
      j["fitted"][key] = {{"slope", fit.slope},
                          {"raw_slope", fit.raw_slope},
                          {"intercept", fit.intercept},
                          {"rms_residual", fit.rms_residual},
                          {"grid", {grid.front(), grid.back()}}};
    } catch (const DegenerateFit& e) {
      j["fitted"][key] = {{"error", e.what()}};
      code = kExitDegenerateFit;
    }
  }

  if (!options.psi_csv.empty()) {
    const auto xi = options.psi_points == 1
                        ? std::vector<double>{options.psi_min}
                        : [&] {
                            std::vector<double> v(options.psi_points);
                            const double h = (options.psi_max - options.psi_min) /
                                             static_cast<double>(options.psi_points - 1);
                            for (std::size_t k = 0; k < v.size(); ++k) {
                              v[k] = options.psi_min + h * static_cast<double>(k);
                            }
                            return v;
                          }();
    auto out = open_out(options.psi_csv);
    io::write_exponent_csv(out, noise, xi);
  }

  if (options.json) {
    std::cout << j.dump(2) << "\n";
    return code;
  }
  std::cout << "noise        " << to_string(noise) << "\n";
  std::cout << "theoretical  beta0 = " << format_number(theory.beta0)
            << "  beta_inf = " << format_number(theory.beta_inf) << "\n";
  for (const char* key : {"beta0", "beta_inf"}) {
    const auto& f = j["fitted"][key];
    std::cout << "fitted       " << std::left << std::setw(9) << key << std::right;
    if (f.contains("error")) {
      std::cout << "degenerate fit: " << f["error"].get<std::string>() << "\n";
    } else {
      std::cout << "slope " << std::setprecision(6) << f["slope"].get<double>() << "  raw "
                << f["raw_slope"].get<double>() << "  rms residual "
                << f["rms_residual"].get<double>() << "\n";
    }
  }
  return code;
}

int cmd_verify(const ExperimentConfig& config) {
  validate_config(config, "verify");
  const NoiseSpec noise{config.noise, config.seed, config.stream};
  const IndexPair indices = theoretical_indices(config.noise);

  ScalingReport report;
  if (config.direction == Direction::fine && indices.beta_inf == 0.0) {
    DegenerationRequest req;
    req.noise = noise;
    req.op = config.op;
    req.hurst = config.hurst.value_or(0.0);
    req.ladder = config.ladder;
    req.delta = config.delta;
    req.observable = config.test_point;
    req.ensemble = config.ensemble;
    req.grid = config.grid;
    req.resolution = config.resolution;
    req.layered = config.layered;
    report = verify_degeneration(req);
    report.note = "beta_inf = 0: fine direction routed to the degeneration check" +
                  (report.note.empty() ? std::string() : "; " + report.note);
  } else {
    ScalingRequest req;
    req.noise = noise;
    req.op = config.op;
    req.direction = config.direction;
    req.ladder = config.ladder;
    req.observable = config.test_point;
    req.ensemble = config.ensemble;
    req.hurst = config.hurst;
    req.target = config.target;
    req.grid = config.grid;
    req.resolution = config.resolution;
    req.threshold = config.threshold;
    req.metric = config.metric;
    req.layered = config.layered;
    report = verify_scaling_limit(req);
  }

  nlohmann::json j = io::report_to_json(report);
  const fs::path dir = prepare_dir(config.out_dir);
  open_out(dir / "report.json") << j.dump(2) << "\n";
  nlohmann::json manifest;
  manifest["command"] = "verify";
  manifest["config"] = config_to_json(config);
  manifest["files"] = {"report.json"};
  open_out(dir / "manifest.json") << manifest.dump(2) << "\n";

  if (config.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    print_report(std::cout, j);
  }
  return passed(report) ? kExitOk : kExitVerdictFailed;
}

int cmd_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  const auto j = nlohmann::json::parse(in);
  if (j.value("schema", "") != io::kReportSchema) {
    throw std::runtime_error(path + " is not a " + std::string(io::kReportSchema) + " document");
  }
  print_report(std::cout, j);
  const std::string verdict = j.value("verdict", "");
  const bool ok = j.value("kind", "scaling") == "degeneration" ? verdict == "degenerate-to-zero"
                                                              : verdict == "converging";
  return ok ? kExitOk : kExitVerdictFailed;
}

}  // namespace lvyscale::cli
