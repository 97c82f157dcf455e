#include "lvyscale/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "lvyscale/errors.hpp"
#include "lvyscale/exponent_text.hpp"
#include "lvyscale/io.hpp"

namespace lvyscale {

namespace {

using Section = std::map<std::string, std::string>;
using Document = std::map<std::string, Section>;

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void field_error(const std::string& field, const std::string& message) {
  throw InvalidParameter(field + ": " + message);
}

double to_double(const std::string& field, const std::string& text) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) field_error(field, "not a number");
  return v;
}

std::uint64_t to_u64(const std::string& field, const std::string& text) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    field_error(field, "not a non-negative integer");
  }
  return v;
}

bool to_bool(const std::string& field, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  field_error(field, "not a boolean");
}

std::vector<double> to_list(const std::string& field, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(field, trim(item)));
  return out;
}

Document parse_document(const std::string& text) {
  Document doc;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') field_error("line " + std::to_string(number), "unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      doc[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) field_error("line " + std::to_string(number), "expected key = value");
    if (section.empty()) field_error("line " + std::to_string(number), "key outside a section");
    doc[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return doc;
}

// Pops `key` from the section; empty optional when absent.
std::optional<std::string> take(Section& s, const std::string& key) {
  const auto it = s.find(key);
  if (it == s.end()) return std::nullopt;
  std::string value = it->second;
  s.erase(it);
  return value;
}

LevyExponent noise_from_section(Section& s) {
  if (auto spec = take(s, "spec")) {
    if (!s.empty()) field_error("noise." + s.begin()->first, "not allowed together with spec");
    return parse_exponent(*spec);
  }
  const auto family = take(s, "family");
  if (!family) field_error("noise", "needs spec or family");
  const std::string components = take(s, "components").value_or("");
  const std::string jump = take(s, "jump").value_or("");
  std::map<std::string, double> params;
  for (const auto& [key, value] : s) params[key] = to_double("noise." + key, value);
  s.clear();
  return make_exponent(*family, params, components, jump);
}

Direction parse_direction(const std::string& text) {
  if (text == "coarse") return Direction::coarse;
  if (text == "fine") return Direction::fine;
  field_error("verify.direction", "expected coarse or fine");
}

Metric parse_metric(const std::string& text) {
  if (text == "ks") return Metric::ks;
  if (text == "ecf") return Metric::ecf;
  field_error("verify.metric", "expected ks or ecf");
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_number(values[i]);
  }
  return out;
}

}  // namespace

GridSpec ExperimentConfig::simulation_grid() const {
  if (grid) return *grid;
  return op.dimension() == 1 ? GridSpec::line(1e-3, 1001) : GridSpec::plane(1.0 / 256, 257, 257);
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
  return to_config_text(*this) == to_config_text(o);
}

ExperimentConfig parse_config_text(const std::string& text) {
  Document doc = parse_document(text);
  ExperimentConfig cfg;

  if (auto it = doc.find("noise"); it != doc.end()) cfg.noise = noise_from_section(it->second);

  if (auto it = doc.find("operator"); it != doc.end()) {
    Section& s = it->second;
    const std::string kind = take(s, "kind").value_or("levy");
    const auto gamma = take(s, "gamma");
    if (kind == "levy") {
      cfg.op = Operator::levy();
    } else if (kind == "sheet") {
      cfg.op = Operator::sheet();
    } else if (kind == "fractional") {
      if (!gamma) field_error("operator.gamma", "required for kind = fractional");
      cfg.op = Operator::fractional(to_double("operator.gamma", *gamma));
    } else {
      field_error("operator.kind", "expected levy, sheet or fractional");
    }
  }

  if (auto it = doc.find("grid"); it != doc.end()) {
    Section& s = it->second;
    GridSpec g;
    g.dim = cfg.op.dimension();
    g.step = to_double("grid.step", take(s, "step").value_or("0.001"));
    g.n = to_u64("grid.n", take(s, "n").value_or("1001"));
    g.m = g.dim == 2 ? to_u64("grid.m", take(s, "m").value_or(std::to_string(g.n))) : 1;
    if (g.dim == 1) take(s, "m");
    cfg.grid = g;
  }

  if (auto it = doc.find("run"); it != doc.end()) {
    Section& s = it->second;
    if (auto v = take(s, "seed")) cfg.seed = to_u64("run.seed", *v);
    if (auto v = take(s, "stream")) cfg.stream = to_u64("run.stream", *v);
    if (auto v = take(s, "ensemble")) cfg.ensemble = to_u64("run.ensemble", *v);
    if (auto v = take(s, "out")) cfg.out_dir = *v;
    if (auto v = take(s, "format")) cfg.format = *v;
    if (auto v = take(s, "threads")) cfg.threads = static_cast<int>(to_u64("run.threads", *v));
  }

  if (auto it = doc.find("verify"); it != doc.end()) {
    Section& s = it->second;
    if (auto v = take(s, "direction")) cfg.direction = parse_direction(*v);
    if (auto v = take(s, "ladder")) cfg.ladder = to_list("verify.ladder", *v);
    if (auto v = take(s, "t")) cfg.test_point.t = to_double("verify.t", *v);
    if (auto v = take(s, "y")) cfg.test_point.y = to_double("verify.y", *v);
    if (auto v = take(s, "H")) cfg.hurst = to_double("verify.H", *v);
    if (auto v = take(s, "target")) cfg.target = parse_exponent(*v);
    if (auto v = take(s, "threshold")) cfg.threshold = to_double("verify.threshold", *v);
    if (auto v = take(s, "metric")) cfg.metric = parse_metric(*v);
    if (auto v = take(s, "delta")) cfg.delta = to_double("verify.delta", *v);
    if (auto v = take(s, "resolution")) cfg.resolution = to_u64("verify.resolution", *v);
  }

  if (auto it = doc.find("layered"); it != doc.end()) {
    Section& s = it->second;
    if (auto v = take(s, "epsilon")) cfg.layered.epsilon = to_double("layered.epsilon", *v);
    if (auto v = take(s, "compensation")) {
      cfg.layered.gaussian_compensation = to_bool("layered.compensation", *v);
    }
  }

  for (const auto& [name, section] : doc) {
    static const char* known[] = {"noise", "operator", "grid", "run", "verify", "layered"};
    bool ok = false;
    for (const char* k : known) ok = ok || name == k;
    if (!ok) field_error(name, "unknown section");
    if (!section.empty()) field_error(name + "." + section.begin()->first, "unknown key");
  }
  return cfg;
}

std::string to_config_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "[noise]\nspec = " << to_string(cfg.noise) << "\n\n";
  out << "[operator]\n";
  switch (cfg.op.kind) {
    case Operator::Kind::levy:
      out << "kind = levy\n";
      break;
    case Operator::Kind::sheet:
      out << "kind = sheet\n";
      break;
    case Operator::Kind::fractional:
      out << "kind = fractional\ngamma = " << format_number(cfg.op.gamma) << "\n";
      break;
  }
  if (cfg.grid) {
    out << "\n[grid]\nstep = " << format_number(cfg.grid->step) << "\nn = " << cfg.grid->n << "\n";
    if (cfg.grid->dim == 2) out << "m = " << cfg.grid->m << "\n";
  }
  out << "\n[run]\nseed = " << cfg.seed << "\nstream = " << cfg.stream
      << "\nensemble = " << cfg.ensemble << "\nout = " << cfg.out_dir << "\nformat = " << cfg.format
      << "\nthreads = " << cfg.threads << "\n";
  out << "\n[verify]\ndirection = " << to_string(cfg.direction) << "\n";
  if (!cfg.ladder.empty()) out << "ladder = " << join(cfg.ladder) << "\n";
  out << "t = " << format_number(cfg.test_point.t) << "\ny = " << format_number(cfg.test_point.y)
      << "\n";
  if (cfg.hurst) out << "H = " << format_number(*cfg.hurst) << "\n";
  if (cfg.target) out << "target = " << to_string(*cfg.target) << "\n";
  out << "threshold = " << format_number(cfg.threshold) << "\nmetric = " << to_string(cfg.metric)
      << "\ndelta = " << format_number(cfg.delta) << "\nresolution = " << cfg.resolution << "\n";
  out << "\n[layered]\nepsilon = " << format_number(cfg.layered.epsilon)
      << "\ncompensation = " << (cfg.layered.gaussian_compensation ? "true" : "false") << "\n";
  return out.str();
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["noise"] = to_string(cfg.noise);
  j["operator"] = io::operator_text(cfg.op);
  if (cfg.grid) {
    j["grid"] = {{"step", cfg.grid->step}, {"n", cfg.grid->n}, {"m", cfg.grid->m}};
  }
  j["seed"] = cfg.seed;
  j["stream"] = cfg.stream;
  j["ensemble"] = cfg.ensemble;
  j["out"] = cfg.out_dir;
  j["format"] = cfg.format;
  j["threads"] = cfg.threads;
  j["direction"] = to_string(cfg.direction);
  j["ladder"] = cfg.ladder;
  j["test_point"] = {cfg.test_point.t, cfg.test_point.y};
  if (cfg.hurst) j["H"] = *cfg.hurst;
  if (cfg.target) j["target"] = to_string(*cfg.target);
  j["threshold"] = cfg.threshold;
  j["metric"] = to_string(cfg.metric);
  j["delta"] = cfg.delta;
  j["resolution"] = cfg.resolution;
  j["layered"] = {{"epsilon", cfg.layered.epsilon},
                  {"compensation", cfg.layered.gaussian_compensation}};
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.noise = parse_exponent(j.at("noise").get<std::string>());
  cfg.op = io::parse_operator(j.at("operator").get<std::string>());
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    cfg.grid = GridSpec{cfg.op.dimension(), g.at("step").get<double>(),
                        g.at("n").get<std::size_t>(), g.at("m").get<std::size_t>()};
  }
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.stream = j.at("stream").get<std::uint64_t>();
  cfg.ensemble = j.at("ensemble").get<std::size_t>();
  cfg.out_dir = j.at("out").get<std::string>();
  cfg.format = j.at("format").get<std::string>();
  cfg.threads = j.at("threads").get<int>();
  cfg.direction = parse_direction(j.at("direction").get<std::string>());
  cfg.ladder = j.at("ladder").get<std::vector<double>>();
  cfg.test_point = {j.at("test_point").at(0).get<double>(), j.at("test_point").at(1).get<double>()};
  if (j.contains("H")) cfg.hurst = j["H"].get<double>();
  if (j.contains("target")) cfg.target = parse_exponent(j["target"].get<std::string>());
  cfg.threshold = j.at("threshold").get<double>();
  cfg.metric = parse_metric(j.at("metric").get<std::string>());
  cfg.delta = j.at("delta").get<double>();
  cfg.resolution = j.at("resolution").get<std::size_t>();
  cfg.layered.epsilon = j.at("layered").at("epsilon").get<double>();
  cfg.layered.gaussian_compensation = j.at("layered").at("compensation").get<bool>();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("config: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const auto j = nlohmann::json::parse(text);
    return config_from_json(j.contains("config") ? j["config"] : j);
  }
  return parse_config_text(text);
}

void validate_config(const ExperimentConfig& cfg, const std::string& command) {
  if (cfg.grid) {
    if (cfg.grid->dim != cfg.op.dimension()) field_error("grid", "dimension does not match operator");
    try {
      cfg.grid->validate();
    } catch (const InvalidParameter& e) {
      field_error("grid", e.what());
    }
  }
  if (cfg.ensemble == 0) field_error("run.ensemble", "must be >= 1");
  if (cfg.format != "csv" && cfg.format != "bin" && cfg.format != "json") {
    field_error("run.format", "expected csv, bin or json");
  }
  if (!(cfg.layered.epsilon > 0.0 && cfg.layered.epsilon <= 1.0)) {
    field_error("layered.epsilon", "must lie in (0, 1]");
  }
  if (command != "verify") return;
  if (cfg.ladder.empty()) field_error("verify.ladder", "required");
  for (std::size_t i = 0; i < cfg.ladder.size(); ++i) {
    const double a = cfg.ladder[i];
    if (!(a > 0.0)) field_error("verify.ladder", "entries must be > 0");
    try {
      RescaleSpec::from_factor(a, 0.0);
    } catch (const InvalidParameter&) {
      field_error("verify.ladder", "entry " + format_number(a) + " is not m or 1/m");
    }
  }
  if (cfg.ensemble < 2) field_error("run.ensemble", "verification needs at least 2 members");
  if (!(cfg.threshold > 0.0)) field_error("verify.threshold", "must be > 0");
  if (!(cfg.delta > 0.0)) field_error("verify.delta", "must be > 0");
  if (cfg.resolution == 0) field_error("verify.resolution", "must be >= 1");
}

}  // namespace lvyscale
