#include "lvyscale/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "lvyscale/errors.hpp"
#include "lvyscale/exponent_text.hpp"

namespace lvyscale::io {

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(bytes, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  if (!in) throw std::runtime_error("binary block truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

void expect_magic(std::istream& in, std::string_view magic) {
  std::string got(magic.size(), '\0');
  in.read(got.data(), static_cast<std::streamsize>(got.size()));
  if (!in || got != magic) {
    throw std::runtime_error("bad magic: expected " + std::string(magic));
  }
}

}  // namespace

void write_exponent_csv(std::ostream& out, const LevyExponent& exponent,
                        std::span<const double> xi) {
  out << "xi,psi\n";
  for (double x : xi) {
    out << format_number(x) << ',' << format_number(exponent.psi(x) + 0.0) << '\n';  // no "-0"
  }
}

void write_samples_csv(std::ostream& out, std::span<const double> samples) {
  out << "value\n";
  for (double x : samples) out << format_number(x) << '\n';
}

std::vector<double> read_samples_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "value") {
    throw std::runtime_error("sample CSV: missing \"value\" header");
  }
  std::vector<double> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double v = 0.0;
    const auto [end, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || end != line.data() + line.size()) {
      throw std::runtime_error("sample CSV: bad row \"" + line + "\"");
    }
    out.push_back(v);
  }
  return out;
}

void write_samples_binary(std::ostream& out, std::span<const double> samples) {
  out.write(kSampleMagic.data(), static_cast<std::streamsize>(kSampleMagic.size()));
  put_u64(out, samples.size());
  for (double x : samples) put_f64(out, x);
}

std::vector<double> read_samples_binary(std::istream& in) {
  expect_magic(in, kSampleMagic);
  const std::uint64_t count = get_u64(in);
  std::vector<double> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(get_f64(in));
  return out;
}

void write_path_csv(std::ostream& out, const PathGrid& path) {
  const GridSpec& g = path.grid;
  if (g.dim == 1) {
    out << "t,value\n";
    for (std::size_t k = 0; k < g.n; ++k) {
      out << format_number(static_cast<double>(k) * g.step) << ',' << format_number(path.at(k))
          << '\n';
    }
    return;
  }
  out << "x,y,value\n";
  for (std::size_t i = 0; i < g.n; ++i) {
    const std::string x = format_number(static_cast<double>(i) * g.step);
    for (std::size_t j = 0; j < g.m; ++j) {
      out << x << ',' << format_number(static_cast<double>(j) * g.step) << ','
          << format_number(path.at(i, j)) << '\n';
    }
  }
}

void write_path_binary(std::ostream& out, const PathGrid& path) {
  out.write(kPathMagic.data(), static_cast<std::streamsize>(kPathMagic.size()));
  put_u64(out, static_cast<std::uint64_t>(path.grid.dim));
  put_u64(out, path.grid.n);
  put_u64(out, path.grid.m);
  put_f64(out, path.grid.step);
  for (std::size_t k = 0; k < path.raw.size(); ++k) put_f64(out, path.at(k));
}

PathBlock read_path_binary(std::istream& in) {
  expect_magic(in, kPathMagic);
  PathBlock block;
  block.grid.dim = static_cast<int>(get_u64(in));
  block.grid.n = get_u64(in);
  block.grid.m = get_u64(in);
  block.grid.step = get_f64(in);
  block.grid.validate();
  block.values.resize(block.grid.points());
  for (double& v : block.values) v = get_f64(in);
  return block;
}

std::string operator_text(const Operator& op) {
  switch (op.kind) {
    case Operator::Kind::levy:
      return "levy";
    case Operator::Kind::sheet:
      return "sheet";
    case Operator::Kind::fractional:
      return "fractional(gamma=" + format_number(op.gamma) + ")";
  }
  return "unknown";
}

Operator parse_operator(std::string_view text) {
  if (text == "levy") return Operator::levy();
  if (text == "sheet") return Operator::sheet();
  constexpr std::string_view prefix = "fractional(gamma=";
  if (text.starts_with(prefix) && text.ends_with(")")) {
    const std::string_view number = text.substr(prefix.size(), text.size() - prefix.size() - 1);
    double gamma = 0.0;
    const auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), gamma);
    if (ec == std::errc() && end == number.data() + number.size()) {
      return Operator::fractional(gamma);
    }
  }
  throw InvalidParameter("unknown operator \"" + std::string(text) + "\"");
}

nlohmann::json report_to_json(const ScalingReport& report) {
  nlohmann::json ladder = nlohmann::json::array();
  for (const auto& e : report.ladder) {
    nlohmann::json entry{{"a", e.a}, {"distance", e.distance}, {"n", e.n}};
    if (report.kind == "scaling") {
      entry["ks"] = e.ks;
      entry["ks_p_value"] = e.ks_p_value;
      entry["ecf_distance"] = e.ecf_distance;
    }
    ladder.push_back(entry);
  }
  nlohmann::json j{{"schema", kReportSchema},
                   {"kind", report.kind},
                   {"noise", to_string(report.noise)},
                   {"operator", operator_text(report.op)},
                   {"direction", to_string(report.direction)},
                   {"H", report.hurst},
                   {"metric", report.kind == "scaling" ? to_string(report.metric) : "exceedance"},
                   {"threshold", report.threshold},
                   {"ladder", ladder},
                   {"verdict", to_string(report.verdict)},
                   {"seed", report.seed},
                   {"stream", report.stream}};
  if (report.target) j["target"] = to_string(*report.target);
  if (report.slope_estimate) j["slope_estimate"] = *report.slope_estimate;
  if (!report.note.empty()) j["note"] = report.note;
  return j;
}

}  // namespace lvyscale::io
