#pragma once

#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lvyscale/synth.hpp"
#include "lvyscale/verify.hpp"

namespace lvyscale::io {

inline constexpr std::string_view kSampleMagic = "LVYSAMP1";
inline constexpr std::string_view kPathMagic = "LVYPATH1";
inline constexpr const char* kReportSchema = "scaling-report/1";

/// Two columns "xi,psi".
void write_exponent_csv(std::ostream& out, const LevyExponent& exponent,
                        std::span<const double> xi);

/// One column with header "value".
void write_samples_csv(std::ostream& out, std::span<const double> samples);
std::vector<double> read_samples_csv(std::istream& in);

/// "LVYSAMP1", count as u64 little-endian, then count f64 little-endian.
void write_samples_binary(std::ostream& out, std::span<const double> samples);
std::vector<double> read_samples_binary(std::istream& in);

/// "t,value" rows for 1-d paths, long-format "x,y,value" for sheets.
void write_path_csv(std::ostream& out, const PathGrid& path);

/// "LVYPATH1", then u64 dim, n, m, f64 step (all little-endian), then the
/// scaled values row-major as f64.
void write_path_binary(std::ostream& out, const PathGrid& path);

struct PathBlock {
  GridSpec grid;
  std::vector<double> values;
};
PathBlock read_path_binary(std::istream& in);

nlohmann::json report_to_json(const ScalingReport& report);
std::string operator_text(const Operator& op);
Operator parse_operator(std::string_view text);

}  // namespace lvyscale::io
