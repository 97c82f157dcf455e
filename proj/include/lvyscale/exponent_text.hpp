#pragma once

#include <map>
#include <string>
#include <string_view>

#include "lvyscale/exponent.hpp"

namespace lvyscale {

/// Shortest decimal string that parses back to the same double.
std::string format_number(double value);

/// Canonical text form, e.g. "layered(alpha=0.7,beta=1.5)" or
/// "sum(gaussian(variance=1),sas(alpha=1,scale=1))". parse_exponent inverts it.
std::string to_string(const LevyExponent& exponent);

/// Parses the canonical form plus the aliases cauchy, laplace,
/// poisson-gaussian and poisson-cauchy. Missing parameters take defaults.
LevyExponent parse_exponent(std::string_view text);

/// Builds an exponent from a family name and loose key/value parameters, as
/// given on the command line. Sum components are comma-separated exponent
/// texts ("gaussian,cauchy").
LevyExponent make_exponent(const std::string& family, const std::map<std::string, double>& params,
                           const std::string& components = {}, const std::string& jump = {});

}  // namespace lvyscale
