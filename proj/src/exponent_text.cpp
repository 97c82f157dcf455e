#include "lvyscale/exponent_text.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>
#include <system_error>
#include <vector>

#include "lvyscale/errors.hpp"

namespace lvyscale {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string jump_text(const JumpLaw& jump) {
  return std::visit(Overloaded{[](const GaussianParams& g) {
                                 return "gaussian(variance=" + format_number(g.variance) + ")";
                               },
                               [](const StableParams& s) {
                                 return "sas(alpha=" + format_number(s.alpha) +
                                        ",scale=" + format_number(s.scale) + ")";
                               }},
                    jump);
}

// Recursive-descent parser over name(key=value,...,nested(...)).
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  LevyExponent parse_all() {
    LevyExponent out = parse_one();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return out;
  }

 private:
  struct Argument {
    std::string key;     // empty for positional (nested) arguments
    std::string value;   // raw text, possibly a nested exponent
  };

  LevyExponent parse_one() {
    const std::string name = identifier();
    std::vector<Argument> args;
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      skip_space();
      if (peek() != ')') {
        for (;;) {
          args.push_back(argument());
          skip_space();
          if (peek() == ',') {
            ++pos_;
            continue;
          }
          break;
        }
      }
      expect(')');
    }
    return build(name, args);
  }

  Argument argument() {
    skip_space();
    const std::size_t start = pos_;
    const std::string word = identifier();
    skip_space();
    if (peek() == '=') {
      ++pos_;
      return {word, raw_value()};
    }
    pos_ = start;
    return {"", raw_value()};
  }

  // Value text up to the next top-level ',' or ')'.
  std::string raw_value() {
    skip_space();
    const std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (c == ',' && depth == 0) break;
      ++pos_;
    }
    std::string value(text_.substr(start, pos_ - start));
    while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back()))) value.pop_back();
    if (value.empty()) fail("empty argument");
    return value;
  }

  LevyExponent build(const std::string& name, const std::vector<Argument>& args) {
    std::map<std::string, double> numbers;
    std::vector<LevyExponent> nested;
    std::string jump;
    for (const auto& arg : args) {
      if (arg.key.empty()) {
        nested.push_back(Parser(arg.value).parse_all());
      } else if (arg.key == "jump") {
        jump = arg.value;
      } else {
        numbers[arg.key] = parse_number(arg.value);
      }
    }
    if (name == "sum") {
      if (!numbers.empty() || !jump.empty()) fail("sum takes only nested exponents");
      return LevyExponent::sum(std::move(nested));
    }
    if (!nested.empty()) fail("only sum takes nested exponents");
    return make_exponent(name, numbers, {}, jump);
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-' ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidParameter("noise text \"" + std::string(text_) + "\": " + what + " at offset " +
                           std::to_string(pos_));
  }

  static double parse_number(const std::string& text) {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
      throw InvalidParameter("not a number: \"" + text + "\"");
    }
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

double take(const std::map<std::string, double>& params, const char* key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown(const std::string& family, const std::map<std::string, double>& params,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : params) {
    bool known = false;
    for (const char* name : allowed) known = known || key == name;
    if (!known) throw InvalidParameter(family + ": unknown parameter \"" + key + "\"");
  }
}

JumpLaw jump_from(const LevyExponent& e) {
  if (const auto* g = std::get_if<GaussianParams>(&e.params())) return *g;
  if (const auto* s = std::get_if<StableParams>(&e.params())) return *s;
  throw InvalidParameter("compound-poisson: jump law must be gaussian, cauchy or sas");
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string to_string(const LevyExponent& exponent) {
  return std::visit(
      Overloaded{
          [](const GaussianParams& g) {
            return "gaussian(variance=" + format_number(g.variance) + ")";
          },
          [](const StableParams& s) {
            return "sas(alpha=" + format_number(s.alpha) + ",scale=" + format_number(s.scale) + ")";
          },
          [](const GeneralizedLaplaceParams& l) {
            return "generalized-laplace(c=" + format_number(l.c) + ")";
          },
          [](const CompoundPoissonParams& cp) {
            return "compound-poisson(rate=" + format_number(cp.rate) + ",jump=" +
                   jump_text(cp.jump) + ")";
          },
          [](const LayeredStableParams& l) {
            return "layered(alpha=" + format_number(l.alpha) + ",beta=" + format_number(l.beta) +
                   ")";
          },
          [](const SumParams& s) {
            std::string out = "sum(";
            for (std::size_t i = 0; i < s.terms.size(); ++i) {
              if (i) out += ',';
              out += to_string(s.terms[i]);
            }
            return out + ")";
          },
      },
      exponent.params());
}

LevyExponent parse_exponent(std::string_view text) { return Parser(text).parse_all(); }

LevyExponent make_exponent(const std::string& family, const std::map<std::string, double>& params,
                           const std::string& components, const std::string& jump) {
  if (family == "gaussian") {
    reject_unknown(family, params, {"variance"});
    return LevyExponent::gaussian(take(params, "variance", 1.0));
  }
  if (family == "sas" || family == "stable") {
    reject_unknown(family, params, {"alpha", "scale"});
    return LevyExponent::stable(take(params, "alpha", 1.0), take(params, "scale", 1.0));
  }
  if (family == "cauchy") {
    reject_unknown(family, params, {"scale"});
    return LevyExponent::cauchy(take(params, "scale", 1.0));
  }
  if (family == "generalized-laplace" || family == "laplace") {
    reject_unknown(family, params, {"c"});
    return LevyExponent::generalized_laplace(take(params, "c", 1.0));
  }
  if (family == "compound-poisson" || family == "poisson" || family == "poisson-gaussian" ||
      family == "poisson-cauchy") {
    reject_unknown(family, params, {"rate", "jump_variance", "jump_scale", "jump_alpha"});
    const double rate = take(params, "rate", 1.0);
    std::string law = jump;
    if (law.empty()) law = family == "poisson-cauchy" ? "cauchy" : "gaussian";
    if (law == "gaussian") {
      return LevyExponent::compound_poisson(rate,
                                            GaussianParams{take(params, "jump_variance", 1.0)});
    }
    if (law == "cauchy") {
      return LevyExponent::compound_poisson(rate, StableParams{1.0, take(params, "jump_scale", 1.0)});
    }
    if (law == "sas" || law == "stable") {
      return LevyExponent::compound_poisson(
          rate, StableParams{take(params, "jump_alpha", 1.0), take(params, "jump_scale", 1.0)});
    }
    return LevyExponent::compound_poisson(rate, jump_from(parse_exponent(law)));
  }
  if (family == "layered" || family == "layered-stable") {
    reject_unknown(family, params, {"alpha", "beta"});
    return LevyExponent::layered_stable(take(params, "alpha", 1.0), take(params, "beta", 1.0));
  }
  if (family == "sum") {
    if (!params.empty()) throw InvalidParameter("sum: parameters belong to the components");
    return parse_exponent("sum(" + components + ")");
  }
  throw InvalidParameter("unknown noise family \"" + family + "\"");
}

}  // namespace lvyscale
