#include "tern/hypothesis.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "tern/errors.hpp"
#include "tern/io.hpp"

namespace tern {

namespace {

const char* kNumber = R"([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
const char* kVariable = R"(theta|mu_a\s*-\s*mu_b|delta|g)";

std::string normalize_variable(std::string var) {
  var.erase(std::remove_if(var.begin(), var.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            var.end());
  if (var == "delta") return "mu_a-mu_b";
  return var;
}

[[noreturn]] void grammar_error(const std::string& text) {
  throw UsageError(
      "could not parse hypothesis \"" + text +
      "\"; accepted forms: VAR OP NUMBER with OP one of >= <= > < = , or "
      "NUMBER <= VAR <= NUMBER (either <= may be <), with VAR one of theta, "
      "mu_a-mu_b, delta, g");
}

}  // namespace

ParsedHypothesis parse_hypothesis(const std::string& text) {
  static const std::regex one_sided(
      std::string(R"(^\s*()") + kVariable + R"()\s*(>=|<=|==|=|>|<)\s*()" +
      kNumber + R"()\s*$)");
  static const std::regex band(
      std::string(R"(^\s*()") + kNumber + R"()\s*(<=|<)\s*()" + kVariable +
      R"()\s*(<=|<)\s*()" + kNumber + R"()\s*$)");

  std::smatch m;
  ParsedHypothesis parsed;
  if (std::regex_match(text, m, one_sided)) {
    parsed.variable = normalize_variable(m[1].str());
    const std::string op = m[2].str();
    const double c = parse_double(m[3].str(), "hypothesis bound");
    if (op == ">=") {
      parsed.region = ParameterRegion::from_interval(Interval::at_least(c));
      parsed.canonical = parsed.variable + " >= " + format_double(c);
    } else if (op == ">") {
      parsed.region = ParameterRegion::from_interval(Interval::above(c));
      parsed.canonical = parsed.variable + " > " + format_double(c);
    } else if (op == "<=") {
      parsed.region = ParameterRegion::from_interval(Interval::at_most(c));
      parsed.canonical = parsed.variable + " <= " + format_double(c);
    } else if (op == "<") {
      parsed.region = ParameterRegion::from_interval(Interval::below(c));
      parsed.canonical = parsed.variable + " < " + format_double(c);
    } else {
      parsed.region = ParameterRegion::point1(c);
      parsed.is_point = true;
      parsed.point_value = c;
      parsed.canonical = parsed.variable + " = " + format_double(c);
    }
    return parsed;
  }
  if (std::regex_match(text, m, band)) {
    const double lo = parse_double(m[1].str(), "hypothesis lower bound");
    const std::string lo_op = m[2].str();
    parsed.variable = normalize_variable(m[3].str());
    const std::string hi_op = m[4].str();
    const double hi = parse_double(m[5].str(), "hypothesis upper bound");
    const Interval iv =
        Interval::make(lo, hi, lo_op == "<", hi_op == "<");
    if (iv.empty()) {
      throw UsageError("hypothesis \"" + text + "\" describes an empty set");
    }
    parsed.region = ParameterRegion::from_interval(iv);
    parsed.is_point = iv.degenerate();
    if (parsed.is_point) parsed.point_value = lo;
    parsed.canonical = format_double(lo) + " " + lo_op + " " +
                       parsed.variable + " " + hi_op + " " +
                       format_double(hi);
    return parsed;
  }
  grammar_error(text);
}

}  // namespace tern
