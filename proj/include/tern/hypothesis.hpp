#pragma once

#include <string>

#include "tern/region.hpp"

namespace tern {

// One-dimensional hypothesis parsed from the command-line grammar.
// `variable` is the normalized test coordinate name ("delta" is stored as
// "mu_a-mu_b").
struct ParsedHypothesis {
  std::string variable;
  ParameterRegion region = ParameterRegion::all(1);
  bool is_point = false;
  double point_value = 0.0;
  std::string canonical;
};

// Accepted forms (whitespace optional):
//   VAR OP NUMBER            OP one of >=, <=, >, <, = (or ==)
//   NUMBER OP VAR OP NUMBER  each OP one of <=, <
// with VAR one of theta, mu_a-mu_b, delta, g. Anything else raises
// UsageError quoting these forms.
ParsedHypothesis parse_hypothesis(const std::string& text);

}  // namespace tern
