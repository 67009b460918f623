#pragma once

#include <string>

#include "tern/errors.hpp"

namespace tern {

// Three-valued test outcome. The numeric view {0, 1/2, 1} is the codomain of
// the tests in this library.
enum class Decision { Accept, Agnostic, Reject };

inline double decision_value(Decision d) {
  switch (d) {
    case Decision::Accept:
      return 0.0;
    case Decision::Agnostic:
      return 0.5;
    case Decision::Reject:
      return 1.0;
  }
  throw UsageError("decision_value: invalid Decision");
}

inline const char* to_cstring(Decision d) {
  switch (d) {
    case Decision::Accept:
      return "accept";
    case Decision::Agnostic:
      return "agnostic";
    case Decision::Reject:
      return "reject";
  }
  throw UsageError("to_cstring: invalid Decision");
}

inline Decision decision_from_string(const std::string& s) {
  if (s == "accept") return Decision::Accept;
  if (s == "agnostic") return Decision::Agnostic;
  if (s == "reject") return Decision::Reject;
  throw UsageError("decision_from_string: unknown decision '" + s + "'");
}

}  // namespace tern
