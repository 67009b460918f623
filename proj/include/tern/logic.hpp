#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tern/core.hpp"

namespace tern {

// Labeled hypotheses over a shared parameter space. Labels must be unique.
class HypothesisSet {
 public:
  HypothesisSet() = default;
  void add(std::string label, ParameterRegion region);
  const std::vector<std::pair<std::string, ParameterRegion>>& entries() const {
    return entries_;
  }
  const ParameterRegion& at(const std::string& label) const;
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<std::pair<std::string, ParameterRegion>> entries_;
};

// Verdicts for every hypothesis in a set, all produced from one region
// estimate so the answers are mutually coherent.
struct TernaryVerdict {
  std::vector<std::pair<std::string, Decision>> decisions;
  Decision at(const std::string& label) const;
};

TernaryVerdict test_all(const ParameterRegion& region,
                        const HypothesisSet& hypotheses);

enum class LogicOp { Not, And, Or };

// Strong three-valued connectives on decisions: Agnostic propagates unless
// the determinate inputs already force the answer.
Decision combine_not(Decision a);
Decision combine_and(Decision a, Decision b);
Decision combine_or(Decision a, Decision b);
Decision combine(LogicOp op, const std::vector<Decision>& inputs);

}  // namespace tern
