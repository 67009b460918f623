#include "tern/logic.hpp"

#include <algorithm>

#include "tern/errors.hpp"

namespace tern {

void HypothesisSet::add(std::string label, ParameterRegion region) {
  const bool taken =
      std::any_of(entries_.begin(), entries_.end(),
                  [&](const auto& e) { return e.first == label; });
  if (taken) {
    throw UsageError("hypothesis label already in use: " + label);
  }
  if (!entries_.empty() && entries_.front().second.dim() != region.dim()) {
    throw UsageError("hypothesis dimension mismatch for label: " + label);
  }
  entries_.emplace_back(std::move(label), std::move(region));
}

const ParameterRegion& HypothesisSet::at(const std::string& label) const {
  for (const auto& e : entries_) {
    if (e.first == label) return e.second;
  }
  throw UsageError("no hypothesis labeled: " + label);
}

Decision TernaryVerdict::at(const std::string& label) const {
  for (const auto& e : decisions) {
    if (e.first == label) return e.second;
  }
  throw UsageError("no verdict labeled: " + label);
}

TernaryVerdict test_all(const ParameterRegion& region,
                        const HypothesisSet& hypotheses) {
  TernaryVerdict verdict;
  verdict.decisions.reserve(hypotheses.entries().size());
  for (const auto& [label, hypothesis] : hypotheses.entries()) {
    verdict.decisions.emplace_back(label,
                                   decide_from_region(region, hypothesis));
  }
  return verdict;
}

Decision combine_not(Decision a) {
  switch (a) {
    case Decision::Accept:
      return Decision::Reject;
    case Decision::Reject:
      return Decision::Accept;
    case Decision::Agnostic:
      return Decision::Agnostic;
  }
  throw UsageError("combine_not: invalid decision");
}

Decision combine_and(Decision a, Decision b) {
  if (a == Decision::Reject || b == Decision::Reject) return Decision::Reject;
  if (a == Decision::Accept && b == Decision::Accept) return Decision::Accept;
  return Decision::Agnostic;
}

Decision combine_or(Decision a, Decision b) {
  if (a == Decision::Accept || b == Decision::Accept) return Decision::Accept;
  if (a == Decision::Reject && b == Decision::Reject) return Decision::Reject;
  return Decision::Agnostic;
}

Decision combine(LogicOp op, const std::vector<Decision>& inputs) {
  if (op == LogicOp::Not) {
    if (inputs.size() != 1) {
      throw UsageError("combine: NOT takes exactly one input");
    }
    return combine_not(inputs[0]);
  }
  if (inputs.size() < 2) {
    throw UsageError("combine: AND/OR take at least two inputs");
  }
  Decision acc = inputs[0];
  for (std::size_t i = 1; i < inputs.size(); ++i) {
    acc = op == LogicOp::And ? combine_and(acc, inputs[i])
                             : combine_or(acc, inputs[i]);
  }
  return acc;
}

}  // namespace tern
