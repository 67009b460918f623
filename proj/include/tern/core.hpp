#pragma once

#include <functional>

#include "tern/decision.hpp"
#include "tern/estimators.hpp"
#include "tern/region.hpp"

namespace tern {

// Region-based three-valued decision rule:
//   Accept  iff region is a subset of the hypothesis,
//   Reject  iff region is a subset of the hypothesis' complement,
//   Agnostic otherwise.
// The region must be non-empty (an empty region estimate signals an estimator
// bug upstream and raises UsageError rather than guessing a verdict).
Decision decide_from_region(const ParameterRegion& region,
                            const ParameterRegion& hypothesis);

// A hypothesis plus the region estimator that judges it.
struct AgnosticTest {
  ParameterRegion hypothesis;
  RegionEstimator estimator;
};

Decision run_test(const AgnosticTest& test, const Dataset& data);

// Two-valued wrapper: agnostic outcomes are coerced to `agnostic_maps_to`
// (Accept reproduces the classical "do not reject" convention).
std::function<Decision(const Dataset&)> as_standard_test(
    const AgnosticTest& test, Decision agnostic_maps_to);

}  // namespace tern
