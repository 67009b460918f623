#include "tern/core.hpp"

#include "tern/errors.hpp"

namespace tern {

Decision decide_from_region(const ParameterRegion& region,
                            const ParameterRegion& hypothesis) {
  if (region.dim() != hypothesis.dim()) {
    throw UsageError("decide_from_region: region dimension " +
                     std::to_string(region.dim()) +
                     " does not match hypothesis dimension " +
                     std::to_string(hypothesis.dim()));
  }
  if (region.is_empty()) {
    throw UsageError(
        "decide_from_region: empty region estimate (estimator bug upstream)");
  }
  if (region.is_subset_of(hypothesis)) return Decision::Accept;
  if (region.is_subset_of_complement(hypothesis)) return Decision::Reject;
  return Decision::Agnostic;
}

Decision run_test(const AgnosticTest& test, const Dataset& data) {
  return decide_from_region(test.estimator(data), test.hypothesis);
}

std::function<Decision(const Dataset&)> as_standard_test(
    const AgnosticTest& test, Decision agnostic_maps_to) {
  if (agnostic_maps_to == Decision::Agnostic) {
    throw UsageError("as_standard_test: agnostic_maps_to must be assertive");
  }
  return [test, agnostic_maps_to](const Dataset& data) {
    const Decision d = run_test(test, data);
    return d == Decision::Agnostic ? agnostic_maps_to : d;
  };
}

}  // namespace tern
