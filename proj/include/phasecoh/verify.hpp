#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace phasecoh {

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  double worst = 0.0;      // largest observed deviation (criterion-specific)
  double tolerance = 0.0;  // threshold the deviation was held to
  double seconds = 0.0;
  std::string detail;
};

struct VerifyOptions {
  std::vector<std::string> only;  // empty: all criteria
  double tol = 0.0;               // when positive, each threshold becomes max(own, tol)
  std::uint64_t seed = 20240611;
  /// Called after each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

/// Identifiers in execution order.
std::vector<std::string> criterion_ids();
CriterionResult run_criterion(const std::string& id, const VerifyOptions& opt);
/// Unknown ids in `only` raise InvalidArgument.
std::vector<CriterionResult> run_verification(const VerifyOptions& opt);

}  // namespace phasecoh
