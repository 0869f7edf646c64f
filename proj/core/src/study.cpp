#include "crpssa/study.hpp"

#include <set>

#include "crpssa/error.hpp"

namespace crpssa {

std::string_view to_string(SaConvention convention) {
  switch (convention) {
    case SaConvention::cdf:
      return "cdf";
    case SaConvention::survival:
      return "survival";
    case SaConvention::two_sided:
      return "two_sided";
  }
  return "survival";
}

SaConvention parse_convention(std::string_view text) {
  if (text == "cdf") return SaConvention::cdf;
  if (text == "survival") return SaConvention::survival;
  if (text == "two_sided" || text == "two-sided") return SaConvention::two_sided;
  detail::throw_input("convention", "unknown SA convention '" + std::string(text) +
                                        "' (expected survival, cdf or two-sided)");
}

std::vector<std::string> StudyRecord::expert_ids() const {
  std::set<std::string> ids;
  for (const CalibrationVariable& v : variables) {
    for (const auto& [id, q] : v.assessments) ids.insert(id);
  }
  return {ids.begin(), ids.end()};
}

std::vector<DroppedExpert> drop_incomplete_experts(StudyRecord& study) {
  std::vector<DroppedExpert> dropped;
  for (const std::string& id : study.expert_ids()) {
    std::size_t missing = 0;
    for (const CalibrationVariable& v : study.variables) {
      if (!v.assessments.contains(id)) ++missing;
    }
    if (missing == 0) continue;
    dropped.push_back({id, "incomplete",
                       "did not assess " + std::to_string(missing) + " of " +
                           std::to_string(study.variables.size()) + " calibration variables"});
    for (CalibrationVariable& v : study.variables) v.assessments.erase(id);
  }
  return dropped;
}

}  // namespace crpssa
