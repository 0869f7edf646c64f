#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crpssa/expert_cdf.hpp"

namespace crpssa {

// Which tail of F_n(sum z) is reported as CRPS statistical accuracy.
//   cdf:       F_n(T)
//   survival:  1 - F_n(T)   (overconfidence -> large T -> low SA)
//   two_sided: 2 min(F_n(T), 1 - F_n(T))
enum class SaConvention { cdf, survival, two_sided };

std::string_view to_string(SaConvention convention);
// Accepts "cdf", "survival", "two_sided" and "two-sided".
SaConvention parse_convention(std::string_view text);

// Per-study overrides of the scoring configuration.
struct StudyConfig {
  std::optional<double> overshoot;
  std::optional<SaConvention> convention;
  std::optional<bool> range_includes_realization;

  bool operator==(const StudyConfig&) const = default;
};

struct CalibrationVariable {
  std::string variable_id;
  double realization;
  std::string unit;  // opaque label, never converted
  std::map<std::string, QuantileAssessment> assessments;  // keyed by expert id
};

struct StudyRecord {
  std::string study_id;
  std::vector<double> quantile_levels;
  std::vector<CalibrationVariable> variables;
  StudyConfig config;

  // Every expert id that appears in any variable, sorted.
  std::vector<std::string> expert_ids() const;
};

struct DroppedExpert {
  std::string expert_id;
  std::string reason;  // machine-readable code, e.g. "incomplete"
  std::string detail;
};

struct IngestionWarning {
  std::string code;
  std::string message;
};

struct IngestionDiagnostics {
  std::vector<DroppedExpert> dropped_experts;
  std::size_t clamped_pits = 0;
  std::vector<IngestionWarning> warnings;
};

// Removes experts that did not assess every variable; reason "incomplete".
std::vector<DroppedExpert> drop_incomplete_experts(StudyRecord& study);

}  // namespace crpssa
