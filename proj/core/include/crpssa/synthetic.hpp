#pragma once

// Synthetic studies with controlled calibration defects. Each variable has a
// true distribution; an expert's quantile at level p is
//   mu + shift * sigma + concentration * (true_p - mu).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "crpssa/pipeline.hpp"
#include "crpssa/study.hpp"

namespace crpssa {

enum class ProfileKind { calibrated, overconfident, underconfident, location_biased };

std::string_view to_string(ProfileKind kind);
ProfileKind parse_profile_kind(std::string_view text);

struct ExpertProfile {
  ProfileKind kind = ProfileKind::calibrated;
  double concentration = 1.0;
  double shift = 0.0;

  static ExpertProfile calibrated() { return {}; }
  static ExpertProfile overconfident(double concentration);
  static ExpertProfile underconfident(double concentration);
  static ExpertProfile location_biased(double shift, double concentration = 1.0);

  // Throws InputError when the fields contradict the kind.
  void validate() const;
};

struct SyntheticOptions {
  std::vector<double> quantile_levels{0.05, 0.5, 0.95};
  double overshoot = 0.1;
  // Draw a location in [-100, 100] and a log-uniform scale in [e^-3, e^3] per
  // variable instead of the standard Gaussian.
  bool random_units = false;
};

// The realization of each variable is a draw from the minimally informative
// CDF over the true quantiles on their own intrinsic range, so a calibrated
// expert's pit is exactly uniform. The returned study pins the intrinsic
// range to the assessed values (range_includes_realization = false) and the
// overshoot used to build the truth.
//
// profiles holds one entry per expert, or a single entry shared by all.
StudyRecord generate_study(std::size_t n_experts, std::size_t n_vars,
                           const std::vector<ExpertProfile>& profiles, std::uint64_t seed,
                           const SyntheticOptions& options = {});

struct ReplicationResult {
  std::uint64_t seed;
  std::vector<ExpertScoreCard> experts;
};

// Scores `replications` independent studies; replication r uses
// mix_seed(seed, r). Results are ordered by replication whatever the thread
// count.
std::vector<ReplicationResult> run_replications(std::size_t n_experts, std::size_t n_vars,
                                                const std::vector<ExpertProfile>& profiles,
                                                std::size_t replications, std::uint64_t seed,
                                                const ScoringConfig& scoring = {},
                                                const SyntheticOptions& options = {},
                                                int threads = 1);

}  // namespace crpssa
