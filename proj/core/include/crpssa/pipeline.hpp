#pragma once

// Per-expert scoring: PIT of each realization through the interpolated
// expert CDF, z = (1 - 2 pit)^2, CRPS-SA = F_n(sum z) under the selected
// convention, alongside Classical Model SA, location bias and MAPE, then
// study-level aggregation.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crpssa/expert_cdf.hpp"
#include "crpssa/sqsum_dist.hpp"
#include "crpssa/study.hpp"

namespace crpssa {

struct MapeOptions {
  double epsilon = 1e-9;             // |r| below this marks the result unstable
  double unstable_threshold = 2.0;   // MAPE at or above this is unstable
  bool exclude_near_zero = false;    // drop |r| < epsilon terms instead of keeping them
};

struct MapeResult {
  double value;  // may be +inf when a realization is exactly zero
  bool unstable;
  std::size_t excluded;
};

MapeResult mape(std::span<const double> forecasts, std::span<const double> realizations,
                const MapeOptions& options = {});

double crps_sa(std::span<const double> pits, SaConvention convention,
               const SqSumOptions& options = {});
// Reuses a prebuilt F_n; dist.n() must equal pits.size().
double crps_sa(std::span<const double> pits, SaConvention convention,
               const SqSumDistribution& dist);

/// |100 * (#realizations strictly above the median) / n - 50|.
double location_bias(std::span<const double> realizations, std::span<const double> medians);
double location_bias_from_count(std::size_t above, std::size_t n);

struct ScoringConfig {
  double overshoot = 0.1;
  bool range_includes_realization = true;
  SaConvention convention = SaConvention::survival;
  SqSumOptions sqsum;
  MapeOptions mape;
  int histogram_bins = 10;
  int threads = 1;
  // Score columns: crps_sa, cm_sa, mape, location_bias, n_vars.
  std::vector<std::pair<std::string, std::string>> correlation_pairs{
      {"crps_sa", "cm_sa"},       {"cm_sa", "mape"},          {"crps_sa", "mape"},
      {"crps_sa", "location_bias"}, {"cm_sa", "location_bias"}};

  // Throws InputError on out-of-range settings.
  void validate() const;
  ScoringConfig with_overrides(const StudyConfig& overrides) const;
};

struct VariableScore {
  std::string variable_id;
  double realization;
  double median;
  double pit;
  bool out_of_support;
  double crps;
  double z;
  std::size_t bin;
  std::vector<Knot> knots;
};

struct ExpertScoreCard {
  std::string expert_id;
  std::size_t n_vars = 0;
  std::vector<double> pit_values;
  double z_sum = 0.0;
  double crps_sa = 0.0;
  SaConvention crps_sa_convention = SaConvention::survival;
  double crps_cdf = 0.0;  // F_n(z_sum), whatever the convention
  double cm_sa = 0.0;
  std::vector<int> bin_counts;
  std::size_t above_median = 0;
  double location_bias = 0.0;
  double mape = 0.0;
  bool mape_unstable = false;
  std::size_t clamped_pits = 0;
  std::vector<VariableScore> variables;
};

struct CorrelationResult {
  std::string x;
  std::string y;
  std::string subset;  // "all", or "mape_stable" when a MAPE column is involved
  std::size_t n = 0;
  std::optional<double> spearman;
  std::optional<double> pearson;
};

struct RankedExpert {
  std::size_t rank;
  std::string expert_id;
  double crps_sa;
  double cm_sa;
};

struct ScoreReport {
  std::string study_id;
  ScoringConfig config;
  std::size_t n_variables = 0;
  std::vector<ExpertScoreCard> experts;
  std::vector<DroppedExpert> excluded;
  double log_geomean_crps_sa = 0.0;
  double log_geomean_cm_sa = 0.0;
  std::size_t floored_crps_sa = 0;
  std::size_t floored_cm_sa = 0;
  std::size_t clamped_pits = 0;
  std::vector<CorrelationResult> correlations;
  std::vector<RankedExpert> ranking;  // ascending CRPS-SA
  std::vector<std::size_t> pit_histogram;
  double series_tail_bound = 0.0;
};

/// Scores every complete expert. Throws InputError for an empty study or
/// when no expert survives the completeness check.
ScoreReport score_study(const StudyRecord& study, const ScoringConfig& config = {});

}  // namespace crpssa
