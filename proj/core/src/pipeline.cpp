#include "crpssa/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "crpssa/classical_model.hpp"
#include "crpssa/error.hpp"
#include "crpssa/scores.hpp"
#include "crpssa/stats.hpp"

namespace crpssa {

MapeResult mape(std::span<const double> forecasts, std::span<const double> realizations,
                const MapeOptions& options) {
  if (forecasts.size() != realizations.size() || forecasts.empty()) {
    detail::throw_input("mape", "need equal-length, nonempty inputs");
  }
  bool unstable = false;
  std::size_t excluded = 0;
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < forecasts.size(); ++i) {
    detail::require_finite("mape", forecasts[i]);
    detail::require_finite("mape", realizations[i]);
    const double r = realizations[i];
    if (std::abs(r) < options.epsilon) {
      unstable = true;
      if (options.exclude_near_zero) {
        ++excluded;
        continue;
      }
    }
    const double diff = std::abs(forecasts[i] - r);
    sum += r == 0.0 ? (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                    : diff / std::abs(r);
    ++used;
  }
  const double value =
      used == 0 ? std::numeric_limits<double>::infinity() : sum / static_cast<double>(used);
  if (!(value < options.unstable_threshold)) unstable = true;
  return {value, unstable, excluded};
}

namespace {

double apply_convention(double f, SaConvention convention) {
  switch (convention) {
    case SaConvention::cdf:
      return f;
    case SaConvention::survival:
      return 1.0 - f;
    case SaConvention::two_sided:
      return std::min(1.0, 2.0 * std::min(f, 1.0 - f));
  }
  return 1.0 - f;
}

double z_sum_of(std::span<const double> pits) {
  double t = 0.0;
  for (double v : pits) {
    detail::require_finite("crps_sa", v);
    if (v < 0.0 || v > 1.0) detail::throw_input("crps_sa", "pit value outside [0, 1]");
    t += z_transform(v);
  }
  return t;
}

}  // namespace

double crps_sa(std::span<const double> pits, SaConvention convention,
               const SqSumDistribution& dist) {
  if (pits.empty()) detail::throw_input("crps_sa", "no pit values");
  if (static_cast<std::size_t>(dist.n()) != pits.size()) {
    detail::throw_input("crps_sa", "distribution order does not match number of pits");
  }
  return apply_convention(dist.cdf(z_sum_of(pits)), convention);
}

double crps_sa(std::span<const double> pits, SaConvention convention,
               const SqSumOptions& options) {
  if (pits.empty()) detail::throw_input("crps_sa", "no pit values");
  const SqSumDistribution dist(static_cast<int>(pits.size()), options);
  return crps_sa(pits, convention, dist);
}

double location_bias_from_count(std::size_t above, std::size_t n) {
  if (n == 0) detail::throw_input("location_bias", "n must be >= 1");
  if (above > n) detail::throw_input("location_bias", "count exceeds n");
  return std::abs(100.0 * static_cast<double>(above) / static_cast<double>(n) - 50.0);
}

double location_bias(std::span<const double> realizations, std::span<const double> medians) {
  if (realizations.size() != medians.size()) detail::throw_input("location_bias", "size mismatch");
  std::size_t above = 0;
  for (std::size_t i = 0; i < realizations.size(); ++i) {
    if (realizations[i] > medians[i]) ++above;
  }
  return location_bias_from_count(above, realizations.size());
}

void ScoringConfig::validate() const {
  if (!std::isfinite(overshoot) || !(overshoot > 0.0)) {
    detail::throw_input("config", "overshoot must be a finite number > 0");
  }
  if (!(sqsum.truncation_tol > 0.0) || sqsum.max_terms < 1) {
    detail::throw_input("config", "invalid series truncation settings");
  }
  if (histogram_bins < 1) detail::throw_input("config", "histogram_bins must be >= 1");
  if (threads < 1) detail::throw_input("config", "threads must be >= 1");
  if (!(mape.epsilon >= 0.0) || !(mape.unstable_threshold > 0.0)) {
    detail::throw_input("config", "invalid MAPE settings");
  }
  static const char* const columns[] = {"crps_sa", "cm_sa", "mape", "location_bias", "n_vars"};
  for (const auto& [x, y] : correlation_pairs) {
    for (const std::string& c : {x, y}) {
      if (std::find(std::begin(columns), std::end(columns), c) == std::end(columns)) {
        detail::throw_input("config", "unknown correlation column '" + c + "'");
      }
    }
  }
}

ScoringConfig ScoringConfig::with_overrides(const StudyConfig& overrides) const {
  ScoringConfig out = *this;
  if (overrides.overshoot) out.overshoot = *overrides.overshoot;
  if (overrides.convention) out.convention = *overrides.convention;
  if (overrides.range_includes_realization) {
    out.range_includes_realization = *overrides.range_includes_realization;
  }
  return out;
}

namespace {

ExpertScoreCard score_expert(const std::string& id, const StudyRecord& study,
                             const std::vector<IntrinsicRange>& ranges,
                             const SqSumDistribution& dist, const ScoringConfig& config) {
  ExpertScoreCard card;
  card.expert_id = id;
  card.n_vars = study.variables.size();
  card.crps_sa_convention = config.convention;
  card.bin_counts.assign(study.quantile_levels.size() + 1, 0);

  std::vector<double> medians;
  std::vector<double> realizations;
  for (std::size_t i = 0; i < study.variables.size(); ++i) {
    const CalibrationVariable& var = study.variables[i];
    const QuantileAssessment& q = var.assessments.at(id);
    const PiecewiseLinearCdf cdf = build_cdf(q, ranges[i]);
    const PitResult p = pit(cdf, var.realization);
    const TransformedScore t = transform_pit(p.value);

    VariableScore vs;
    vs.variable_id = var.variable_id;
    vs.realization = var.realization;
    vs.median = q.median();
    vs.pit = p.value;
    vs.out_of_support = p.out_of_support;
    vs.crps = t.crps;
    vs.z = t.z;
    vs.bin = bin_realization(q, var.realization);
    vs.knots = cdf.knots();

    card.pit_values.push_back(p.value);
    card.z_sum += t.z;
    card.bin_counts[vs.bin] += 1;
    if (var.realization > vs.median) ++card.above_median;
    if (p.out_of_support) ++card.clamped_pits;
    medians.push_back(vs.median);
    realizations.push_back(var.realization);
    card.variables.push_back(std::move(vs));
  }

  card.crps_cdf = dist.cdf(card.z_sum);
  card.crps_sa = apply_convention(card.crps_cdf, config.convention);
  const std::vector<double> mass = theoretical_mass(study.quantile_levels);
  card.cm_sa = cm_sa(InterQuantileSample(card.bin_counts), mass);
  card.location_bias = location_bias_from_count(card.above_median, card.n_vars);
  const MapeResult m = mape(medians, realizations, config.mape);
  card.mape = m.value;
  card.mape_unstable = m.unstable;
  return card;
}

double column_value(const ExpertScoreCard& c, const std::string& name) {
  if (name == "crps_sa") return c.crps_sa;
  if (name == "cm_sa") return c.cm_sa;
  if (name == "mape") return c.mape;
  if (name == "location_bias") return c.location_bias;
  return static_cast<double>(c.n_vars);
}

}  // namespace

ScoreReport score_study(const StudyRecord& input, const ScoringConfig& base_config) {
  const ScoringConfig config = base_config.with_overrides(input.config);
  config.validate();
  if (input.variables.empty()) detail::throw_input("score_study", "study has no variables");

  ScoreReport report;
  report.study_id = input.study_id;
  report.config = config;
  report.n_variables = input.variables.size();

  StudyRecord study = input;
  report.excluded = drop_incomplete_experts(study);
  const std::vector<std::string> ids = study.expert_ids();
  if (ids.empty()) {
    detail::throw_input("score_study", "no expert assessed every calibration variable");
  }

  std::vector<IntrinsicRange> ranges;
  for (const CalibrationVariable& var : study.variables) {
    std::vector<QuantileAssessment> qs;
    for (const auto& [id, q] : var.assessments) qs.push_back(q);
    std::optional<double> real;
    if (config.range_includes_realization) real = var.realization;
    ranges.push_back(intrinsic_range(qs, real, config.overshoot));
  }

  const SqSumDistribution dist(static_cast<int>(study.variables.size()), config.sqsum);
  report.series_tail_bound = dist.tail_bound();

  report.experts.resize(ids.size());
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(config.threads), ids.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      report.experts[i] = score_expert(ids[i], study, ranges, dist, config);
    }
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = w; i < ids.size(); i += workers) {
              report.experts[i] = score_expert(ids[i], study, ranges, dist, config);
            }
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<double> crps_values, cm_values;
  report.pit_histogram.assign(static_cast<std::size_t>(config.histogram_bins), 0);
  for (const ExpertScoreCard& c : report.experts) {
    crps_values.push_back(c.crps_sa);
    cm_values.push_back(c.cm_sa);
    report.clamped_pits += c.clamped_pits;
    for (double v : c.pit_values) {
      const auto b = std::min<std::size_t>(
          static_cast<std::size_t>(v * config.histogram_bins),
          static_cast<std::size_t>(config.histogram_bins - 1));
      report.pit_histogram[b] += 1;
    }
  }
  const LogGeomean lg_crps = log_geomean(crps_values);
  const LogGeomean lg_cm = log_geomean(cm_values);
  report.log_geomean_crps_sa = lg_crps.value;
  report.floored_crps_sa = lg_crps.floored;
  report.log_geomean_cm_sa = lg_cm.value;
  report.floored_cm_sa = lg_cm.floored;

  for (const auto& [x, y] : config.correlation_pairs) {
    CorrelationResult r;
    r.x = x;
    r.y = y;
    const bool uses_mape = x == "mape" || y == "mape";
    r.subset = uses_mape ? "mape_stable" : "all";
    std::vector<double> xs, ys;
    for (const ExpertScoreCard& c : report.experts) {
      if (uses_mape && (c.mape_unstable || !std::isfinite(c.mape))) continue;
      xs.push_back(column_value(c, x));
      ys.push_back(column_value(c, y));
    }
    r.n = xs.size();
    r.spearman = spearman(xs, ys);
    r.pearson = pearson(xs, ys);
    report.correlations.push_back(std::move(r));
  }

  std::vector<std::size_t> order(report.experts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return report.experts[a].crps_sa < report.experts[b].crps_sa;
  });
  for (std::size_t r = 0; r < order.size(); ++r) {
    const ExpertScoreCard& c = report.experts[order[r]];
    report.ranking.push_back({r + 1, c.expert_id, c.crps_sa, c.cm_sa});
  }
  return report;
}

}  // namespace crpssa
