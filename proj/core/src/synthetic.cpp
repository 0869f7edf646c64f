#include "crpssa/synthetic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "crpssa/error.hpp"
#include "crpssa/expert_cdf.hpp"
#include "crpssa/random.hpp"

namespace crpssa {

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::calibrated: return "calibrated";
    case ProfileKind::overconfident: return "overconfident";
    case ProfileKind::underconfident: return "underconfident";
    case ProfileKind::location_biased: return "location_biased";
  }
  return "calibrated";
}

ProfileKind parse_profile_kind(std::string_view text) {
  if (text == "calibrated") return ProfileKind::calibrated;
  if (text == "overconfident") return ProfileKind::overconfident;
  if (text == "underconfident") return ProfileKind::underconfident;
  if (text == "location_biased" || text == "location-biased") return ProfileKind::location_biased;
  throw InputError("unknown profile '" + std::string(text) +
                   "' (expected calibrated, overconfident, underconfident or location_biased)");
}

ExpertProfile ExpertProfile::overconfident(double concentration) {
  ExpertProfile p{ProfileKind::overconfident, concentration, 0.0};
  p.validate();
  return p;
}

ExpertProfile ExpertProfile::underconfident(double concentration) {
  ExpertProfile p{ProfileKind::underconfident, concentration, 0.0};
  p.validate();
  return p;
}

ExpertProfile ExpertProfile::location_biased(double shift, double concentration) {
  ExpertProfile p{ProfileKind::location_biased, concentration, shift};
  p.validate();
  return p;
}

void ExpertProfile::validate() const {
  const std::string name(to_string(kind));
  if (!std::isfinite(concentration) || !(concentration > 0.0)) {
    throw InputError(name + " profile: concentration must be finite and > 0");
  }
  if (!std::isfinite(shift)) throw InputError(name + " profile: shift must be finite");
  switch (kind) {
    case ProfileKind::calibrated:
      if (concentration != 1.0 || shift != 0.0) {
        throw InputError("calibrated profile requires concentration 1 and shift 0");
      }
      break;
    case ProfileKind::overconfident:
      if (!(concentration < 1.0)) throw InputError("overconfident profile requires concentration < 1");
      if (shift != 0.0) throw InputError("overconfident profile requires shift 0");
      break;
    case ProfileKind::underconfident:
      if (!(concentration > 1.0)) throw InputError("underconfident profile requires concentration > 1");
      if (shift != 0.0) throw InputError("underconfident profile requires shift 0");
      break;
    case ProfileKind::location_biased:
      if (shift == 0.0) throw InputError("location_biased profile requires a nonzero shift");
      break;
  }
}

namespace {

std::string numbered(char prefix, std::size_t i, std::size_t count) {
  const int width = std::max(2, static_cast<int>(std::to_string(count).size()));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%0*zu", prefix, width, i + 1);
  return buf;
}

}  // namespace

StudyRecord generate_study(std::size_t n_experts, std::size_t n_vars,
                           const std::vector<ExpertProfile>& profiles, std::uint64_t seed,
                           const SyntheticOptions& options) {
  if (n_experts == 0) throw InputError("generate_study: need at least one expert");
  if (n_vars == 0) throw InputError("generate_study: need at least one variable");
  if (profiles.size() != 1 && profiles.size() != n_experts) {
    throw InputError("generate_study: expected 1 or " + std::to_string(n_experts) +
                     " profiles, got " + std::to_string(profiles.size()));
  }
  for (const ExpertProfile& p : profiles) p.validate();
  if (!std::isfinite(options.overshoot) || !(options.overshoot > 0.0)) {
    throw InputError("generate_study: overshoot must be > 0");
  }
  const std::vector<double>& levels = options.quantile_levels;
  if (levels.empty()) throw InputError("generate_study: no quantile levels");
  for (std::size_t j = 0; j < levels.size(); ++j) {
    if (!(levels[j] > 0.0 && levels[j] < 1.0) || (j > 0 && !(levels[j] > levels[j - 1]))) {
      throw InputError("generate_study: levels must be strictly increasing in (0, 1)");
    }
  }

  const boost::math::normal_distribution<double> normal;
  std::vector<double> z(levels.size());
  for (std::size_t j = 0; j < levels.size(); ++j) z[j] = boost::math::quantile(normal, levels[j]);

  StudyRecord study;
  study.study_id = "synthetic-" + std::to_string(seed);
  study.quantile_levels = levels;
  study.config.overshoot = options.overshoot;
  study.config.range_includes_realization = false;

  std::vector<std::string> ids(n_experts);
  for (std::size_t e = 0; e < n_experts; ++e) ids[e] = numbered('E', e, n_experts);

  for (std::size_t v = 0; v < n_vars; ++v) {
    Rng rng(mix_seed(seed, v));
    double mu = 0.0;
    double sigma = 1.0;
    if (options.random_units) {
      mu = -100.0 + 200.0 * rng.uniform();
      sigma = std::exp(-3.0 + 6.0 * rng.uniform());
    }
    std::vector<double> truth(levels.size());
    for (std::size_t j = 0; j < levels.size(); ++j) truth[j] = mu + sigma * z[j];
    const QuantileAssessment true_q(levels, truth);
    const IntrinsicRange range =
        intrinsic_range(std::span(&true_q, 1), std::nullopt, options.overshoot);
    const PiecewiseLinearCdf true_cdf = build_cdf(true_q, range);

    CalibrationVariable var;
    var.variable_id = numbered('V', v, n_vars);
    var.realization = true_cdf.inverse(rng.open_uniform());
    for (std::size_t e = 0; e < n_experts; ++e) {
      const ExpertProfile& p = profiles.size() == 1 ? profiles.front() : profiles[e];
      std::vector<double> values(levels.size());
      for (std::size_t j = 0; j < levels.size(); ++j) {
        values[j] = mu + p.shift * sigma + p.concentration * (truth[j] - mu);
      }
      var.assessments.emplace(ids[e], QuantileAssessment(levels, std::move(values)));
    }
    study.variables.push_back(std::move(var));
  }
  return study;
}

std::vector<ReplicationResult> run_replications(std::size_t n_experts, std::size_t n_vars,
                                                const std::vector<ExpertProfile>& profiles,
                                                std::size_t replications, std::uint64_t seed,
                                                const ScoringConfig& scoring,
                                                const SyntheticOptions& options, int threads) {
  scoring.validate();
  std::vector<ReplicationResult> results(replications);
  ScoringConfig per_study = scoring;
  per_study.threads = 1;

  auto run_one = [&](std::size_t r) {
    const std::uint64_t s = mix_seed(seed, r);
    const StudyRecord study = generate_study(n_experts, n_vars, profiles, s, options);
    ScoreReport report = score_study(study, per_study);
    results[r] = ReplicationResult{s, std::move(report.experts)};
  };

  const std::size_t workers =
      std::min<std::size_t>(std::max(1, threads), std::max<std::size_t>(1, replications));
  if (workers <= 1) {
    for (std::size_t r = 0; r < replications; ++r) run_one(r);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < replications && !failed; r = next++) {
          try {
            run_one(r);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace crpssa
