#include "crpssa/synthetic.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "crpssa/error.hpp"
#include "crpssa/stats.hpp"
#include "crpssa/study_io.hpp"

namespace crpssa {
namespace {

TEST(Profile, Validation) {
  EXPECT_NO_THROW(ExpertProfile::calibrated().validate());
  EXPECT_THROW(ExpertProfile::overconfident(1.5), InputError);
  EXPECT_THROW(ExpertProfile::overconfident(0.0), InputError);
  EXPECT_THROW(ExpertProfile::underconfident(0.5), InputError);
  EXPECT_THROW(ExpertProfile::location_biased(0.0), InputError);
  ExpertProfile bad;
  bad.concentration = 0.5;
  EXPECT_THROW(bad.validate(), InputError);
  EXPECT_EQ(parse_profile_kind("location-biased"), ProfileKind::location_biased);
  EXPECT_THROW(parse_profile_kind("sloppy"), InputError);
}

TEST(Generate, DeterministicGivenSeed) {
  const std::vector<ExpertProfile> p{ExpertProfile::calibrated(), ExpertProfile::overconfident(0.3)};
  const StudyRecord a = generate_study(2, 12, p, 99);
  const StudyRecord b = generate_study(2, 12, p, 99);
  std::ostringstream sa, sb;
  write_study_json(a, sa);
  write_study_json(b, sb);
  EXPECT_EQ(sa.str(), sb.str());
  const StudyRecord c = generate_study(2, 12, p, 100);
  EXPECT_NE(a.variables[0].realization, c.variables[0].realization);
  EXPECT_EQ(a.config.range_includes_realization, false);
}

TEST(Generate, DistortionModel) {
  const StudyRecord s =
      generate_study(2, 3, {ExpertProfile::calibrated(), ExpertProfile::location_biased(0.5, 0.4)}, 1);
  for (const CalibrationVariable& v : s.variables) {
    const auto& t = v.assessments.at("E01").values();
    const auto& d = v.assessments.at("E02").values();
    EXPECT_NEAR(t[1], 0.0, 1e-15);
    EXPECT_NEAR(t[2], 1.6448536269514722, 1e-12);
    for (std::size_t j = 0; j < t.size(); ++j) EXPECT_NEAR(d[j], 0.5 + 0.4 * t[j], 1e-14);
  }
}

TEST(Generate, Errors) {
  EXPECT_THROW(generate_study(0, 5, {ExpertProfile::calibrated()}, 1), InputError);
  EXPECT_THROW(generate_study(2, 0, {ExpertProfile::calibrated()}, 1), InputError);
  EXPECT_THROW(generate_study(3, 5, std::vector<ExpertProfile>(2), 1), InputError);
  ExpertProfile bad{ProfileKind::calibrated, -1.0, 0.0};
  EXPECT_THROW(generate_study(1, 5, {bad}, 1), InputError);
}

TEST(Generate, CalibratedPitsAreUniform) {
  const auto reps = run_replications(1, 10, {ExpertProfile::calibrated()}, 300, 5);
  std::vector<double> pits;
  for (const auto& r : reps) {
    for (double v : r.experts[0].pit_values) pits.push_back(v);
  }
  EXPECT_GT(ks_pvalue(ks_uniform(pits), pits.size()), 0.01);
}

TEST(Generate, OverconfidencePilesPitsAtTheEnds) {
  const auto reps = run_replications(1, 10, {ExpertProfile::overconfident(0.2)}, 100, 6);
  std::size_t tails = 0, total = 0;
  for (const auto& r : reps) {
    for (double v : r.experts[0].pit_values) {
      tails += (v < 0.1 || v > 0.9) ? 1 : 0;
      ++total;
    }
  }
  EXPECT_GT(static_cast<double>(tails) / total, 0.5);
}

TEST(Generate, MirroredShiftsLeaveCrpsSaUnchanged) {
  // Negating every value mirrors the pits (v -> 1 - v) for symmetric levels.
  const StudyRecord s = generate_study(1, 10, {ExpertProfile::location_biased(1.0)}, 8);
  StudyRecord m = s;
  for (CalibrationVariable& v : m.variables) {
    v.realization = -v.realization;
    for (auto& [id, q] : v.assessments) {
      std::vector<double> x(q.values().rbegin(), q.values().rend());
      for (double& y : x) y = -y;
      q = QuantileAssessment(q.levels(), x);
    }
  }
  const ScoreReport a = score_study(s), b = score_study(m);
  EXPECT_NEAR(a.experts[0].crps_sa, b.experts[0].crps_sa, 1e-12);
  EXPECT_GT(a.experts[0].location_bias, 20.0);
  EXPECT_EQ(a.experts[0].location_bias, b.experts[0].location_bias);
  EXPECT_NE(a.experts[0].above_median, b.experts[0].above_median);
}

TEST(Replications, ThreadCountDoesNotChangeResults) {
  const auto a = run_replications(3, 8, {ExpertProfile::overconfident(0.6)}, 40, 3, {}, {}, 1);
  const auto b = run_replications(3, 8, {ExpertProfile::overconfident(0.6)}, 40, 3, {}, {}, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    EXPECT_EQ(a[r].seed, b[r].seed);
    for (std::size_t e = 0; e < a[r].experts.size(); ++e) {
      EXPECT_EQ(a[r].experts[e].crps_sa, b[r].experts[e].crps_sa);
    }
  }
}

TEST(Replications, RandomUnitsDoNotChangeScores) {
  SyntheticOptions units;
  units.random_units = true;
  const auto a = run_replications(1, 10, {ExpertProfile::overconfident(0.5)}, 50, 12);
  const auto b = run_replications(1, 10, {ExpertProfile::overconfident(0.5)}, 50, 12, {}, units);
  for (std::size_t r = 0; r < a.size(); ++r) {
    // The per-variable uniform draw differs once units are randomized, so
    // compare distributions instead of values.
    EXPECT_GE(b[r].experts[0].crps_sa, 0.0);
  }
  std::vector<double> x, y;
  for (const auto& r : a) x.push_back(r.experts[0].crps_sa);
  for (const auto& r : b) y.push_back(r.experts[0].crps_sa);
  double mx = 0, my = 0;
  for (double v : x) mx += v / x.size();
  for (double v : y) my += v / y.size();
  EXPECT_NEAR(mx, my, 0.1);
}

}  // namespace
}  // namespace crpssa
