#include "crpssa/classical_model.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "crpssa/error.hpp"
#include "crpssa/quadrature.hpp"

namespace crpssa {
namespace {

TEST(TheoreticalMass, StandardLevels) {
  const std::vector<double> levels{0.05, 0.5, 0.95};
  const auto m = theoretical_mass(levels);
  ASSERT_EQ(m.size(), 4u);
  EXPECT_NEAR(m[0], 0.05, 1e-15);
  EXPECT_NEAR(m[1], 0.45, 1e-15);
  EXPECT_NEAR(m[2], 0.45, 1e-15);
  EXPECT_NEAR(m[3], 0.05, 1e-15);
}

TEST(BinRealization, TiesGoToLowerBin) {
  const QuantileAssessment q({0.05, 0.5, 0.95}, {1, 2, 3});
  EXPECT_EQ(bin_realization(q, 0.5), 0u);
  EXPECT_EQ(bin_realization(q, 1.0), 0u);
  EXPECT_EQ(bin_realization(q, 1.5), 1u);
  EXPECT_EQ(bin_realization(q, 2.0), 1u);
  EXPECT_EQ(bin_realization(q, 2.5), 2u);
  EXPECT_EQ(bin_realization(q, 3.0), 2u);
  EXPECT_EQ(bin_realization(q, 9.0), 3u);
}

TEST(InterQuantileSample, Frequencies) {
  const InterQuantileSample s({1, 9, 9, 1});
  EXPECT_EQ(s.n(), 20);
  EXPECT_EQ(s.frequencies(), (std::vector<double>{0.05, 0.45, 0.45, 0.05}));
  EXPECT_THROW(InterQuantileSample({1, -1}), InputError);
  EXPECT_THROW(InterQuantileSample({1}), InputError);
}

TEST(RelativeInformation, Values) {
  const std::vector<double> p{0.05, 0.45, 0.45, 0.05};
  EXPECT_EQ(relative_information(p, p), 0.0);
  const std::vector<double> s{0.0, 0.5, 0.5, 0.0};
  EXPECT_NEAR(relative_information(s, p), std::log(10.0 / 9.0), 1e-15);
  const std::vector<double> bad{0.0, 1.0};
  EXPECT_THROW(relative_information(s, bad), InputError);
}

TEST(Chi2, ReferenceValues) {
  // scipy.stats.chi2.sf
  EXPECT_NEAR(chi2_sf(2.10721, 3), 0.5504555089763283, 1e-12);
  EXPECT_NEAR(chi2_sf(59.915, 3), 6.129232412119642e-13, 1e-20);
  EXPECT_NEAR(chi2_sf(1.0, 1), 0.31731050786291115, 1e-13);
  EXPECT_NEAR(chi2_sf(5.0, 2), 0.0820849986238988, 1e-14);
  EXPECT_NEAR(chi2_sf(10.0, 10), 0.44049328506521257, 1e-13);
  EXPECT_NEAR(chi2_sf(0.5, 4), 0.9735009788392561, 1e-13);
  EXPECT_EQ(chi2_sf(0.0, 3), 1.0);
}

TEST(Chi2, MatchesDensityQuadrature) {
  for (int df : {1, 3, 6}) {
    const double k = df / 2.0;
    auto pdf = [&](double t) {
      return std::exp(-k * std::log(2.0) - std::lgamma(k) + (k - 1.0) * std::log(t) - t / 2.0);
    };
    for (double x : {0.2, 1.0, 3.0, 8.0, 15.0}) {
      EXPECT_NEAR(chi2_sf(x, df), integrate(pdf, x, x + 300.0, {1e-14, 0.0, 4000}), 1e-8);
    }
  }
}

TEST(Chi2, DomainErrors) {
  EXPECT_THROW(chi2_sf(-1.0, 3), InputError);
  EXPECT_THROW(chi2_sf(1.0, 0), InputError);
  EXPECT_THROW(gamma_q(0.0, 1.0), InputError);
}

TEST(GammaQ, KnownValues) {
  EXPECT_NEAR(gamma_q(1.0, 2.0), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(gamma_q(0.5, 2.0), std::erfc(std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(gamma_q(3.0, 1.0), std::exp(-1.0) * 2.5, 1e-15);
}

TEST(CmSa, PerfectCalibration) {
  EXPECT_NEAR(cm_sa(InterQuantileSample({1, 9, 9, 1})), 1.0, 1e-12);
}

TEST(CmSa, ComposedExamples) {
  EXPECT_NEAR(cm_sa(InterQuantileSample({0, 5, 5, 0})), 0.5506, 1e-3);
  EXPECT_NEAR(cm_sa(InterQuantileSample({0, 5, 5, 0})),
              chi2_sf(20.0 * std::log(10.0 / 9.0), 3), 1e-15);
  EXPECT_LT(cm_sa(InterQuantileSample({10, 0, 0, 0})), 1e-12);
}

TEST(CmSa, ExplicitMassAndDf) {
  const InterQuantileSample s({2, 8});
  const std::vector<double> m{0.5, 0.5};
  const double stat = 2.0 * 10.0 * (0.2 * std::log(0.4) + 0.8 * std::log(1.6));
  EXPECT_NEAR(cm_sa(s, m), chi2_sf(stat, 1), 1e-15);
  EXPECT_NEAR(cm_sa(s, m, 2), chi2_sf(stat, 2), 1e-15);
  const std::vector<double> wrong{1.0};
  EXPECT_THROW(cm_sa(s, wrong), InputError);
}

}  // namespace
}  // namespace crpssa
