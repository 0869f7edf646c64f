#include "crpssa/expert_cdf.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "crpssa/error.hpp"
#include "crpssa/random.hpp"

namespace crpssa {
namespace {

const std::vector<double> kLevels{0.05, 0.5, 0.95};

QuantileAssessment q3(double a, double b, double c) { return {kLevels, {a, b, c}}; }

TEST(QuantileAssessment, Validation) {
  EXPECT_NO_THROW(q3(1, 2, 3));
  try {
    q3(2, 2, 3);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("non-increasing quantile values"), std::string::npos);
  }
  EXPECT_THROW(QuantileAssessment({0.5, 0.4}, {1, 2}), InputError);
  EXPECT_THROW(QuantileAssessment({0.0, 0.5}, {1, 2}), InputError);
  EXPECT_THROW(QuantileAssessment({0.5}, {1, 2}), InputError);
  EXPECT_THROW(q3(1, std::nan(""), 3), InputError);
}

TEST(QuantileAssessment, Median) {
  EXPECT_EQ(q3(1, 2, 3).median(), 2.0);
  EXPECT_EQ(QuantileAssessment({0.05, 0.25, 0.5, 0.75, 0.95}, {1, 2, 3, 4, 5}).median(), 3.0);
}

TEST(IntrinsicRange, OvershootOverAllExperts) {
  const std::vector<QuantileAssessment> qs{q3(10, 20, 30), q3(15, 25, 45)};
  const IntrinsicRange r = intrinsic_range(qs, std::nullopt, 0.1);
  EXPECT_DOUBLE_EQ(r.low, 6.5);
  EXPECT_DOUBLE_EQ(r.high, 48.5);
  EXPECT_FALSE(r.expanded);
  const IntrinsicRange with_y = intrinsic_range(qs, 55.0, 0.1);
  EXPECT_DOUBLE_EQ(with_y.low, 5.5);
  EXPECT_DOUBLE_EQ(with_y.high, 59.5);
}

TEST(IntrinsicRange, ZeroSpanIsWidened) {
  const std::vector<QuantileAssessment> qs{QuantileAssessment({0.5}, {4.0})};
  const IntrinsicRange r = intrinsic_range(qs, 4.0, 0.1);
  EXPECT_TRUE(r.expanded);
  EXPECT_LT(r.low, 4.0);
  EXPECT_GT(r.high, 4.0);
}

TEST(IntrinsicRange, Errors) {
  EXPECT_THROW(intrinsic_range({}, std::nullopt, 0.1), InputError);
  const std::vector<QuantileAssessment> qs{q3(1, 2, 3)};
  EXPECT_THROW(intrinsic_range(qs, std::nullopt, -0.1), InputError);
}

TEST(BuildCdf, KnotsAndValues) {
  const auto q = q3(10, 20, 30);
  const PiecewiseLinearCdf f = build_cdf(q, {0.0, 40.0, 0.1});
  ASSERT_EQ(f.knots().size(), 5u);
  EXPECT_EQ(f(0.0), 0.0);
  EXPECT_EQ(f(40.0), 1.0);
  EXPECT_EQ(f(-5.0), 0.0);
  EXPECT_EQ(f(50.0), 1.0);
  EXPECT_DOUBLE_EQ(f(20.0), 0.5);
  EXPECT_DOUBLE_EQ(f(5.0), 0.025);
  EXPECT_DOUBLE_EQ(f(25.0), 0.725);
  EXPECT_DOUBLE_EQ(f(35.0), 0.975);
}

TEST(BuildCdf, RejectsValuesOnRangeEnds) {
  EXPECT_THROW(build_cdf(q3(10, 20, 30), {10.0, 40.0, 0.0}), InputError);
  EXPECT_THROW(PiecewiseLinearCdf({{0, 0}, {1, 0.5}, {1, 1}}), InputError);
  EXPECT_THROW(PiecewiseLinearCdf({{0, 0.1}, {1, 1}}), InputError);
}

TEST(Pit, FlagsOutOfSupport) {
  const PiecewiseLinearCdf f = build_cdf(q3(10, 20, 30), {0.0, 40.0, 0.1});
  EXPECT_FALSE(pit(f, 20.0).out_of_support);
  const PitResult lo = pit(f, -1.0), hi = pit(f, 41.0);
  EXPECT_TRUE(lo.out_of_support);
  EXPECT_TRUE(hi.out_of_support);
  EXPECT_EQ(lo.value, 0.0);
  EXPECT_EQ(hi.value, 1.0);
  EXPECT_FALSE(pit(f, 0.0).out_of_support);
}

TEST(Pit, RoundTripsWithInverse) {
  const PiecewiseLinearCdf f = build_cdf(q3(-3, 1, 12), {-5.0, 20.0, 0.1});
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const double p = rng.uniform();
    EXPECT_NEAR(pit(f, inverse_cdf(f, p)).value, p, 1e-12);
    const double x = -5.0 + 25.0 * rng.uniform();
    EXPECT_NEAR(inverse_cdf(f, pit(f, x).value), x, 1e-12);
  }
  EXPECT_EQ(inverse_cdf(f, 0.0), -5.0);
  EXPECT_EQ(inverse_cdf(f, 1.0), 20.0);
  EXPECT_EQ(inverse_cdf(f, 0.5), 1.0);
  EXPECT_THROW(inverse_cdf(f, 1.5), InputError);
}

TEST(Pit, InverseStrictlyIncreasing) {
  const PiecewiseLinearCdf f = build_cdf(q3(1, 2, 3), {0.5, 4.0, 0.1});
  double prev = -1e300;
  for (int i = 0; i <= 1000; ++i) {
    const double x = inverse_cdf(f, i / 1000.0);
    EXPECT_GT(x, prev);
    prev = x;
  }
}

TEST(Pit, ConstantDensityWithinPanel) {
  const PiecewiseLinearCdf f = build_cdf(q3(10, 20, 30), {0.0, 40.0, 0.1});
  for (const auto& [a, b] : {std::pair{0.0, 10.0}, {10.0, 20.0}, {20.0, 30.0}, {30.0, 40.0}}) {
    const double h = (b - a) / 8.0;
    const double first = f(a + h) - f(a);
    for (int k = 1; k < 8; ++k) {
      EXPECT_NEAR(f(a + (k + 1) * h) - f(a + k * h), first, 1e-12);
    }
  }
}

TEST(Pit, AffineRescalingInvariance) {
  const std::vector<QuantileAssessment> qs{q3(10, 20, 30), q3(12, 18, 33)};
  const std::vector<QuantileAssessment> scaled{q3(1000 + 7, 2000 + 7, 3000 + 7),
                                               q3(1200 + 7, 1800 + 7, 3300 + 7)};
  const IntrinsicRange r = intrinsic_range(qs, 25.0, 0.1);
  const IntrinsicRange rs = intrinsic_range(scaled, 2507.0, 0.1);
  for (std::size_t e = 0; e < 2; ++e) {
    const double a = pit(build_cdf(qs[e], r), 25.0).value;
    const double b = pit(build_cdf(scaled[e], rs), 2507.0).value;
    EXPECT_NEAR(a, b, 1e-12);
  }
}

}  // namespace
}  // namespace crpssa
