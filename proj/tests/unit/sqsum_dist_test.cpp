#include "crpssa/sqsum_dist.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

namespace crpssa {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(SqSum, OneIsSqrt) {
  const SqSumDistribution f(1);
  EXPECT_EQ(f.terms(), 0u);
  EXPECT_NEAR(f.cdf(0.49), 0.7, 1e-15);
  for (int i = 0; i <= 100; ++i) EXPECT_NEAR(f.cdf(i / 100.0), std::sqrt(i / 100.0), 1e-15);
}

TEST(SqSum, TwoIsQuarterDisk) {
  const SqSumDistribution f(2);
  EXPECT_NEAR(f.cdf(0.5), kPi / 8.0, 1e-6);
  for (int i = 0; i <= 100; ++i) {
    const double s = i / 100.0;
    EXPECT_NEAR(f.cdf(s), kPi * s / 4.0, 1e-6) << s;
  }
}

// Area of {x, y in [0, 1]: x^2 + y^2 <= s} for 1 <= s <= 2, by quadrature.
double disk_in_square(double s) {
  double area = 0.0;
  const int m = 200000;
  for (int i = 0; i < m; ++i) {
    const double x = (i + 0.5) / m;
    area += std::min(1.0, std::sqrt(std::max(0.0, s - x * x))) / m;
  }
  return area;
}

TEST(SqSum, TwoAboveOne) {
  // Closed form: sqrt(s - 1) + s (pi/4 - arccos(1/sqrt(s))).
  const SqSumDistribution f(2);
  for (double s : {1.0, 1.2, 1.5, 1.8, 1.99}) {
    const double exact = std::sqrt(s - 1.0) + s * (kPi / 4.0 - std::acos(1.0 / std::sqrt(s)));
    EXPECT_NEAR(f.cdf(s), exact, 1e-6) << s;
    EXPECT_NEAR(disk_in_square(s), exact, 1e-7);
  }
}

TEST(SqSum, ThreeClosedForms) {
  const SqSumDistribution f(3);
  EXPECT_NEAR(f.cdf(1.0), kPi / 6.0, 1e-7);
  for (double s : {0.1, 0.5, 0.9}) EXPECT_NEAR(f.cdf(s), kPi * std::pow(s, 1.5) / 6.0, 1e-7);
  for (double s : {1.2, 1.6, 2.0}) {
    EXPECT_NEAR(f.cdf(s), -kPi * std::pow(s, 1.5) / 3.0 + 3.0 * kPi * s / 4.0 - kPi / 4.0, 1e-7);
  }
}

TEST(SqSum, SmallBallForAnyN) {
  // For s <= 1, F_n(s) is the volume of the positive orthant of a ball.
  for (int n : {4, 5, 7, 10}) {
    const SqSumDistribution f(n);
    const double unit_ball = std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
    for (double s : {0.5, 1.0}) {
      EXPECT_NEAR(f.cdf(s), unit_ball * std::pow(s, n / 2.0) / std::pow(2.0, n), 1e-9)
          << n << " " << s;
    }
  }
}

TEST(SqSum, Boundaries) {
  for (int n : {1, 2, 5, 30}) {
    const SqSumDistribution f(n);
    EXPECT_EQ(f.cdf(0.0), 0.0);
    EXPECT_EQ(f.cdf(-1.0), 0.0);
    EXPECT_EQ(f.cdf(n), 1.0);
    EXPECT_EQ(f.cdf(n + 1.0), 1.0);
  }
}

TEST(SqSum, SymmetricAboutMeanInTheLimit) {
  // Mean of S_n is n/3; for large n the median approaches it.
  const SqSumDistribution f(60);
  EXPECT_NEAR(f.cdf(20.0), 0.5, 0.03);
}

TEST(SqSum, MonotoneOnGrid) {
  for (int n : {2, 3, 5, 10, 25}) {
    const SqSumDistribution f(n);
    const double slack = 2.0 * f.tail_bound() + 1e-14;
    double prev = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double v = f.cdf(n * i / 2000.0);
      EXPECT_GE(v, prev - slack) << n << " " << i;
      prev = v;
    }
  }
}

TEST(SqSum, TabulateIsNondecreasing) {
  const SqSumDistribution f(4);
  std::vector<double> s;
  for (int i = 0; i <= 400; ++i) s.push_back(i / 100.0);
  const auto t = f.tabulate(s);
  ASSERT_EQ(t.size(), s.size());
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_GE(t[i], t[i - 1]);
  EXPECT_NEAR(t[200], f.cdf(2.0), 1e-12);
}

TEST(SqSum, EvaluateReportsDiagnostics) {
  const SqSumDistribution f(6);
  const CdfEvaluation e = f.evaluate(3.0);
  EXPECT_EQ(e.value, f.cdf(3.0));
  EXPECT_GE(e.tail_bound, 0.0);
  EXPECT_LT(e.tail_bound, 1e-8);
  EXPECT_NEAR(e.raw, e.value, 1e-12);
}

TEST(SqSum, TermBoundDominatesModulus) {
  // For n = 2 the bound covers the residual left after the 1/k^2 subtraction.
  for (int n : {3, 5, 8}) {
    const SqSumDistribution f(n);
    for (std::size_t k : {1u, 2u, 10u, 100u, 1000u}) {
      EXPECT_LE(f.term_modulus(k), f.term_bound(k) * (1.0 + 1e-12)) << n << " " << k;
    }
  }
}

TEST(SqSum, TruncationBudgetExhausted) {
  SqSumOptions opts;
  opts.truncation_tol = 1e-14;
  opts.max_terms = 5;
  try {
    SqSumDistribution f(2, opts);
    FAIL() << "expected TruncationError";
  } catch (const TruncationError& e) {
    EXPECT_GT(e.tail_bound(), 0.0);
  }
}

TEST(SqSum, InvalidArguments) {
  EXPECT_THROW(SqSumDistribution(0), InputError);
  EXPECT_THROW(SqSumDistribution(3).cdf(std::nan("")), InputError);
  SqSumOptions opts;
  opts.truncation_tol = 0.0;
  EXPECT_THROW(SqSumDistribution(3, opts), InputError);
}

TEST(EcdfOracle, WithinDkwBand) {
  // DKW 99% half-width for N = 100 is 0.163; the pinned seed stays under 0.15.
  const SqSumDistribution f(10);
  const EcdfOracle ecdf(10, 100, 7);
  EXPECT_LT(ecdf.sup_distance([&](double s) { return f.cdf(s); }), 0.15);
  EXPECT_NEAR(dkw_bound(100, 0.01), std::sqrt(std::log(2.0 / 0.01) / 200.0), 1e-15);
}

TEST(EcdfOracle, LargeSampleAgreement) {
  for (int n : {2, 5}) {
    const SqSumDistribution f(n);
    const EcdfOracle ecdf(n, 20000, 100 + n);
    EXPECT_LT(ecdf.sup_distance([&](double s) { return f.cdf(s); }), dkw_bound(20000, 0.01));
  }
}

TEST(EcdfOracle, Deterministic) {
  const EcdfOracle a = ecdf_oracle(3, 500, 42), b = ecdf_oracle(3, 500, 42);
  EXPECT_EQ(a.sorted_samples(), b.sorted_samples());
  EXPECT_EQ(ecdf_eval(a, 1.0), b(1.0));
  EXPECT_EQ(a(-1.0), 0.0);
  EXPECT_EQ(a(3.0), 1.0);
}

TEST(ConvolutionOracle, AgreesWithSeries) {
  const auto tables = convolution_tables(6);
  ASSERT_EQ(tables.size(), 6u);
  for (int n = 1; n <= 6; ++n) {
    const SqSumDistribution f(n);
    const TabulatedCdf& t = tables[n - 1];
    EXPECT_EQ(t.n(), n);
    for (int i = 1; i < 100; ++i) {
      const double s = n * i / 100.0;
      EXPECT_NEAR(f.cdf(s), t(s), 1e-6) << n << " " << s;
    }
  }
}

TEST(ConvolutionOracle, RejectsCoarseGrid) {
  EXPECT_THROW(convolution_oracle(3, 10), NumericalError);
}

}  // namespace
}  // namespace crpssa
