#pragma once

// Closed-form scoring rules for interval and uniform forecasts, the
// scale-invariant CRPS obtained after the probability integral transform, and
// its null distribution. Everything here is a pure function.

#include <functional>
#include <span>

#include "crpssa/quadrature.hpp"

namespace crpssa {

// Closed interval [lower, upper]; lower == upper is allowed.
class Interval {
 public:
  Interval(double lower, double upper);
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  double width() const { return upper_ - lower_; }

 private:
  double lower_;
  double upper_;
};

// X ~ U[low, high] with low < high.
class UniformForecast {
 public:
  UniformForecast(double low, double high);
  double low() const { return low_; }
  double high() const { return high_; }
  double cdf(double x) const;

 private:
  double low_;
  double high_;
};

// A realized quantile v together with its scale-invariant CRPS and the
// transformed value z = 4 * crps - 1/3 = (1 - 2v)^2.
struct TransformedScore {
  double v;
  double crps;
  double z;
};

// Moments of the scale-invariant CRPS when v ~ U[0, 1].
namespace null_moments {
inline constexpr double mean = 1.0 / 6.0;
inline constexpr double second_moment = 1.0 / 30.0;
inline constexpr double variance = 1.0 / 180.0;
}  // namespace null_moments

inline constexpr double kCrpsMin = 1.0 / 12.0;
inline constexpr double kCrpsMax = 1.0 / 3.0;

/// Probability interval score of the (1 - alpha) interval for realization y:
/// width plus a 2/alpha-slope penalty for misses. Negatively sensed.
double pis(const Interval& interval, double alpha, double y);

/// Expected PIS when the realization is U[0, 1]; the interval must lie in [0, 1].
double expected_pis_uniform(const Interval& interval, double alpha);

/// CRPS of a uniform forecast, three-branch closed form. y == low and
/// y == high take the middle branch.
double crps_uniform(const UniformForecast& forecast, double y);

/// Brute-force CRPS: adaptive quadrature of (F(x) - 1{x >= y})^2 over the
/// support extended to include y. `cdf` must be 0 at or below support.lower()
/// and 1 at or above support.upper(). Throws NumericalError when the
/// tolerance cannot be met.
double crps_quadrature(const std::function<double(double)>& cdf, double y,
                       const Interval& support, const QuadratureOptions& options = {});

/// Expected CRPS under Y ~ U[0, 1] computed as the double integral of the
/// CRPS integrand (outer over y, inner over x). Oracle for the closed forms.
double expected_crps_quadrature(const std::function<double(double)>& cdf,
                                const Interval& support,
                                const QuadratureOptions& options = {1e-11, 0.0, 4000});

/// E_Y[CRPS] for X ~ U[0, h], Y ~ U[0, 1], 0 < h <= 1.
double expected_crps_u0h(double h);

/// E_Y[CRPS] for X ~ U[1 - h, h], Y ~ U[0, 1], 0.5 <= h < 1. At h = 0.5 the
/// forecast degenerates to a point mass at 0.5.
double expected_crps_symmetric(double h);

/// v^3/3 - (v - 1)^3/3 for v in [0, 1]; range [1/12, 1/3].
double crps_scale_invariant(double v);

/// (1 - 2v)^2, i.e. 4 * crps_scale_invariant(v) - 1/3 without the rounding
/// of the two-step route.
double z_transform(double v);

TransformedScore transform_pit(double v);

/// P(CRPS <= x) under H0: sqrt(4x - 1/3), clamped to [0, 1] outside
/// [1/12, 1/3].
double null_cdf(double x);

/// Null density 2 / sqrt(4x - 1/3) on (1/12, 1/3), zero outside the closed
/// range. Throws SingularityError at x = 1/12.
double null_pdf(double x);

/// Quadratic score 2r - r^2 - (1 - r)^2 for the event, with r and 1 - r
/// swapped when it does not occur. Positively sensed, range [-1, 1].
double quadratic_score(double r, bool event);

// One row of a binned probability forecast: `assessed` occasions were given
// probability `probability`, of which `realized` saw the event.
struct ForecastBin {
  double probability;
  int assessed;
  int realized;
};

/// Average quadratic score over all occasions in the bins.
double average_quadratic_score(std::span<const ForecastBin> bins);

}  // namespace crpssa
