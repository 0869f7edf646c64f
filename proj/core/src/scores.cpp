#include "crpssa/scores.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "crpssa/error.hpp"

namespace crpssa {

namespace {

void require_unit(const char* where, double v) {
  detail::require_finite(where, v);
  if (v < 0.0 || v > 1.0) {
    std::ostringstream msg;
    msg << "value " << v << " outside [0, 1]";
    detail::throw_input(where, msg.str());
  }
}

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace

Interval::Interval(double lower, double upper) : lower_(lower), upper_(upper) {
  detail::require_finite("Interval", lower);
  detail::require_finite("Interval", upper);
  if (lower > upper) detail::throw_input("Interval", "lower bound exceeds upper bound");
}

UniformForecast::UniformForecast(double low, double high) : low_(low), high_(high) {
  detail::require_finite("UniformForecast", low);
  detail::require_finite("UniformForecast", high);
  if (!(low < high)) detail::throw_input("UniformForecast", "requires low < high");
}

double UniformForecast::cdf(double x) const {
  if (x <= low_) return 0.0;
  if (x >= high_) return 1.0;
  return (x - low_) / (high_ - low_);
}

double pis(const Interval& interval, double alpha, double y) {
  detail::require_finite("pis", alpha);
  detail::require_finite("pis", y);
  if (!(alpha > 0.0 && alpha <= 1.0)) detail::throw_input("pis", "alpha must lie in (0, 1]");
  const double L = interval.lower();
  const double U = interval.upper();
  return (U - L) + (2.0 / alpha) * (positive_part(L - y) + positive_part(y - U));
}

double expected_pis_uniform(const Interval& interval, double alpha) {
  detail::require_finite("expected_pis_uniform", alpha);
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    detail::throw_input("expected_pis_uniform", "alpha must lie in (0, 1]");
  }
  const double L = interval.lower();
  const double U = interval.upper();
  if (L < 0.0 || U > 1.0) {
    detail::throw_input("expected_pis_uniform", "interval must lie inside [0, 1]");
  }
  return (U - L) + (L * L + (U - 1.0) * (U - 1.0)) / alpha;
}

double crps_uniform(const UniformForecast& f, double y) {
  detail::require_finite("crps_uniform", y);
  const double L = f.low();
  const double H = f.high();
  const double w = H - L;
  if (y < L) return L - y + w / 3.0;
  if (y > H) return y - H + w / 3.0;
  const double a = y - L;
  const double b = H - y;
  return (a * a * a + b * b * b) / (3.0 * w * w);
}

double crps_quadrature(const std::function<double(double)>& cdf, double y,
                       const Interval& support, const QuadratureOptions& options) {
  detail::require_finite("crps_quadrature", y);
  const double a = std::min(support.lower(), y);
  const double b = std::max(support.upper(), y);
  auto integrand = [&](double x) {
    const double step = x >= y ? 1.0 : 0.0;
    const double d = cdf(x) - step;
    return d * d;
  };
  const double cuts[] = {support.lower(), support.upper(), y};
  return integrate(integrand, a, b, cuts, options);
}

double expected_crps_quadrature(const std::function<double(double)>& cdf,
                                const Interval& support, const QuadratureOptions& options) {
  QuadratureOptions inner = options;
  inner.abs_tol = options.abs_tol * 0.1;
  auto outer = [&](double y) { return crps_quadrature(cdf, y, support, inner); };
  const double cuts[] = {support.lower(), support.upper()};
  return integrate(outer, 0.0, 1.0, cuts, options);
}

double expected_crps_u0h(double h) {
  detail::require_finite("expected_crps_u0h", h);
  if (!(h > 0.0 && h <= 1.0)) detail::throw_input("expected_crps_u0h", "h must lie in (0, 1]");
  const double g = 1.0 - h;
  return h * h / 6.0 + h * g / 3.0 + g * g / 2.0;
}

double expected_crps_symmetric(double h) {
  detail::require_finite("expected_crps_symmetric", h);
  if (!(h >= 0.5 && h < 1.0)) {
    detail::throw_input("expected_crps_symmetric", "h must lie in [0.5, 1)");
  }
  const double w = h - (1.0 - h);
  const double g = 1.0 - h;
  return w * w / 6.0 + 2.0 * w * g / 3.0 + g * g;
}

double crps_scale_invariant(double v) {
  require_unit("crps_scale_invariant", v);
  const double u = v - 1.0;
  return (v * v * v - u * u * u) / 3.0;
}

double z_transform(double v) {
  require_unit("z_transform", v);
  const double d = 1.0 - 2.0 * v;
  return d * d;
}

TransformedScore transform_pit(double v) {
  return {v, crps_scale_invariant(v), z_transform(v)};
}

double null_cdf(double x) {
  detail::require_finite("null_cdf", x);
  if (x <= kCrpsMin) return 0.0;
  if (x >= kCrpsMax) return 1.0;
  return std::min(1.0, std::sqrt(4.0 * x - 1.0 / 3.0));
}

double null_pdf(double x) {
  detail::require_finite("null_pdf", x);
  if (x < kCrpsMin || x > kCrpsMax) return 0.0;
  const double arg = 4.0 * x - 1.0 / 3.0;
  if (x == kCrpsMin || arg <= 0.0) {
    throw SingularityError("null_pdf: density diverges at x = 1/12");
  }
  return 2.0 / std::sqrt(arg);
}

double quadratic_score(double r, bool event) {
  require_unit("quadratic_score", r);
  const double p = event ? r : 1.0 - r;
  const double q = 1.0 - p;
  return 2.0 * p - p * p - q * q;
}

double average_quadratic_score(std::span<const ForecastBin> bins) {
  double total = 0.0;
  long occasions = 0;
  for (const ForecastBin& bin : bins) {
    if (bin.assessed < 0 || bin.realized < 0 || bin.realized > bin.assessed) {
      detail::throw_input("average_quadratic_score", "bin counts inconsistent");
    }
    total += bin.realized * quadratic_score(bin.probability, true) +
             (bin.assessed - bin.realized) * quadratic_score(bin.probability, false);
    occasions += bin.assessed;
  }
  if (occasions == 0) detail::throw_input("average_quadratic_score", "no occasions");
  return total / static_cast<double>(occasions);
}

}  // namespace crpssa
