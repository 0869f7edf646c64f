#include "crpssa/fresnel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "crpssa/error.hpp"

namespace crpssa {

namespace {

using cplx = std::complex<double>;

// Below this argument the power series is used; above it the continued
// fraction. At the switch the largest series term is ~e^{x^2}/sqrt(x^2), so
// cancellation costs under two digits.
constexpr double kSeriesLimit = 1.8;

cplx series(double x) {
  // C + iS = sum_n i^n x^{2n+1} / (n! (2n+1))
  const double x2 = x * x;
  cplx term_power(x, 0.0);  // i^n x^{2n+1} / n!
  cplx sum(0.0, 0.0);
  for (int n = 0; n < 200; ++n) {
    const cplx term = term_power / static_cast<double>(2 * n + 1);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    term_power *= cplx(0.0, x2 / static_cast<double>(n + 1));
  }
  return sum;
}

// e^{i x^2} with the rounding error of x*x folded back in.
cplx unit_phase(double x) {
  const double hi = x * x;
  const double lo = std::fma(x, x, -hi);
  const double c = std::cos(hi);
  const double s = std::sin(hi);
  return {c - lo * s, s + lo * c};
}

cplx continued_fraction(double x) {
  // C + iS = sqrt(pi)/2 e^{i pi/4} (1 - erfc(z)),  z = e^{-i pi/4} x,
  // erfc(z) = (2z/sqrt(pi)) e^{-z^2} / (2z^2 + 1 - 1*2/(2z^2 + 5 - 3*4/(2z^2 + 9 - ...)))
  // evaluated with the modified Lentz algorithm. Here -z^2 = i x^2.
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = 1e-300;
  const double x2 = x * x;
  const cplx two_z2(0.0, -2.0 * x2);
  cplx b = two_z2 + 1.0;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int n = 1; n < 100000; ++n) {
    const double a = -static_cast<double>((2 * n - 1) * (2 * n));
    b += 4.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cplx delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < eps) break;
  }
  const double sqrt_half = std::numbers::sqrt2 / 2.0;
  const cplx z(x * sqrt_half, -x * sqrt_half);
  const cplx erfc_z = (2.0 / std::sqrt(std::numbers::pi)) * z * unit_phase(x) * h;
  const cplx front = cplx(kFresnelLimit, kFresnelLimit);  // sqrt(pi)/2 e^{i pi/4}
  return front * (1.0 - erfc_z);
}

}  // namespace

cplx fresnel_cs(double x) {
  detail::require_finite("fresnel", x);
  if (x < 0.0) detail::throw_input("fresnel", "negative argument");
  if (x == 0.0) return {0.0, 0.0};
  return x < kSeriesLimit ? series(x) : continued_fraction(x);
}

double fresnel_c(double x) { return fresnel_cs(x).real(); }

double fresnel_s(double x) { return fresnel_cs(x).imag(); }

}  // namespace crpssa
