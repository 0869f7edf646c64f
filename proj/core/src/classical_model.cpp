#include "crpssa/classical_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "crpssa/error.hpp"

namespace crpssa {

InterQuantileSample::InterQuantileSample(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.size() < 2) detail::throw_input("InterQuantileSample", "need at least two bins");
  for (int c : counts_) {
    if (c < 0) detail::throw_input("InterQuantileSample", "negative bin count");
  }
  n_ = std::accumulate(counts_.begin(), counts_.end(), 0);
}

std::vector<double> InterQuantileSample::frequencies() const {
  std::vector<double> s(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    s[i] = static_cast<double>(counts_[i]) / static_cast<double>(n_);
  }
  return s;
}

std::vector<double> theoretical_mass(std::span<const double> levels) {
  std::vector<double> p;
  double prev = 0.0;
  for (double l : levels) {
    p.push_back(l - prev);
    prev = l;
  }
  p.push_back(1.0 - prev);
  return p;
}

std::size_t bin_realization(const QuantileAssessment& q, double y) {
  detail::require_finite("bin_realization", y);
  std::size_t bin = 0;
  for (double v : q.values()) {
    if (y > v) ++bin;
  }
  return bin;
}

double relative_information(std::span<const double> s, std::span<const double> p) {
  if (s.size() != p.size()) detail::throw_input("relative_information", "size mismatch");
  double info = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(p[i] > 0.0)) detail::throw_input("relative_information", "p must be positive");
    if (s[i] > 0.0) info += s[i] * std::log(s[i] / p[i]);
  }
  return std::max(0.0, info);
}

namespace {

// Series for P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int n = 1; n < 10000; ++n) {
    const double an = -n * (n - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) detail::throw_input("gamma_q", "need a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double chi2_sf(double x, int df) {
  detail::require_finite("chi2_sf", x);
  if (df < 1) detail::throw_input("chi2_sf", "degrees of freedom must be >= 1");
  if (x < 0.0) detail::throw_input("chi2_sf", "x must be >= 0");
  return std::clamp(gamma_q(0.5 * df, 0.5 * x), 0.0, 1.0);
}

double cm_sa(const InterQuantileSample& sample, std::span<const double> mass, int df) {
  if (sample.n() < 1) detail::throw_input("cm_sa", "no realizations");
  if (mass.size() != sample.counts().size()) detail::throw_input("cm_sa", "bin count mismatch");
  const std::vector<double> s = sample.frequencies();
  const double statistic = 2.0 * sample.n() * relative_information(s, mass);
  return chi2_sf(statistic, df);
}

double cm_sa(const InterQuantileSample& sample, std::span<const double> mass) {
  return cm_sa(sample, mass, static_cast<int>(mass.size()) - 1);
}

double cm_sa(const InterQuantileSample& sample) { return cm_sa(sample, kTheoreticalMass); }

}  // namespace crpssa
