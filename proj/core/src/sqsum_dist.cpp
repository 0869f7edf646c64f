#include "crpssa/sqsum_dist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "crpssa/fresnel.hpp"
#include "crpssa/quadrature.hpp"
#include "crpssa/random.hpp"

namespace crpssa {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kHalfSqrtPi = 0.88622692545275801365;  // sqrt(pi)/2

cplx int_pow(cplx base, int exponent) {
  cplx result(1.0, 0.0);
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

double frequency(std::size_t k, int n) { return 2.0 * kPi * static_cast<double>(k) / n; }

// E[e^{-i w U^2}] = (C(sqrt w) - i S(sqrt w)) / sqrt w.
cplx characteristic(double w) {
  const double a = std::sqrt(w);
  return std::conj(fresnel_cs(a)) / a;
}

double modulus_bound(double w) {
  const double a = std::sqrt(w);
  return std::min(1.0, (kHalfSqrtPi + 1.0 / a) / a);
}

// For n = 2, phi(pi k)^2 = -i/(4k) + r_k with |r_k| <= sqrt(pi) w^{-3/2} + w^{-2}.
double residual_bound_n2(std::size_t k) {
  const double w = kPi * static_cast<double>(k);
  return (std::sqrt(kPi) * std::pow(w, -1.5) + 1.0 / (w * w)) / static_cast<double>(k);
}

// Sum over k > K of the analytic term bounds, divided by pi (CDF units).
double tail_after(std::size_t K, int n) {
  const double k = static_cast<double>(K);
  if (n == 2) {
    const double t = std::sqrt(kPi) * std::pow(kPi, -1.5) * std::pow(k, -1.5) / 1.5 +
                     std::pow(kPi, -2.0) * std::pow(k, -2.0) / 2.0;
    return t / kPi;
  }
  const double w = frequency(K, n);
  const double c = kHalfSqrtPi + 1.0 / std::sqrt(w);
  const double t = std::pow(c, n) * std::pow(n / (2.0 * kPi), 0.5 * n) * std::pow(k, -0.5 * n) *
                   (2.0 / n);
  return t / kPi;
}

}  // namespace

SqSumDistribution::SqSumDistribution(int n, SqSumOptions options) : n_(n), options_(options) {
  if (n < 1) detail::throw_input("SqSumDistribution", "n must be >= 1");
  if (!(options.truncation_tol > 0.0) || !std::isfinite(options.truncation_tol)) {
    detail::throw_input("SqSumDistribution", "truncation_tol must be positive");
  }
  if (options.max_terms < 1) detail::throw_input("SqSumDistribution", "max_terms must be >= 1");
  if (n == 1) return;

  for (std::size_t k = 1;; ++k) {
    if (k > options.max_terms) {
      const double tail = tail_after(options.max_terms, n);
      std::ostringstream msg;
      msg << "F_" << n << " series did not reach truncation_tol " << options.truncation_tol
          << " within " << options.max_terms << " terms (tail bound " << tail << ")";
      throw TruncationError(msg.str(), tail);
    }
    const double kd = static_cast<double>(k);
    cplx c = int_pow(characteristic(frequency(k, n)), n) / kd;
    if (n == 2) c += cplx(0.0, 1.0 / (4.0 * kd * kd));
    coefficients_.push_back(c);
    if (k > static_cast<std::size_t>(n) && term_bound(k) < options.truncation_tol) {
      tail_bound_ = tail_after(k, n);
      break;
    }
  }
}

double SqSumDistribution::term_bound(std::size_t k) const {
  if (n_ == 1 || k == 0) return 0.0;
  if (n_ == 2) return residual_bound_n2(k);
  return std::pow(modulus_bound(frequency(k, n_)), n_) / static_cast<double>(k);
}

double SqSumDistribution::term_modulus(std::size_t k) const {
  if (n_ == 1 || k == 0) return 0.0;
  const double kd = static_cast<double>(k);
  return std::abs(int_pow(characteristic(frequency(k, n_)), n_)) / kd;
}

CdfEvaluation SqSumDistribution::evaluate(double s) const {
  detail::require_finite("SqSumDistribution::cdf", s);
  const double n = static_cast<double>(n_);
  if (s <= 0.0) return {0.0, 0.0, 0.0, false};
  if (s >= n) return {1.0, 1.0, 0.0, false};
  if (n_ == 1) {
    const double v = std::sqrt(s);
    return {v, v, 0.0, false};
  }

  const double t = s / n;
  // e^{2 pi i k t} by rotation, re-anchored every kAnchor terms.
  constexpr std::size_t kAnchor = 64;
  const cplx step = std::polar(1.0, 2.0 * kPi * t);
  double sum = 0.0;
  cplx rot;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (i % kAnchor == 0) {
      rot = std::polar(1.0, 2.0 * kPi * std::fmod(static_cast<double>(i + 1) * t, 1.0));
    } else {
      rot *= step;
    }
    const cplx& c = coefficients_[i];
    sum += c.real() * rot.imag() + c.imag() * rot.real();
  }
  double raw = 1.0 / 6.0 + t + sum / kPi;
  if (n_ == 2) {
    // sum_k cos(kx)/k^2 = pi^2/6 - pi x/2 + x^2/4 on [0, 2 pi], x = pi s.
    const double x = kPi * s;
    raw -= (kPi * kPi / 6.0 - kPi * x / 2.0 + x * x / 4.0) / (4.0 * kPi);
  }
  const double value = std::clamp(raw, 0.0, 1.0);
  return {value, raw, tail_bound_, value != raw};
}

std::vector<double> SqSumDistribution::tabulate(std::span<const double> s) const {
  std::vector<double> out;
  out.reserve(s.size());
  double running = 0.0;
  for (double x : s) {
    running = std::max(running, cdf(x));
    out.push_back(running);
  }
  return out;
}

EcdfOracle::EcdfOracle(int n, std::size_t sample_count, std::uint64_t seed)
    : n_(n), seed_(seed) {
  if (n < 1) detail::throw_input("ecdf_oracle", "n must be >= 1");
  if (sample_count < 1) detail::throw_input("ecdf_oracle", "need at least one sample");
  Rng rng(seed);
  samples_.resize(sample_count);
  for (double& x : samples_) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double u = rng.uniform();
      acc += u * u;
    }
    x = acc;
  }
  std::sort(samples_.begin(), samples_.end());
}

double EcdfOracle::operator()(double s) const {
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), s);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

EcdfOracle ecdf_oracle(int n, std::size_t samples, std::uint64_t seed) {
  return EcdfOracle(n, samples, seed);
}

double ecdf_eval(const EcdfOracle& oracle, double s) { return oracle(s); }

double dkw_bound(std::size_t samples, double alpha) {
  if (samples < 1 || !(alpha > 0.0 && alpha < 1.0)) {
    detail::throw_input("dkw_bound", "need samples >= 1 and alpha in (0, 1)");
  }
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(samples)));
}

TabulatedCdf::TabulatedCdf(int n, double step, std::vector<double> values)
    : n_(n), step_(step), values_(std::move(values)) {
  if (values_.size() < 4) detail::throw_input("TabulatedCdf", "need at least four nodes");
}

double TabulatedCdf::operator()(double s) const {
  if (s <= 0.0) return 0.0;
  if (s >= n_) return 1.0;
  const std::size_t last = values_.size() - 1;
  const double pos = s / step_;
  const auto j = std::min(static_cast<std::size_t>(pos), last - 1);
  const double frac = pos - static_cast<double>(j);
  if (frac == 0.0) return values_[j];
  // Nodes j-1..j+2, shifted inward at the table ends.
  const std::size_t first = std::clamp<std::size_t>(j == 0 ? 0 : j - 1, 0, last - 3);
  const double x = pos - static_cast<double>(first);
  double result = 0.0;
  for (std::size_t a = 0; a < 4; ++a) {
    double w = 1.0;
    for (std::size_t b = 0; b < 4; ++b) {
      if (b != a) w *= (x - static_cast<double>(b)) / (static_cast<double>(a) - static_cast<double>(b));
    }
    result += w * values_[first + a];
  }
  return std::clamp(result, 0.0, 1.0);
}

std::vector<TabulatedCdf> convolution_tables(int n, int grid_points) {
  if (n < 1) detail::throw_input("convolution_oracle", "n must be >= 1");
  if (grid_points < 100) {
    std::ostringstream msg;
    msg << "convolution_oracle: grid of " << grid_points
        << " points per unit cannot resolve the sqrt edge behaviour (need >= 100)";
    throw NumericalError(msg.str());
  }
  const std::size_t G = static_cast<std::size_t>(grid_points);
  const double h = 1.0 / static_cast<double>(G);

  std::vector<TabulatedCdf> tables;
  std::vector<double> level(G + 1);
  for (std::size_t j = 0; j <= G; ++j) level[j] = std::sqrt(static_cast<double>(j) * h);
  level[G] = 1.0;
  tables.emplace_back(1, h, level);
  if (n == 1) return tables;

  // F_2(s) = int_0^1 F_1(s - u^2) du with the exact F_1.
  {
    std::vector<double> next(2 * G + 1);
    QuadratureOptions q{1e-14, 0.0, 2000};
    for (std::size_t j = 1; j < 2 * G; ++j) {
      const double s = static_cast<double>(j) * h;
      auto f = [s](double u) {
        const double x = s - u * u;
        if (x <= 0.0) return 0.0;
        return x >= 1.0 ? 1.0 : std::sqrt(x);
      };
      const double cuts[] = {std::sqrt(std::min(s, 1.0)), s > 1.0 ? std::sqrt(s - 1.0) : 0.0};
      next[j] = integrate_adaptive(f, 0.0, 1.0, cuts, q).value;
    }
    next[0] = 0.0;
    next[2 * G] = 1.0;
    level = std::move(next);
    tables.emplace_back(2, h, level);
  }

  // Cell i of the u-axis, u in [sqrt(i h), sqrt((i+1) h)], sees the
  // previous level on x in [s - (i+1) h, s - i h]. With a linear interpolant
  // there, its contribution is T[c] (du - A_i) + T[c+1] A_i.
  std::vector<double> du(G), weight_hi(G);
  for (std::size_t i = 0; i < G; ++i) {
    const double ua = std::sqrt(static_cast<double>(i) * h);
    const double ub = std::sqrt(static_cast<double>(i + 1) * h);
    const double d = h / (ua + ub);
    du[i] = d;
    weight_hi[i] = d * d * (2.0 * ub + ua) / (3.0 * h);
  }

  for (int m = 3; m <= n; ++m) {
    const std::size_t prev_last = static_cast<std::size_t>(m - 1) * G;
    const std::size_t last = static_cast<std::size_t>(m) * G;
    std::vector<double> next(last + 1, 0.0);
    for (std::size_t j = 1; j < last; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < G; ++i) {
        if (j < i + 1) break;  // x entirely below zero from here on
        const std::size_t c = j - i - 1;
        if (c >= prev_last) {
          acc += du[i];
        } else {
          acc += level[c] * (du[i] - weight_hi[i]) + level[c + 1] * weight_hi[i];
        }
      }
      next[j] = acc;
    }
    next[last] = 1.0;
    level = std::move(next);
    tables.emplace_back(m, h, level);
  }
  return tables;
}

TabulatedCdf convolution_oracle(int n, int grid_points) {
  auto tables = convolution_tables(n, grid_points);
  return std::move(tables.back());
}

}  // namespace crpssa
