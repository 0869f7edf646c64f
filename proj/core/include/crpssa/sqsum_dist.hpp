#pragma once

// Exact law of S_n = U_1^2 + ... + U_n^2 for independent U_i ~ U[0, 1], i.e.
// the volume of the unit n-cube inside the origin-centred ball of radius
// sqrt(s). The CDF is the Fourier series
//
//   F_n(s) = 1/6 + s/n + (1/pi) Im sum_{k>=1} phi(w_k)^n e^{i w_k s} / k,
//   phi(w) = E[e^{-i w U^2}] = (C(sqrt w) - i S(sqrt w)) / sqrt w,  w_k = 2 pi k / n,
//
// with C, S the unnormalized Fresnel integrals. Two independent oracles live
// alongside it: a seeded Monte Carlo ECDF and a tabulated numerical
// self-convolution.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "crpssa/error.hpp"

namespace crpssa {

struct SqSumOptions {
  double truncation_tol = 1e-10;
  std::size_t max_terms = 100000;
};

// Thrown when the series needs more than max_terms terms.
class TruncationError : public NumericalError {
 public:
  TruncationError(const std::string& what, double tail_bound)
      : NumericalError(what), tail_bound_(tail_bound) {}
  double tail_bound() const { return tail_bound_; }

 private:
  double tail_bound_;
};

struct CdfEvaluation {
  double value;       // clamped to [0, 1]
  double raw;         // series value before clamping
  double tail_bound;  // bound on the neglected series tail, in CDF units
  bool clamped;
};

class SqSumDistribution {
 public:
  explicit SqSumDistribution(int n, SqSumOptions options = {});

  int n() const { return n_; }
  const SqSumOptions& options() const { return options_; }

  // Number of series terms kept (0 for n = 1, which uses sqrt(s) exactly).
  std::size_t terms() const { return coefficients_.size(); }
  double tail_bound() const { return tail_bound_; }

  double cdf(double s) const { return evaluate(s).value; }
  CdfEvaluation evaluate(double s) const;

  // F_n on the given abscissae (sorted ascending), with a running maximum so
  // the returned values are nondecreasing.
  std::vector<double> tabulate(std::span<const double> s) const;

  // |phi(w_k)^n| / k, the modulus of the k-th series term, and the analytic
  // bound used for truncation: beta(w_k)^n / k with
  // beta(w) = min(1, (sqrt(pi)/2 + 1/sqrt(w)) / sqrt(w)).
  double term_modulus(std::size_t k) const;
  double term_bound(std::size_t k) const;

 private:
  int n_;
  SqSumOptions options_;
  // phi(w_k)^n / k for k = 1..K. For n = 2 the asymptotic part -i/(4k^2) is
  // removed and summed in closed form.
  std::vector<std::complex<double>> coefficients_;
  double tail_bound_ = 0.0;
};

// Seeded Monte Carlo ECDF of S_n.
class EcdfOracle {
 public:
  EcdfOracle(int n, std::size_t sample_count, std::uint64_t seed);

  int n() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t sample_count() const { return samples_.size(); }
  const std::vector<double>& sorted_samples() const { return samples_; }

  // Fraction of samples <= s (right-continuous).
  double operator()(double s) const;

  // sup_s |ECDF(s) - F(s)| evaluated at the jump points.
  template <typename Cdf>
  double sup_distance(const Cdf& cdf) const {
    double d = 0.0;
    const double m = static_cast<double>(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      const double f = cdf(samples_[i]);
      d = std::max({d, (static_cast<double>(i) + 1.0) / m - f, f - static_cast<double>(i) / m});
    }
    return d;
  }

 private:
  int n_;
  std::uint64_t seed_;
  std::vector<double> samples_;
};

EcdfOracle ecdf_oracle(int n, std::size_t samples, std::uint64_t seed);
double ecdf_eval(const EcdfOracle& oracle, double s);

// Dvoretzky-Kiefer-Wolfowitz half-width: P(sup|ECDF - F| > eps) <= alpha.
double dkw_bound(std::size_t samples, double alpha);

// F_n tabulated on the uniform grid s_j = j * step, j = 0..n/step. Query
// points between nodes use 4-point Lagrange interpolation.
class TabulatedCdf {
 public:
  TabulatedCdf(int n, double step, std::vector<double> values);
  int n() const { return n_; }
  double step() const { return step_; }
  const std::vector<double>& values() const { return values_; }
  double operator()(double s) const;

 private:
  int n_;
  double step_;
  std::vector<double> values_;
};

// Numerical self-convolution of the U^2 law. Uses
//   F_m(s) = int_0^1 F_{m-1}(s - u^2) du,
// which absorbs the 1/(2 sqrt x) edge singularity into the substitution
// x = u^2. F_2 comes from adaptive quadrature of the exact F_1 = sqrt; later
// levels integrate the piecewise-linear interpolant of the previous table
// exactly. `grid_points` counts nodes per unit length of s. Returns the
// tables for 1..n. Throws NumericalError if the grid is too coarse.
std::vector<TabulatedCdf> convolution_tables(int n, int grid_points = 2000);
TabulatedCdf convolution_oracle(int n, int grid_points = 2000);

}  // namespace crpssa
