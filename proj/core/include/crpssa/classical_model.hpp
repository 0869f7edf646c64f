#pragma once

// Classical Model statistical accuracy: realizations are binned against the
// assessed quantiles, the empirical bin distribution s is compared with the
// theoretical inter-quantile mass p through 2 n I(s, p), and SA is the
// chi-square survival probability of that statistic.

#include <cstddef>
#include <span>
#include <vector>

#include "crpssa/expert_cdf.hpp"

namespace crpssa {

// Counts per inter-quantile bin (bins = quantiles + 1).
class InterQuantileSample {
 public:
  explicit InterQuantileSample(std::vector<int> counts);
  const std::vector<int>& counts() const { return counts_; }
  int n() const { return n_; }
  std::vector<double> frequencies() const;

 private:
  std::vector<int> counts_;
  int n_ = 0;
};

// Mass between consecutive levels, with 0 and 1 appended at the ends. For
// levels (0.05, 0.5, 0.95) this is (0.05, 0.45, 0.45, 0.05).
std::vector<double> theoretical_mass(std::span<const double> levels);
inline const std::vector<double> kTheoreticalMass{0.05, 0.45, 0.45, 0.05};

// Bin index in 0..q.size(); a realization equal to a quantile value goes to
// the lower bin.
std::size_t bin_realization(const QuantileAssessment& q, double y);

// sum s_i ln(s_i / p_i) with 0 ln 0 = 0.
double relative_information(std::span<const double> s, std::span<const double> p);

// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

// 1 - F_chi2(x; df).
double chi2_sf(double x, int df);

// chi2_sf(2 n I(s, p), df); df defaults to the number of quantiles.
double cm_sa(const InterQuantileSample& sample, std::span<const double> mass);
double cm_sa(const InterQuantileSample& sample, std::span<const double> mass, int df);
double cm_sa(const InterQuantileSample& sample);

}  // namespace crpssa
