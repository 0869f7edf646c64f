#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace crpssa {

inline constexpr double kLogFloor = 1e-300;

struct LogGeomean {
  double value;
  std::size_t floored;  // entries raised to kLogFloor before taking logs
};

// (1/n) sum ln v_i, with entries below kLogFloor raised to it.
LogGeomean log_geomean(std::span<const double> values);

// nullopt for fewer than two points or zero variance in either input.
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);
std::optional<double> spearman(std::span<const double> xs, std::span<const double> ys);

// 1-based ranks, ties get the average rank.
std::vector<double> average_ranks(std::span<const double> xs);

// One-sample Kolmogorov-Smirnov distance of the sample from U[0, 1].
double ks_uniform(std::span<const double> sample);

// Asymptotic P(D_n > d) with Stephens' small-sample correction.
double ks_pvalue(double d, std::size_t n);

}  // namespace crpssa
