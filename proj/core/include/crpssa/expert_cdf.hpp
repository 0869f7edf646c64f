#pragma once

// Continuous expert CDFs interpolated from assessed quantiles: linear between
// knots (uniform density per inter-quantile panel, the minimally informative
// choice against a uniform background) on an intrinsic range that closes the
// tails.

#include <optional>
#include <span>
#include <vector>

namespace crpssa {

// Assessed values at strictly increasing probability levels in (0, 1).
class QuantileAssessment {
 public:
  QuantileAssessment(std::vector<double> levels, std::vector<double> values);

  const std::vector<double>& levels() const { return levels_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  // Value at the level closest to 0.5.
  double median() const;

 private:
  std::vector<double> levels_;
  std::vector<double> values_;
};

struct IntrinsicRange {
  double low;
  double high;
  double overshoot;
  bool expanded = false;  // zero span was widened by the epsilon rule
};

struct Knot {
  double x;
  double p;
};

struct PitResult {
  double value;
  bool out_of_support;  // y fell strictly outside [low, high] and was clamped
};

class PiecewiseLinearCdf {
 public:
  explicit PiecewiseLinearCdf(std::vector<Knot> knots);

  const std::vector<Knot>& knots() const { return knots_; }
  double support_low() const { return knots_.front().x; }
  double support_high() const { return knots_.back().x; }

  double operator()(double x) const;
  double inverse(double p) const;

 private:
  std::vector<Knot> knots_;
};

/// Range spanning every assessed value (and the realization, when given),
/// widened by overshoot * span on each side. A zero span is widened by
/// zero_span_epsilon * max(1, |x|) and flagged.
IntrinsicRange intrinsic_range(std::span<const QuantileAssessment> assessments,
                               std::optional<double> realization, double overshoot,
                               double zero_span_epsilon = 1e-6);

/// Knots (low, 0), (q_j, level_j)..., (high, 1). Values must lie strictly
/// inside (range.low, range.high).
PiecewiseLinearCdf build_cdf(const QuantileAssessment& q, const IntrinsicRange& range);

PitResult pit(const PiecewiseLinearCdf& cdf, double y);
double inverse_cdf(const PiecewiseLinearCdf& cdf, double p);

}  // namespace crpssa
