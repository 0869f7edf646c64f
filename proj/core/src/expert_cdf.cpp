#include "crpssa/expert_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crpssa/error.hpp"

namespace crpssa {

QuantileAssessment::QuantileAssessment(std::vector<double> levels, std::vector<double> values)
    : levels_(std::move(levels)), values_(std::move(values)) {
  if (levels_.empty()) detail::throw_input("QuantileAssessment", "no quantiles");
  if (levels_.size() != values_.size()) {
    detail::throw_input("QuantileAssessment", "levels and values differ in length");
  }
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    detail::require_finite("QuantileAssessment", levels_[j]);
    detail::require_finite("QuantileAssessment", values_[j]);
    if (!(levels_[j] > 0.0 && levels_[j] < 1.0)) {
      detail::throw_input("QuantileAssessment", "quantile levels must lie in (0, 1)");
    }
    if (j > 0 && !(levels_[j] > levels_[j - 1])) {
      detail::throw_input("QuantileAssessment", "quantile levels must be strictly increasing");
    }
    if (j > 0 && !(values_[j] > values_[j - 1])) {
      detail::throw_input("QuantileAssessment", "non-increasing quantile values");
    }
  }
}

double QuantileAssessment::median() const {
  std::size_t best = 0;
  for (std::size_t j = 1; j < levels_.size(); ++j) {
    if (std::abs(levels_[j] - 0.5) < std::abs(levels_[best] - 0.5)) best = j;
  }
  return values_[best];
}

PiecewiseLinearCdf::PiecewiseLinearCdf(std::vector<Knot> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 2) detail::throw_input("PiecewiseLinearCdf", "need at least two knots");
  if (knots_.front().p != 0.0 || knots_.back().p != 1.0) {
    detail::throw_input("PiecewiseLinearCdf", "knots must run from p = 0 to p = 1");
  }
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i].x > knots_[i - 1].x) || !(knots_[i].p > knots_[i - 1].p)) {
      detail::throw_input("PiecewiseLinearCdf", "knots must be strictly increasing in x and p");
    }
  }
}

double PiecewiseLinearCdf::operator()(double x) const {
  if (x <= knots_.front().x) return 0.0;
  if (x >= knots_.back().x) return 1.0;
  const auto hi = std::upper_bound(knots_.begin(), knots_.end(), x,
                                   [](double v, const Knot& k) { return v < k.x; });
  const auto lo = hi - 1;
  return lo->p + (hi->p - lo->p) * (x - lo->x) / (hi->x - lo->x);
}

double PiecewiseLinearCdf::inverse(double p) const {
  detail::require_finite("inverse_cdf", p);
  if (p < 0.0 || p > 1.0) detail::throw_input("inverse_cdf", "probability outside [0, 1]");
  if (p == 0.0) return knots_.front().x;
  if (p == 1.0) return knots_.back().x;
  const auto hi = std::upper_bound(knots_.begin(), knots_.end(), p,
                                   [](double v, const Knot& k) { return v < k.p; });
  const auto lo = hi - 1;
  if (p == lo->p) return lo->x;
  return lo->x + (hi->x - lo->x) * (p - lo->p) / (hi->p - lo->p);
}

IntrinsicRange intrinsic_range(std::span<const QuantileAssessment> assessments,
                               std::optional<double> realization, double overshoot,
                               double zero_span_epsilon) {
  if (assessments.empty()) detail::throw_input("intrinsic_range", "no assessments");
  detail::require_finite("intrinsic_range", overshoot);
  if (overshoot < 0.0) detail::throw_input("intrinsic_range", "overshoot must be >= 0");
  double lo = assessments.front().values().front();
  double hi = lo;
  for (const QuantileAssessment& q : assessments) {
    lo = std::min(lo, q.values().front());
    hi = std::max(hi, q.values().back());
  }
  if (realization) {
    detail::require_finite("intrinsic_range", *realization);
    lo = std::min(lo, *realization);
    hi = std::max(hi, *realization);
  }
  const double span = hi - lo;
  if (span == 0.0) {
    const double pad = zero_span_epsilon * std::max(1.0, std::abs(lo));
    return {lo - pad, hi + pad, overshoot, true};
  }
  return {lo - overshoot * span, hi + overshoot * span, overshoot, false};
}

PiecewiseLinearCdf build_cdf(const QuantileAssessment& q, const IntrinsicRange& range) {
  if (!(q.values().front() > range.low) || !(q.values().back() < range.high)) {
    std::ostringstream msg;
    msg << "quantiles [" << q.values().front() << ", " << q.values().back()
        << "] not strictly inside intrinsic range [" << range.low << ", " << range.high << "]";
    detail::throw_input("build_cdf", msg.str());
  }
  std::vector<Knot> knots;
  knots.reserve(q.size() + 2);
  knots.push_back({range.low, 0.0});
  for (std::size_t j = 0; j < q.size(); ++j) knots.push_back({q.values()[j], q.levels()[j]});
  knots.push_back({range.high, 1.0});
  return PiecewiseLinearCdf(std::move(knots));
}

PitResult pit(const PiecewiseLinearCdf& cdf, double y) {
  detail::require_finite("pit", y);
  const bool outside = y < cdf.support_low() || y > cdf.support_high();
  return {cdf(y), outside};
}

double inverse_cdf(const PiecewiseLinearCdf& cdf, double p) { return cdf.inverse(p); }

}  // namespace crpssa
