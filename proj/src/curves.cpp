#include "baskex/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "baskex/errors.hpp"

namespace baskex {

namespace {

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

}  // namespace

PiecewiseCurve::PiecewiseCurve(double constant_value) : values_{constant_value} {
  detail::require(std::isfinite(constant_value), "curve value must be finite");
}

PiecewiseCurve::PiecewiseCurve(std::vector<double> breakpoints,
                               std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  detail::require(values_.size() == breakpoints_.size() + 1,
                  "curve needs one value per segment (breakpoints + 1)");
  detail::require(all_finite(breakpoints_) && all_finite(values_),
                  "curve breakpoints and values must be finite");
  for (std::size_t k = 1; k < breakpoints_.size(); ++k)
    detail::require(breakpoints_[k - 1] < breakpoints_[k],
                    "curve breakpoints must be strictly increasing");
}

double PiecewiseCurve::operator()(double t) const {
  // index of the first breakpoint > t selects the segment
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

bool PiecewiseCurve::non_negative() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v >= 0.0; });
}

double PiecewiseCurve::integrate(double a, double b) const {
  detail::require(std::isfinite(a) && std::isfinite(b),
                  "integration bounds must be finite");
  detail::require(a <= b, "integrate requires a <= b");
  if (a == b) return 0.0;
  double sum = 0.0;
  double left = a;
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), a);
  std::size_t seg = static_cast<std::size_t>(it - breakpoints_.begin());
  while (seg < breakpoints_.size() && breakpoints_[seg] < b) {
    sum += values_[seg] * (breakpoints_[seg] - left);
    left = breakpoints_[seg];
    ++seg;
  }
  sum += values_[seg] * (b - left);
  return sum;
}

double integrate_product(const PiecewiseCurve& c1, const PiecewiseCurve& c2,
                         double a, double b) {
  detail::require(std::isfinite(a) && std::isfinite(b),
                  "integration bounds must be finite");
  detail::require(a <= b, "integrate_product requires a <= b");
  if (a == b) return 0.0;
  // walk the merged grid
  const auto& b1 = c1.breakpoints();
  const auto& b2 = c2.breakpoints();
  std::size_t i = static_cast<std::size_t>(
      std::upper_bound(b1.begin(), b1.end(), a) - b1.begin());
  std::size_t j = static_cast<std::size_t>(
      std::upper_bound(b2.begin(), b2.end(), a) - b2.begin());
  double left = a;
  double sum = 0.0;
  while (left < b) {
    double next = b;
    if (i < b1.size() && b1[i] < next) next = b1[i];
    if (j < b2.size() && b2[j] < next) next = b2[j];
    sum += c1.values()[i] * c2.values()[j] * (next - left);
    if (i < b1.size() && b1[i] == next) ++i;
    if (j < b2.size() && b2[j] == next) ++j;
    left = next;
  }
  return sum;
}

double forward_price(double spot, const PiecewiseCurve& rate,
                     const PiecewiseCurve& yield, double t) {
  detail::require(spot > 0.0, "spot must be positive");
  detail::require(t >= 0.0, "forward time must be non-negative");
  return spot * std::exp(rate.integrate(0.0, t) - yield.integrate(0.0, t));
}

}  // namespace baskex
