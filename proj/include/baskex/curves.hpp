#pragma once

#include <vector>

namespace baskex {

/// Piecewise-constant term structure (rates, yields, volatilities) as a
/// right-open step function of time: values()[k] applies on
/// [breakpoints()[k-1], breakpoints()[k]), values().front() before the first
/// breakpoint and values().back() from the last breakpoint onwards.
/// Times are plain year fractions. Immutable after construction.
class PiecewiseCurve {
 public:
  /// Constant curve.
  PiecewiseCurve(double constant_value);  // NOLINT: implicit by design
  /// values must hold breakpoints.size() + 1 entries; breakpoints strictly
  /// increasing and finite.
  PiecewiseCurve(std::vector<double> breakpoints, std::vector<double> values);

  double operator()(double t) const;

  /// Exact integral of the step function over [a, b]; requires a <= b.
  double integrate(double a, double b) const;

  bool is_constant() const { return breakpoints_.empty(); }
  bool non_negative() const;
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// Exact integral of c1(s)*c2(s) over [a, b] on the merged breakpoint grid.
double integrate_product(const PiecewiseCurve& c1, const PiecewiseCurve& c2,
                         double a, double b);

/// Forward price: spot * exp(int_0^t (r - q) ds). Requires spot > 0, t >= 0.
double forward_price(double spot, const PiecewiseCurve& rate,
                     const PiecewiseCurve& yield, double t);

}  // namespace baskex
