#pragma once

namespace baskex {

/// Standard normal CDF, erf-based (absolute error below 1e-15).
double norm_cdf(double x);
/// Standard normal density.
double norm_pdf(double x);
/// Inverse standard normal CDF for p in (0, 1), Wichura's PPND16.
double norm_ppf(double p);

enum class OptionType { Call, Put };

inline double option_sign(OptionType t) {
  return t == OptionType::Call ? 1.0 : -1.0;
}

struct BlackArgs {
  double forward = 0.0;
  double strike = 0.0;
  double variance = 0.0;  // total variance to maturity
  double maturity = 0.0;  // carried for signature fidelity only
  double discount = 1.0;
  OptionType type = OptionType::Call;
};

/// Black-76 undiscounted-forward formula:
///   eta * B * (F Phi(eta d1) - K Phi(eta d2)),
/// d1 = (ln(F/K) + v/2)/sqrt(v), d2 = d1 - sqrt(v).
/// Zero variance returns discounted intrinsic value.
double black(const BlackArgs& args);
double black(double forward, double strike, double variance, double discount,
             OptionType type);

/// First strike derivative: -eta B Phi(eta d2). Defined for v = 0 as the
/// limiting step (-eta B on the exercised side).
double black_dk(const BlackArgs& args);
/// Second strike derivative: B phi(d2) / (K sqrt(v)); requires v > 0.
double black_d2k(const BlackArgs& args);
/// Third strike derivative: B phi(d2) / (K^2 sqrt(v)) * (d2/sqrt(v) - 1);
/// requires v > 0.
double black_d3k(const BlackArgs& args);

}  // namespace baskex
