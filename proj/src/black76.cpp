#include "baskex/black76.hpp"

#include <cmath>

#include "baskex/errors.hpp"

namespace baskex {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
}  // namespace

double norm_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

// Wichura's algorithm AS 241, rational approximation PPND16 (~1e-16 relative).
double norm_ppf(double p) {
  detail::require(p > 0.0 && p < 1.0, "norm_ppf requires p in (0,1)");
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    value =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
  }
  return (q < 0.0) ? -value : value;
}

namespace {

void check_black_args(double forward, double strike, double variance) {
  detail::require(forward > 0.0, "black: forward must be positive");
  detail::require(strike > 0.0, "black: strike must be positive");
  detail::require(variance >= 0.0, "black: variance must be non-negative");
}

}  // namespace

double black(double forward, double strike, double variance, double discount,
             OptionType type) {
  check_black_args(forward, strike, variance);
  const double eta = option_sign(type);
  if (variance == 0.0)
    return discount * std::max(eta * (forward - strike), 0.0);
  const double s = std::sqrt(variance);
  const double d1 = (std::log(forward / strike) + 0.5 * variance) / s;
  const double d2 = d1 - s;
  return eta * discount *
         (forward * norm_cdf(eta * d1) - strike * norm_cdf(eta * d2));
}

double black(const BlackArgs& a) {
  return black(a.forward, a.strike, a.variance, a.discount, a.type);
}

double black_dk(const BlackArgs& a) {
  check_black_args(a.forward, a.strike, a.variance);
  const double eta = option_sign(a.type);
  if (a.variance == 0.0) {
    // limiting step at zero variance
    double phi;
    if (a.forward > a.strike)
      phi = eta > 0.0 ? 1.0 : 0.0;
    else if (a.forward < a.strike)
      phi = eta > 0.0 ? 0.0 : 1.0;
    else
      phi = 0.5;
    return -eta * a.discount * phi;
  }
  const double s = std::sqrt(a.variance);
  const double d2 = (std::log(a.forward / a.strike) - 0.5 * a.variance) / s;
  return -eta * a.discount * norm_cdf(eta * d2);
}

double black_d2k(const BlackArgs& a) {
  check_black_args(a.forward, a.strike, a.variance);
  detail::require(a.variance > 0.0,
                  "black_d2k: undefined at zero variance");
  const double s = std::sqrt(a.variance);
  const double d2 = (std::log(a.forward / a.strike) - 0.5 * a.variance) / s;
  return a.discount * norm_pdf(d2) / (a.strike * s);
}

double black_d3k(const BlackArgs& a) {
  check_black_args(a.forward, a.strike, a.variance);
  detail::require(a.variance > 0.0,
                  "black_d3k: undefined at zero variance");
  const double s = std::sqrt(a.variance);
  const double d2 = (std::log(a.forward / a.strike) - 0.5 * a.variance) / s;
  return a.discount * norm_pdf(d2) / (a.strike * a.strike * s) *
         (d2 / s - 1.0);
}

}  // namespace baskex
