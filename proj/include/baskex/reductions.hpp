#pragma once

#include <optional>
#include <vector>

#include "baskex/basket.hpp"
#include "baskex/curves.hpp"

namespace baskex {

struct Fixing {
  double time = 0.0;
  double value = 0.0;
};

/// Discrete-averaging Asian option on a single asset. Observation times are
/// strictly increasing with the last one equal to the maturity. Observations
/// at t < 0 are seasoned fixings and require a value; the observation at
/// t = 0 (if any) is the current spot unless a fixing overrides it.
struct AsianSpec {
  double spot = 0.0;
  PiecewiseCurve rate{0.0};
  PiecewiseCurve yield{0.0};
  PiecewiseCurve vol{0.0};
  std::vector<double> observation_times;
  std::vector<double> averaging_weights;  // empty = equal weights 1/n
  double strike = 0.0;
  OptionType type = OptionType::Call;
  std::optional<double> discount_override;  // B(0, payment date)
  std::vector<Fixing> fixings;
};

/// One-asset pseudo-basket per live observation: forwards F(0,t_i), covariance
/// V_ij = int_0^{min(t_i,t_j)} sigma^2. Seasoned fixings fold into the strike.
BasketSpec asian_to_basket(const AsianSpec& spec);

struct AsianBasketAsset {
  double spot = 0.0;
  PiecewiseCurve rate{0.0};
  PiecewiseCurve yield{0.0};
  PiecewiseCurve vol{0.0};
};

/// Discrete-averaging Asian option on a basket of assets.
struct AsianBasketSpec {
  std::vector<AsianBasketAsset> assets;
  SymMatrix correlations;  // unit diagonal, symmetric PSD
  std::vector<double> basket_weights;
  std::vector<double> observation_times;
  std::vector<double> averaging_weights;  // empty = equal weights
  double strike = 0.0;
  OptionType type = OptionType::Call;
  PiecewiseCurve discount_rate{0.0};
  std::optional<double> discount_override;
};

/// n*m pseudo-assets indexed obs + n_obs*asset, weights w_i mu_j, forwards
/// F_j(0, t_i), covariance rho_jl int_0^{min(t_i,t_k)} sigma_j sigma_l.
BasketSpec asian_basket_to_basket(const AsianBasketSpec& spec);

struct CashDividend {
  double time = 0.0;
  double amount = 0.0;
};

/// Vanilla option under the piecewise-lognormal model: the asset follows
/// lognormal dynamics between ex-dividend dates and drops by the cash amount
/// at each.
struct DividendOptionSpec {
  double spot = 0.0;
  PiecewiseCurve rate{0.0};
  PiecewiseCurve vol{0.0};
  std::vector<CashDividend> dividends;  // times strictly inside (0, T)
  double strike = 0.0;
  double maturity = 0.0;
  OptionType type = OptionType::Call;
};

/// Share-measure reduction: a call of strike K becomes a put of strike spot
/// on an all-positive basket holding one asset per (non-zero) dividend with
/// forward D_j e^{-int_0^{t_j} r} and total variance int_0^{t_j} sigma^2,
/// plus a strike asset with forward K e^{-int_0^T r} and variance
/// int_0^T sigma^2; covariance has the min structure and the discount is 1.
/// Exact for the piecewise-lognormal terminal value.
BasketSpec dividends_to_basket(const DividendOptionSpec& spec);

}  // namespace baskex
