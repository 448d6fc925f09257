#include "baskex/reductions.hpp"

#include <algorithm>
#include <cmath>

#include "baskex/errors.hpp"

namespace baskex {

namespace {

std::vector<double> resolve_weights(const std::vector<double>& weights,
                                    std::size_t n, const char* what) {
  if (weights.empty())
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
  detail::require(weights.size() == n, std::string(what) +
                                           ": averaging weights must match "
                                           "observation count");
  for (double w : weights)
    detail::require(std::isfinite(w), "averaging weights must be finite");
  return weights;
}

void check_times(const std::vector<double>& t, const char* what) {
  detail::require(!t.empty(), std::string(what) + ": no observation times");
  for (std::size_t i = 0; i < t.size(); ++i) {
    detail::require(std::isfinite(t[i]), "observation times must be finite");
    if (i > 0)
      detail::require(t[i - 1] < t[i],
                      "observation times must be strictly increasing");
  }
  detail::require(t.back() > 0.0,
                  std::string(what) + ": maturity must be positive");
}

}  // namespace

BasketSpec asian_to_basket(const AsianSpec& spec) {
  detail::require(spec.spot > 0.0, "asian: spot must be positive");
  detail::require(spec.vol.non_negative(),
                  "asian: volatility curve must be non-negative");
  check_times(spec.observation_times, "asian");
  const std::size_t n_obs = spec.observation_times.size();
  const std::vector<double> w =
      resolve_weights(spec.averaging_weights, n_obs, "asian");
  const double maturity = spec.observation_times.back();

  double strike = spec.strike;
  std::vector<double> weights, forwards, total_var;
  weights.reserve(n_obs);
  for (std::size_t i = 0; i < n_obs; ++i) {
    const double t = spec.observation_times[i];
    if (t < 0.0) {
      // seasoned observation: the realized value is a constant, folded into
      // the strike
      const auto fix = std::find_if(
          spec.fixings.begin(), spec.fixings.end(),
          [&](const Fixing& f) { return f.time == t; });
      detail::require(fix != spec.fixings.end(),
                      "asian: missing fixing for past observation");
      strike -= w[i] * fix->value;
      continue;
    }
    double fwd;
    if (t == 0.0) {
      const auto fix = std::find_if(
          spec.fixings.begin(), spec.fixings.end(),
          [&](const Fixing& f) { return f.time == 0.0; });
      fwd = (fix != spec.fixings.end()) ? fix->value : spec.spot;
    } else {
      fwd = forward_price(spec.spot, spec.rate, spec.yield, t);
    }
    weights.push_back(w[i]);
    forwards.push_back(fwd);
    total_var.push_back(integrate_product(spec.vol, spec.vol, 0.0, t));
  }
  detail::require(!weights.empty(), "asian: no live observations left");

  const std::size_t n = weights.size();
  SymMatrix cov(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      cov.set(i, j, total_var[std::min(i, j)]);

  const double discount =
      spec.discount_override.value_or(std::exp(-spec.rate.integrate(0.0, maturity)));
  return BasketSpec(std::move(weights), std::move(forwards), std::move(cov),
                    strike, discount, maturity, spec.type);
}

BasketSpec asian_basket_to_basket(const AsianBasketSpec& spec) {
  const std::size_t m = spec.assets.size();
  detail::require(m >= 1, "asian basket: no assets");
  detail::require(spec.correlations.size() == m,
                  "asian basket: correlation matrix size mismatch");
  detail::require(spec.basket_weights.size() == m,
                  "asian basket: basket weights size mismatch");
  for (std::size_t j = 0; j < m; ++j) {
    detail::require(spec.assets[j].spot > 0.0,
                    "asian basket: spots must be positive");
    detail::require(spec.assets[j].vol.non_negative(),
                    "asian basket: volatility curves must be non-negative");
    detail::require(std::fabs(spec.correlations(j, j) - 1.0) <= 1e-12,
                    "asian basket: correlation diagonal must be 1");
  }
  check_times(spec.observation_times, "asian basket");
  detail::require(spec.observation_times.front() >= 0.0,
                  "asian basket: seasoned fixings not supported");
  const std::size_t n_obs = spec.observation_times.size();
  const std::vector<double> w =
      resolve_weights(spec.averaging_weights, n_obs, "asian basket");
  const double maturity = spec.observation_times.back();

  // pseudo-asset index: obs i of asset j lives at i + n_obs * j
  const std::size_t n = n_obs * m;
  std::vector<double> weights(n), forwards(n);
  SymMatrix cov(n);
  for (std::size_t j = 0; j < m; ++j) {
    const AsianBasketAsset& asset = spec.assets[j];
    for (std::size_t i = 0; i < n_obs; ++i) {
      const double t = spec.observation_times[i];
      const std::size_t idx = i + n_obs * j;
      weights[idx] = w[i] * spec.basket_weights[j];
      forwards[idx] = (t == 0.0)
                          ? asset.spot
                          : forward_price(asset.spot, asset.rate, asset.yield, t);
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t l = 0; l <= j; ++l) {
      const double rho = spec.correlations(j, l);
      for (std::size_t i = 0; i < n_obs; ++i) {
        for (std::size_t k = 0; k < n_obs; ++k) {
          const std::size_t a = i + n_obs * j;
          const std::size_t b = k + n_obs * l;
          if (l == j && b > a) continue;
          const double overlap = std::min(spec.observation_times[i],
                                          spec.observation_times[k]);
          cov.set(a, b,
                  rho * integrate_product(spec.assets[j].vol,
                                          spec.assets[l].vol, 0.0, overlap));
        }
      }
    }
  }

  const double discount = spec.discount_override.value_or(
      std::exp(-spec.discount_rate.integrate(0.0, maturity)));
  return BasketSpec(std::move(weights), std::move(forwards), std::move(cov),
                    spec.strike, discount, maturity, spec.type);
}

BasketSpec dividends_to_basket(const DividendOptionSpec& spec) {
  detail::require(spec.spot > 0.0, "dividend option: spot must be positive");
  detail::require(spec.maturity > 0.0,
                  "dividend option: maturity must be positive");
  detail::require(spec.strike > 0.0,
                  "dividend option: strike must be positive");
  detail::require(spec.vol.non_negative(),
                  "dividend option: volatility curve must be non-negative");
  double prev = 0.0;
  for (const CashDividend& d : spec.dividends) {
    detail::require(d.time > 0.0 && d.time < spec.maturity,
                    "dividend dates must lie strictly inside (0, maturity)");
    detail::require(d.time > prev, "dividend dates must be increasing");
    detail::require(d.amount >= 0.0 && std::isfinite(d.amount),
                    "dividend amounts must be non-negative");
    prev = d.time;
  }

  // One pseudo-asset per non-zero dividend (present value), plus the strike
  // asset anchored at maturity. Under the share measure the payoff flips to
  // the opposite type with strike = spot and unit discount.
  std::vector<double> anchor_times, forwards;
  double pv_divs = 0.0;
  for (const CashDividend& d : spec.dividends) {
    if (d.amount == 0.0) continue;
    const double pv = d.amount * std::exp(-spec.rate.integrate(0.0, d.time));
    anchor_times.push_back(d.time);
    forwards.push_back(pv);
    pv_divs += pv;
  }
  if (pv_divs >= spec.spot)
    throw std::domain_error(
        "dividend option: present value of dividends exceeds the spot");
  anchor_times.push_back(spec.maturity);
  forwards.push_back(spec.strike *
                     std::exp(-spec.rate.integrate(0.0, spec.maturity)));

  const std::size_t n = forwards.size();
  std::vector<double> weights(n, 1.0);
  SymMatrix cov(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      cov.set(i, j,
              integrate_product(spec.vol, spec.vol, 0.0,
                                std::min(anchor_times[i], anchor_times[j])));

  const OptionType flipped =
      spec.type == OptionType::Call ? OptionType::Put : OptionType::Call;
  return BasketSpec(std::move(weights), std::move(forwards), std::move(cov),
                    spec.spot, 1.0, spec.maturity, flipped);
}

}  // namespace baskex
