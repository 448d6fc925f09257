#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "baskex/expansion.hpp"
#include "baskex/mc.hpp"
#include "baskex/reductions.hpp"

using namespace baskex;

namespace {

AsianSpec two_obs_asian() {
  AsianSpec spec;
  spec.spot = 100.0;
  spec.rate = PiecewiseCurve(0.05);
  spec.vol = PiecewiseCurve(0.5);
  spec.observation_times = {0.1, 1.1};
  spec.strike = 100.0;
  return spec;
}

}  // namespace

TEST_CASE("single observation at maturity reduces to Black-Scholes") {
  AsianSpec spec;
  spec.spot = 100.0;
  spec.rate = PiecewiseCurve(0.03);
  spec.yield = PiecewiseCurve(0.01);
  spec.vol = PiecewiseCurve(0.2);
  spec.observation_times = {2.0};
  spec.strike = 95.0;
  const BasketSpec basket = asian_to_basket(spec);
  REQUIRE(basket.size() == 1);
  const double fwd = 100.0 * std::exp((0.03 - 0.01) * 2.0);
  const double reference =
      black(fwd, 95.0, 0.04 * 2.0, std::exp(-0.06), OptionType::Call);
  for (int order = 0; order <= 3; ++order)
    CHECK(expand_price(basket, ProxyKind::VorstGeometric, order).price ==
          doctest::Approx(reference).epsilon(1e-12));
}

TEST_CASE("two observations: direct integrals") {
  const BasketSpec basket = asian_to_basket(two_obs_asian());
  REQUIRE(basket.size() == 2);
  CHECK(basket.covariance()(0, 0) == doctest::Approx(0.025).epsilon(1e-14));
  CHECK(basket.covariance()(0, 1) == doctest::Approx(0.025).epsilon(1e-14));
  CHECK(basket.covariance()(1, 1) == doctest::Approx(0.275).epsilon(1e-14));
  CHECK(basket.forwards()[0] ==
        doctest::Approx(100.0 * std::exp(0.005)).epsilon(1e-14));
  CHECK(basket.forwards()[1] ==
        doctest::Approx(100.0 * std::exp(0.055)).epsilon(1e-14));
  CHECK(basket.discount() ==
        doctest::Approx(std::exp(-0.05 * 1.1)).epsilon(1e-14));
  CHECK(basket.maturity() == doctest::Approx(1.1));
}

TEST_CASE("two observations: expansion matches the MC oracle") {
  const BasketSpec basket = asian_to_basket(two_obs_asian());
  McConfig cfg;
  cfg.paths = 1 << 19;
  cfg.seed = 9001;
  cfg.sampler = McSampler::LowDiscrepancy;
  const PriceResult mc = price_mc(basket, cfg);
  const PriceResult vg3 = expand_price(basket, ProxyKind::VorstGeometric, 3);
  CHECK(std::fabs(vg3.price - mc.price) <=
        3.0 * mc.std_error.value() + 2e-3);
}

TEST_CASE("observation at t=0 becomes a zero-variance asset") {
  AsianSpec spec;
  spec.spot = 100.0;
  spec.rate = PiecewiseCurve(0.09);
  spec.vol = PiecewiseCurve(0.3);
  spec.observation_times = {0.0, 1.0, 2.0};
  spec.strike = 100.0;
  const BasketSpec basket = asian_to_basket(spec);
  REQUIRE(basket.size() == 3);
  CHECK(basket.forwards()[0] == 100.0);
  CHECK(basket.covariance()(0, 0) == 0.0);
  CHECK(basket.covariance()(0, 2) == 0.0);
  // factorization of the singular covariance must succeed
  const PsdFactor f = factor_psd(basket.covariance());
  CHECK(f.rank == 2);
}

TEST_CASE("seasoned fixings fold into the strike") {
  AsianSpec spec;
  spec.spot = 100.0;
  spec.rate = PiecewiseCurve(0.02);
  spec.vol = PiecewiseCurve(0.25);
  spec.observation_times = {-0.5, -0.25, 0.5, 1.0};
  spec.averaging_weights = {0.25, 0.25, 0.25, 0.25};
  spec.strike = 100.0;
  spec.fixings = {{-0.5, 96.0}, {-0.25, 102.0}};
  const BasketSpec basket = asian_to_basket(spec);
  REQUIRE(basket.size() == 2);
  CHECK(basket.strike() ==
        doctest::Approx(100.0 - 0.25 * 96.0 - 0.25 * 102.0).epsilon(1e-14));
  CHECK(basket.maturity() == 1.0);
}

TEST_CASE("missing fixing for a past observation is an error") {
  AsianSpec spec;
  spec.spot = 100.0;
  spec.rate = PiecewiseCurve(0.02);
  spec.vol = PiecewiseCurve(0.25);
  spec.observation_times = {-0.5, 1.0};
  spec.strike = 100.0;
  CHECK_THROWS_AS(asian_to_basket(spec), std::invalid_argument);
}

TEST_CASE("forward consistency of the reduced average") {
  AsianSpec spec;
  spec.spot = 80.0;
  spec.rate = PiecewiseCurve({1.0}, {0.04, 0.06});
  spec.yield = PiecewiseCurve(0.015);
  spec.vol = PiecewiseCurve({0.7}, {0.3, 0.22});
  spec.observation_times = {0.25, 0.5, 0.75, 1.0, 1.25, 1.5};
  spec.strike = 80.0;
  const BasketSpec basket = asian_to_basket(spec);
  double reduced = 0.0;
  for (std::size_t i = 0; i < basket.size(); ++i)
    reduced += basket.weights()[i] * basket.forwards()[i];
  double direct = 0.0;
  for (double t : spec.observation_times)
    direct += forward_price(80.0, spec.rate, spec.yield, t) / 6.0;
  CHECK(reduced == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("asian covariance has the min structure and is PSD") {
  AsianSpec spec;
  spec.spot = 50.0;
  spec.rate = PiecewiseCurve(0.01);
  spec.vol = PiecewiseCurve({0.9, 2.1}, {0.2, 0.45, 0.3});
  for (int i = 1; i <= 12; ++i)
    spec.observation_times.push_back(0.25 * i);
  spec.strike = 50.0;
  const BasketSpec basket = asian_to_basket(spec);
  for (std::size_t i = 0; i < basket.size(); ++i)
    for (std::size_t j = i; j < basket.size(); ++j)
      CHECK(basket.covariance()(i, j) ==
            doctest::Approx(basket.covariance()(i, i)).epsilon(1e-15));
  const PsdFactor f = factor_psd(basket.covariance());
  // reconstruction
  for (std::size_t i = 0; i < basket.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < f.rank; ++k)
        dot += f.entry(i, k) * f.entry(j, k);
      CHECK(dot == doctest::Approx(basket.covariance()(i, j)).epsilon(1e-10));
    }
}

TEST_CASE("asian basket with one asset equals the plain asian reduction") {
  AsianSpec asian;
  asian.spot = 42.0;
  asian.rate = PiecewiseCurve(0.03);
  asian.yield = PiecewiseCurve(0.005);
  asian.vol = PiecewiseCurve({0.6}, {0.35, 0.28});
  asian.observation_times = {0.25, 0.75, 1.25};
  asian.strike = 44.0;

  AsianBasketSpec ab;
  ab.assets.push_back({42.0, asian.rate, asian.yield, asian.vol});
  ab.correlations = SymMatrix(1);
  ab.correlations.set(0, 0, 1.0);
  ab.basket_weights = {1.0};
  ab.observation_times = asian.observation_times;
  ab.strike = 44.0;
  ab.discount_rate = asian.rate;

  const BasketSpec a = asian_to_basket(asian);
  const BasketSpec b = asian_basket_to_basket(ab);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(b.weights()[i] == doctest::Approx(a.weights()[i]).epsilon(1e-15));
    CHECK(b.forwards()[i] == doctest::Approx(a.forwards()[i]).epsilon(1e-15));
    for (std::size_t j = 0; j <= i; ++j)
      CHECK(b.covariance()(i, j) ==
            doctest::Approx(a.covariance()(i, j)).epsilon(1e-13));
  }
  CHECK(b.discount() == doctest::Approx(a.discount()).epsilon(1e-15));
}

TEST_CASE("asian basket with one observation equals the plain basket") {
  AsianBasketSpec ab;
  const double vols[] = {0.3, 0.4};
  for (double v : vols) ab.assets.push_back({100.0, PiecewiseCurve(0.02),
                                             PiecewiseCurve(0.0),
                                             PiecewiseCurve(v)});
  ab.correlations = SymMatrix(2);
  ab.correlations.set(0, 0, 1.0);
  ab.correlations.set(1, 1, 1.0);
  ab.correlations.set(0, 1, 0.65);
  ab.basket_weights = {0.5, 0.5};
  ab.observation_times = {2.0};
  ab.strike = 100.0;
  ab.discount_rate = PiecewiseCurve(0.02);
  const BasketSpec b = asian_basket_to_basket(ab);
  REQUIRE(b.size() == 2);
  CHECK(b.covariance()(0, 0) == doctest::Approx(0.09 * 2.0).epsilon(1e-14));
  CHECK(b.covariance()(1, 1) == doctest::Approx(0.16 * 2.0).epsilon(1e-14));
  CHECK(b.covariance()(0, 1) ==
        doctest::Approx(0.65 * 0.3 * 0.4 * 2.0).epsilon(1e-14));
}

TEST_CASE("asian basket five stocks five observations vs MC oracle") {
  AsianBasketSpec ab;
  const double spots[] = {95.0, 110.0, 87.0, 102.0, 120.0};
  const double vols[] = {0.22, 0.31, 0.27, 0.19, 0.35};
  for (int j = 0; j < 5; ++j)
    ab.assets.push_back({spots[j], PiecewiseCurve(0.04), PiecewiseCurve(0.0),
                         PiecewiseCurve(vols[j])});
  ab.correlations = SymMatrix(5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j <= i; ++j)
      ab.correlations.set(i, j, i == j ? 1.0 : 0.45);
  ab.basket_weights = {0.2, 0.2, 0.2, 0.2, 0.2};
  // monthly over the last five months of a one-year option
  ab.observation_times = {8.0 / 12, 9.0 / 12, 10.0 / 12, 11.0 / 12, 1.0};
  ab.strike = 100.0;
  ab.discount_rate = PiecewiseCurve(0.04);
  const BasketSpec basket = asian_basket_to_basket(ab);
  REQUIRE(basket.size() == 25);

  McConfig cfg;
  cfg.paths = 1 << 18;
  cfg.seed = 31337;
  cfg.sampler = McSampler::LowDiscrepancy;
  const PriceResult mc = price_mc(basket, cfg);
  const PriceResult vg3 = expand_price(basket, ProxyKind::VorstGeometric, 3);
  CHECK(std::fabs(vg3.price - mc.price) <=
        3.0 * mc.std_error.value() + 2e-3);
}

TEST_CASE("no dividends reduces to a single-asset Black-Scholes put-call") {
  DividendOptionSpec spec;
  spec.spot = 100.0;
  spec.rate = PiecewiseCurve(0.06);
  spec.vol = PiecewiseCurve(0.25);
  spec.maturity = 7.0;
  spec.strike = 100.0;
  const BasketSpec basket = dividends_to_basket(spec);
  REQUIRE(basket.size() == 1);
  const double reference = black(100.0 * std::exp(0.42), 100.0, 0.0625 * 7.0,
                                 std::exp(-0.42), OptionType::Call);
  for (int order = 0; order <= 3; ++order)
    CHECK(expand_price(basket, ProxyKind::VorstLevy, order).price ==
          doctest::Approx(reference).epsilon(1e-12));
}

TEST_CASE("zero-amount dividends are dropped") {
  DividendOptionSpec spec;
  spec.spot = 100.0;
  spec.rate = PiecewiseCurve(0.06);
  spec.vol = PiecewiseCurve(0.25);
  spec.maturity = 2.0;
  spec.strike = 100.0;
  spec.dividends = {{0.5, 0.0}, {1.0, 0.0}};
  CHECK(dividends_to_basket(spec).size() == 1);
}

TEST_CASE("dividend validation") {
  DividendOptionSpec spec;
  spec.spot = 100.0;
  spec.rate = PiecewiseCurve(0.06);
  spec.vol = PiecewiseCurve(0.25);
  spec.maturity = 2.0;
  spec.strike = 100.0;
  spec.dividends = {{2.5, 1.0}};  // beyond maturity
  CHECK_THROWS_AS(dividends_to_basket(spec), std::invalid_argument);
  spec.dividends = {{-0.1, 1.0}};
  CHECK_THROWS_AS(dividends_to_basket(spec), std::invalid_argument);
  spec.dividends = {{1.0, 200.0}};  // exceeds the spot in present value
  CHECK_THROWS_AS(dividends_to_basket(spec), std::domain_error);
}

TEST_CASE("published seven-year dividend prices") {
  DividendOptionSpec spec;
  spec.spot = 100.0;
  spec.rate = PiecewiseCurve(0.06);
  spec.vol = PiecewiseCurve(0.25);
  spec.maturity = 7.0;
  const double amounts[] = {6.0, 6.5, 7.0, 7.5, 8.0, 8.0, 8.0};
  for (int j = 0; j < 7; ++j)
    spec.dividends.push_back({0.9 + j, amounts[j]});
  spec.strike = 100.0;
  const BasketSpec basket = dividends_to_basket(spec);
  CHECK(expand_price(basket, ProxyKind::VorstLevy, 3).price ==
        doctest::Approx(19.48226).epsilon(5e-6));
  CHECK(expand_price(basket, ProxyKind::VorstLevy, 2).price ==
        doctest::Approx(19.48181).epsilon(5e-6));
}

TEST_CASE("dividend reduction agrees with the MC oracle") {
  DividendOptionSpec spec;
  spec.spot = 100.0;
  spec.rate = PiecewiseCurve(0.06);
  spec.vol = PiecewiseCurve(0.25);
  spec.maturity = 7.0;
  const double amounts[] = {6.0, 6.5, 7.0, 7.5, 8.0, 8.0, 8.0};
  for (int j = 0; j < 7; ++j)
    spec.dividends.push_back({0.9 + j, amounts[j]});
  spec.strike = 100.0;
  const BasketSpec basket = dividends_to_basket(spec);
  McConfig cfg;
  cfg.paths = 1 << 19;
  cfg.seed = 777;
  cfg.sampler = McSampler::LowDiscrepancy;
  const PriceResult mc = price_mc(basket, cfg);
  const PriceResult vl3 = expand_price(basket, ProxyKind::VorstLevy, 3);
  CHECK(std::fabs(vl3.price - mc.price) <= 3.0 * mc.std_error.value() + 1e-3);
}
