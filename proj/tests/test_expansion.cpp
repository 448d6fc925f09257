#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "baskex/expansion.hpp"
#include "baskex/reductions.hpp"
#include "test_util.hpp"

using namespace baskex;

namespace {

// Full-index evaluation of the expansions straight from the term formulas,
// with no symmetry reduction and no fused kernels. Brute-force oracle for
// expand_price.
double naive_expand(const BasketSpec& spec, ProxyKind kind, int order) {
  const ProxyParams p = make_proxy(spec, kind);
  const std::size_t n = spec.size();
  const double a_fwd = p.basket_forward;
  const double ks = p.kstar;
  const double nu2 = p.nu2;
  const double b = spec.discount();
  const OptionType type = spec.option_type();
  const auto dk = [&](double x) {
    return black_dk({std::exp(x), ks, nu2, spec.maturity(), b, type});
  };
  const auto d2k = [&](double x) {
    return black_d2k({std::exp(x), ks, nu2, spec.maturity(), b, type});
  };
  const auto d3k = [&](double x) {
    return black_d3k({std::exp(x), ks, nu2, spec.maturity(), b, type});
  };
  const std::vector<double>& at = p.atilde;
  const std::vector<double>& vb = p.vbar;
  const SymMatrix& v = spec.covariance();

  double price = a_fwd * black(1.0, ks, nu2, b, type);
  if (order >= 1) {
    price += a_fwd * dk(nu2);
    for (std::size_t i = 0; i < n; ++i) price -= a_fwd * at[i] * dk(vb[i]);
  }
  if (order >= 2) {
    price += 0.5 * a_fwd * std::exp(nu2) * d2k(2.0 * nu2);
    for (std::size_t i = 0; i < n; ++i)
      price -= a_fwd * at[i] * std::exp(vb[i]) * d2k(nu2 + vb[i]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        price += 0.5 * a_fwd * at[i] * at[j] * std::exp(v(i, j)) *
                 d2k(vb[i] + vb[j]);
  }
  if (order >= 3) {
    price += a_fwd / 6.0 * std::exp(3.0 * nu2) * d3k(3.0 * nu2);
    for (std::size_t i = 0; i < n; ++i)
      price -= 0.5 * a_fwd * at[i] * std::exp(nu2 + 2.0 * vb[i]) *
               d3k(2.0 * nu2 + vb[i]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        price += 0.5 * a_fwd * at[i] * at[j] *
                 std::exp(vb[i] + vb[j] + v(i, j)) * d3k(nu2 + vb[i] + vb[j]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l)
          price -= a_fwd / 6.0 * at[i] * at[j] * at[l] *
                   std::exp(v(i, l) + v(j, l) + v(i, j)) *
                   d3k(vb[i] + vb[j] + vb[l]);
  }
  return price;
}

AsianSpec weekly(double sigma, double strike) {
  AsianSpec spec;
  spec.spot = 100.0;
  spec.rate = PiecewiseCurve(0.09);
  spec.vol = PiecewiseCurve(sigma);
  for (int i = 0; i <= 156; ++i)
    spec.observation_times.push_back(3.0 * i / 156.0);
  spec.strike = strike;
  return spec;
}

}  // namespace

TEST_CASE("single asset collapses to the Black formula at every order") {
  SymMatrix v(1);
  v.set(0, 0, 0.09);
  BasketSpec spec({2.0}, {55.0}, v, 100.0, 0.93, 1.5, OptionType::Call);
  const double reference =
      black(2.0 * 55.0, 100.0, 0.09, 0.93, OptionType::Call);
  for (ProxyKind kind : {ProxyKind::VorstGeometric, ProxyKind::VorstLevy})
    for (int order = 0; order <= 3; ++order) {
      const PriceResult r = expand_price(spec, kind, order);
      CHECK(r.price == doctest::Approx(reference).epsilon(1e-12));
    }
}

TEST_CASE("weekly grid reproduces the published prices") {
  struct Row {
    double sigma, strike, vg1, vg2, vg3, vl3;
  };
  const Row rows[] = {
      {0.30, 100.0, 16.5675, 16.5762, 16.5766, 16.5766},
      {0.50, 105.0, 20.7791, 20.8219, 20.8239, 20.8238},
      {0.05, 95.0, 15.1197, 15.1197, 15.1197, 15.1197},
  };
  for (const Row& row : rows) {
    const BasketSpec basket = asian_to_basket(weekly(row.sigma, row.strike));
    CHECK(expand_price(basket, ProxyKind::VorstGeometric, 1).price ==
          doctest::Approx(row.vg1).epsilon(5e-6));
    CHECK(expand_price(basket, ProxyKind::VorstGeometric, 2).price ==
          doctest::Approx(row.vg2).epsilon(5e-6));
    CHECK(expand_price(basket, ProxyKind::VorstGeometric, 3).price ==
          doctest::Approx(row.vg3).epsilon(5e-6));
    CHECK(expand_price(basket, ProxyKind::VorstLevy, 3).price ==
          doctest::Approx(row.vl3).epsilon(5e-6));
  }
}

TEST_CASE("documented divergence at extreme volatility is reproduced") {
  const std::size_t n = 4;
  SymMatrix v(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      v.set(i, j, (i == j ? 1.0 : 0.5) * 1.0 * 1.0 * 5.0);
  BasketSpec spec(std::vector<double>(n, 0.25), std::vector<double>(n, 100.0),
                  v, 100.0, 1.0, 5.0, OptionType::Call);
  const PriceResult vg3 = expand_price(spec, ProxyKind::VorstGeometric, 3);
  const PriceResult vl3 = expand_price(spec, ProxyKind::VorstLevy, 3);
  CHECK(vg3.price == doctest::Approx(15.447).epsilon(5e-5));
  CHECK(vl3.price == doctest::Approx(9.938).epsilon(5e-4));
  CHECK(vg3.diag.divergence_warning);
  CHECK(vl3.diag.divergence_warning);
}

TEST_CASE("put-call parity at every order and proxy") {
  detail::Xoshiro256 rng(314159);
  for (int iter = 0; iter < 300; ++iter) {
    const BasketSpec call_spec = testutil::random_basket(rng, 6);
    if (call_spec.strike() <= 0.0) continue;
    BasketSpec call(call_spec.weights(), call_spec.forwards(),
                    call_spec.covariance(), call_spec.strike(),
                    call_spec.discount(), call_spec.maturity(),
                    OptionType::Call);
    BasketSpec put(call_spec.weights(), call_spec.forwards(),
                   call_spec.covariance(), call_spec.strike(),
                   call_spec.discount(), call_spec.maturity(),
                   OptionType::Put);
    const double target =
        call.discount() * (call.basket_forward() - call.strike());
    const double scale = std::max(1.0, call.basket_forward());
    for (ProxyKind kind : {ProxyKind::VorstGeometric, ProxyKind::VorstLevy})
      for (int order = 0; order <= 3; ++order) {
        const double c = expand_price(call, kind, order).price;
        const double p = expand_price(put, kind, order).price;
        CHECK(std::fabs(c - p - target) <= 1e-12 * scale);
      }
  }
}

TEST_CASE("permutation invariance") {
  detail::Xoshiro256 rng(2718);
  for (int iter = 0; iter < 50; ++iter) {
    const BasketSpec spec = testutil::random_basket(rng, 5);
    const std::size_t n = spec.size();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i)
      std::swap(perm[i - 1], perm[rng.next() % i]);
    std::vector<double> w(n), f(n);
    SymMatrix v(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = spec.weights()[perm[i]];
      f[i] = spec.forwards()[perm[i]];
      for (std::size_t j = 0; j <= i; ++j)
        v.set(i, j, spec.covariance()(perm[i], perm[j]));
    }
    BasketSpec shuffled(std::move(w), std::move(f), std::move(v),
                        spec.strike(), spec.discount(), spec.maturity(),
                        spec.option_type());
    for (ProxyKind kind : {ProxyKind::VorstGeometric, ProxyKind::VorstLevy}) {
      const double base = expand_price(spec, kind, 3).price;
      const double other = expand_price(shuffled, kind, 3).price;
      CHECK(std::fabs(base - other) <= 1e-13 * std::max(1.0, std::fabs(base)));
    }
  }
}

TEST_CASE("reduced symmetric sums equal brute force") {
  detail::Xoshiro256 rng(555);
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<double> coeff(n);
    SymMatrix m = testutil::random_psd(rng, n, 1.0, false);
    for (std::size_t i = 0; i < n; ++i) coeff[i] = rng.uniform() + 0.1;
    const auto f2 = [&](std::size_t i, std::size_t j) {
      return std::exp(0.3 * m(i, j)) + m(i, j) * m(i, j);
    };
    const auto f3 = [&](std::size_t i, std::size_t j, std::size_t l) {
      return std::exp(0.1 * (m(i, j) + m(j, l) + m(i, l)));
    };
    double brute2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) brute2 += coeff[i] * coeff[j] * f2(i, j);
    double brute3 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l)
          brute3 += coeff[i] * coeff[j] * coeff[l] * f3(i, j, l);
    CHECK(symmetric_double_sum(coeff, f2) ==
          doctest::Approx(brute2).epsilon(1e-13));
    CHECK(symmetric_triple_sum(coeff, f3) ==
          doctest::Approx(brute3).epsilon(1e-13));
  }
}

TEST_CASE("reduced sum term-evaluation counts") {
  std::size_t calls2 = 0, calls3 = 0;
  const std::vector<double> coeff(5, 0.2);
  symmetric_double_sum(coeff, [&](std::size_t, std::size_t) {
    ++calls2;
    return 1.0;
  });
  symmetric_triple_sum(coeff, [&](std::size_t, std::size_t, std::size_t) {
    ++calls3;
    return 1.0;
  });
  CHECK(calls2 == 5 * 6 / 2);          // n(n+1)/2
  CHECK(calls3 == 5 + 2 * 10 + 10);    // diagonal + two pair groups + distinct
}

TEST_CASE("fused expansion equals the brute-force sums") {
  detail::Xoshiro256 rng(808);
  for (int iter = 0; iter < 60; ++iter) {
    const BasketSpec spec = testutil::random_basket(rng, 6);
    for (ProxyKind kind : {ProxyKind::VorstGeometric, ProxyKind::VorstLevy})
      for (int order = 1; order <= 3; ++order) {
        const ProxyParams p = make_proxy(spec, kind);
        if (p.nu2 <= 0.0) continue;
        const double fused = expand_price(spec, kind, order).price;
        const double naive = naive_expand(spec, kind, order);
        // order-3 groups cancel, so ulp-level exp differences between the
        // fused and direct paths amplify slightly in relative terms
        CHECK(fused == doctest::Approx(naive).epsilon(1e-10));
      }
  }
}

TEST_CASE("order consistency and strike monotonicity on the weekly grid") {
  for (double sigma : {0.05, 0.10, 0.20, 0.30, 0.40, 0.50}) {
    double previous = 1e300;
    for (double strike : {85.0, 90.0, 95.0, 100.0, 105.0, 110.0, 115.0}) {
      const BasketSpec basket = asian_to_basket(weekly(sigma, strike));
      const double o1 = expand_price(basket, ProxyKind::VorstGeometric, 1).price;
      const double o2 = expand_price(basket, ProxyKind::VorstGeometric, 2).price;
      const double o3 = expand_price(basket, ProxyKind::VorstGeometric, 3).price;
      CHECK(std::fabs(o3 - o2) <= std::fabs(o2 - o1) + 1e-12);
      CHECK(o3 <= previous + 1e-12);  // call price non-increasing in strike
      previous = o3;
    }
  }
}

TEST_CASE("price is positively homogeneous in weights and strike") {
  detail::Xoshiro256 rng(4242);
  for (int iter = 0; iter < 40; ++iter) {
    const BasketSpec spec = testutil::random_basket(rng, 5);
    const double lambda = 0.25 + 3.0 * rng.uniform();
    std::vector<double> w = spec.weights();
    for (double& x : w) x *= lambda;
    BasketSpec scaled(std::move(w), spec.forwards(), spec.covariance(),
                      lambda * spec.strike(), spec.discount(), spec.maturity(),
                      spec.option_type());
    for (ProxyKind kind : {ProxyKind::VorstGeometric, ProxyKind::VorstLevy}) {
      const double base = expand_price(spec, kind, 3).price;
      const double big = expand_price(scaled, kind, 3).price;
      CHECK(big == doctest::Approx(lambda * base).epsilon(1e-12));
    }
  }
}

TEST_CASE("non-positive strike prices the always-exercised branch") {
  SymMatrix v(2);
  v.set(0, 0, 0.04);
  v.set(1, 1, 0.09);
  BasketSpec call({0.5, 0.5}, {10.0, 20.0}, v, -3.0, 0.9, 1.0,
                  OptionType::Call);
  BasketSpec put({0.5, 0.5}, {10.0, 20.0}, v, -3.0, 0.9, 1.0, OptionType::Put);
  for (int order = 0; order <= 3; ++order) {
    CHECK(expand_price(call, ProxyKind::VorstGeometric, order).price ==
          doctest::Approx(0.9 * (15.0 + 3.0)).epsilon(1e-14));
    CHECK(expand_price(put, ProxyKind::VorstGeometric, order).price == 0.0);
  }
}

TEST_CASE("invalid order is rejected") {
  SymMatrix v(1);
  v.set(0, 0, 0.04);
  BasketSpec spec({1.0}, {1.0}, v, 1.0, 1.0, 1.0, OptionType::Call);
  CHECK_THROWS_AS(expand_price(spec, ProxyKind::VorstGeometric, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(expand_price(spec, ProxyKind::VorstGeometric, -1),
                  std::invalid_argument);
}
