#include "baskex/basket.hpp"

#include <cmath>
#include <numeric>

#include "baskex/errors.hpp"

namespace baskex {

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    detail::require(rows[i].size() == n, "covariance matrix must be square");
    for (std::size_t j = 0; j < n; ++j) m.data_[i * n + j] = rows[i][j];
  }
  return m;
}

BasketSpec::BasketSpec(std::vector<double> weights,
                       std::vector<double> forwards, SymMatrix covariance,
                       double strike, double discount, double maturity,
                       OptionType type)
    : weights_(std::move(weights)),
      forwards_(std::move(forwards)),
      covariance_(std::move(covariance)),
      strike_(strike),
      discount_(discount),
      maturity_(maturity),
      type_(type) {
  const std::size_t n = weights_.size();
  detail::require(n >= 1, "basket needs at least one asset");
  detail::require(forwards_.size() == n, "weights/forwards size mismatch");
  detail::require(covariance_.size() == n, "covariance size mismatch");
  detail::require(std::isfinite(strike_), "strike must be finite");
  detail::require(discount_ > 0.0 && discount_ <= 1.0,
                  "discount must lie in (0, 1]");
  detail::require(maturity_ > 0.0, "maturity must be positive");
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    detail::require(std::isfinite(weights_[i]), "weights must be finite");
    detail::require(forwards_[i] > 0.0 && std::isfinite(forwards_[i]),
                    "forwards must be positive");
    scale = std::max(scale, std::fabs(covariance_(i, i)));
  }
  const double tol = 1e-12 * std::max(scale, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    detail::require(covariance_(i, i) >= -tol,
                    "covariance diagonal must be non-negative");
    for (std::size_t j = 0; j < i; ++j) {
      detail::require(std::fabs(covariance_(i, j) - covariance_(j, i)) <= tol,
                      "covariance must be symmetric");
      const double bound = std::sqrt(std::max(covariance_(i, i), 0.0) *
                                     std::max(covariance_(j, j), 0.0));
      detail::require(std::fabs(covariance_(i, j)) <= bound + tol,
                      "covariance violates Cauchy-Schwarz");
    }
  }
  basket_forward_ = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    basket_forward_ += weights_[i] * forwards_[i];
  detail::require(basket_forward_ > 0.0,
                  "basket forward sum w_i F_i must be positive");
}

BasketSpec BasketSpec::with_strike(double strike) const {
  BasketSpec copy(*this);
  copy.strike_ = strike;
  return copy;
}

GeometricMoments geometric_moments(const BasketSpec& spec,
                                   std::span<const double> exponents) {
  const std::size_t n = spec.size();
  detail::require(exponents.size() == n,
                  "geometric_moments: exponent size mismatch");
  const SymMatrix& v = spec.covariance();
  GeometricMoments out;
  for (std::size_t i = 0; i < n; ++i) out.mean_log -= 0.5 * exponents[i] * v(i, i);
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = v.row(i);
    double dot = 0.0;
    for (std::size_t j = 0; j < n; ++j) dot += exponents[j] * row[j];
    var += exponents[i] * dot;
  }
  out.var_log = std::max(var, 0.0);
  return out;
}

double levy_variance(const BasketSpec& spec, std::span<const double> atilde) {
  const std::size_t n = spec.size();
  detail::require(atilde.size() == n, "levy_variance: weight size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += atilde[i];
  detail::require(std::fabs(total - 1.0) <= 1e-12,
                  "levy_variance: weights must sum to 1");
  const SymMatrix& v = spec.covariance();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = v.row(i);
    double inner = 0.0;
    for (std::size_t j = 0; j < n; ++j) inner += atilde[j] * std::exp(row[j]);
    sum += atilde[i] * inner;
  }
  if (!(sum > 0.0))
    throw std::domain_error(
        "levy_variance: second moment is non-positive (negative weights)");
  return std::log(sum);
}

ProxyParams make_proxy(const BasketSpec& spec, ProxyKind kind) {
  const std::size_t n = spec.size();
  ProxyParams p;
  p.kind = kind;
  p.basket_forward = spec.basket_forward();
  p.kstar = spec.strike() / p.basket_forward;
  p.atilde.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    p.atilde[i] = spec.weights()[i] * spec.forwards()[i] / p.basket_forward;

  const GeometricMoments gm = geometric_moments(spec, p.atilde);
  if (kind == ProxyKind::VorstGeometric) {
    p.exponents = p.atilde;
    p.nu2 = gm.var_log;
  } else {
    // the second moment of a unit-mean average is >= 1; clamp away rounding
    const double nu_a2 = std::max(levy_variance(spec, p.atilde), 0.0);
    if (gm.var_log <= 0.0) {
      if (nu_a2 <= 0.0) {
        p.exponents = p.atilde;  // fully deterministic basket
        p.nu2 = 0.0;
      } else {
        throw numerical_error(
            "make_proxy: geometric variance is zero but arithmetic variance "
            "is not; Levy proxy degenerate");
      }
    } else {
      const double scale = std::sqrt(nu_a2 / gm.var_log);
      p.exponents.resize(n);
      for (std::size_t i = 0; i < n; ++i) p.exponents[i] = scale * p.atilde[i];
      p.nu2 = nu_a2;
    }
  }

  // alpha = 1/E[G] = exp(0.5 sum a_i V_ii - 0.5 nu2)
  double half_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    half_diag += p.exponents[i] * spec.covariance()(i, i);
  p.alpha = std::exp(0.5 * half_diag - 0.5 * p.nu2);

  p.vbar.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = spec.covariance().row(i);
    double dot = 0.0;
    for (std::size_t j = 0; j < n; ++j) dot += p.exponents[j] * row[j];
    p.vbar[i] = dot;
  }
  return p;
}

PriceResult proxy_price(const BasketSpec& spec, const ProxyParams& p) {
  PriceResult out;
  out.diag.basket_forward = p.basket_forward;
  out.diag.kstar = p.kstar;
  out.diag.nu2 = p.nu2;
  out.diag.alpha = p.alpha;
  out.diag.order = 0;
  out.diag.method = std::string(proxy_name(p.kind)) + "0";
  if (p.kstar <= 0.0) {
    // always-exercised call / worthless put
    const double intrinsic = p.basket_forward - spec.strike();
    out.price = spec.option_type() == OptionType::Call
                    ? spec.discount() * intrinsic
                    : 0.0;
    return out;
  }
  out.price = p.basket_forward * black(1.0, p.kstar, p.nu2, spec.discount(),
                                       spec.option_type());
  return out;
}

}  // namespace baskex
