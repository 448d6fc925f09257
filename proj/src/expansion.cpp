#include "baskex/expansion.hpp"

#include <cmath>
#include <vector>

#include "baskex/errors.hpp"
#include "baskex/kernels.hpp"

namespace baskex {

namespace {

constexpr double kSqrt2Pi = 2.50662827463100050242;

// Compensated accumulator for the term groups.
struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;
  void add(double term) {
    const double t = sum + term;
    comp += (std::fabs(sum) >= std::fabs(term)) ? (sum - t) + term
                                                : (term - t) + sum;
    sum = t;
  }
  double total() const { return sum + comp; }
};

}  // namespace

PriceResult expand_price(const BasketSpec& spec, ProxyKind kind, int order,
                         const ExpandOptions& options) {
  detail::require(order >= 0 && order <= 3,
                  "expansion order must be in {0,1,2,3}");

  // Always-exercised branch: a non-positive strike makes the call payoff
  // linear (baskets reduced from seasoned averages can land here).
  if (spec.strike() <= 0.0) {
    PriceResult out;
    out.diag.basket_forward = spec.basket_forward();
    out.diag.kstar = spec.strike() / spec.basket_forward();
    out.diag.order = order;
    out.diag.method = std::string(proxy_name(kind)) + std::to_string(order);
    out.price = spec.option_type() == OptionType::Call
                    ? spec.discount() * (spec.basket_forward() - spec.strike())
                    : 0.0;
    return out;
  }

  const ProxyParams p = make_proxy(spec, kind);
  if (order == 0 || p.nu2 <= 0.0) {
    // nu2 == 0 means a deterministic basket; every order collapses to the
    // discounted intrinsic value.
    PriceResult out = proxy_price(spec, p);
    out.diag.order = order;
    out.diag.method = std::string(proxy_name(kind)) + std::to_string(order);
    return out;
  }

  const std::size_t n = spec.size();
  const double A = p.basket_forward;
  const double kstar = p.kstar;
  const double nu2 = p.nu2;
  const double s = std::sqrt(nu2);
  const double inv_s = 1.0 / s;
  const double eta = spec.sign();
  const double discount = spec.discount();
  const double d_shift = std::log(kstar) + 0.5 * nu2;  // d2 = (lnF - shift)/s

  const std::vector<double>& at = p.atilde;
  const std::vector<double>& vbar = p.vbar;
  const SymMatrix& cov = spec.covariance();

  std::vector<double> vdiag(n), at_sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    vdiag[i] = cov(i, i);
    at_sq[i] = at[i] * at[i];
  }

  // dk(x)  = -eta B Phi(eta (x - shift)/s)
  // d2k(x) = c2 exp(-d^2/2),           c2 = B / (K* s sqrt(2pi))
  // d3k(x) = c3 exp(-d^2/2) (d/s - 1), c3 = B / (K*^2 s sqrt(2pi))
  const auto dk = [&](double log_fwd) {
    return -eta * discount * norm_cdf(eta * (log_fwd - d_shift) * inv_s);
  };
  const double c2 = discount / (kstar * s * kSqrt2Pi);
  const double c3 = c2 / kstar;
  const auto gauss = [&](double log_fwd) {
    const double d = (log_fwd - d_shift) * inv_s;
    return std::exp(-0.5 * d * d);
  };
  const auto gauss3 = [&](double log_fwd) {
    const double d = (log_fwd - d_shift) * inv_s;
    return std::exp(-0.5 * d * d) * (d * inv_s - 1.0);
  };

  Accumulator acc;
  acc.add(A * black(1.0, kstar, nu2, discount, spec.option_type()));

  // order 1: E[(X - G) h'] rewritten through the strike derivative
  acc.add(A * dk(nu2));
  {
    Accumulator single;
    for (std::size_t i = 0; i < n; ++i) single.add(at[i] * dk(vbar[i]));
    acc.add(-A * single.total());
  }

  if (order >= 2) {
    acc.add(0.5 * A * std::exp(nu2) * c2 * gauss(2.0 * nu2));
    Accumulator single;
    for (std::size_t i = 0; i < n; ++i)
      single.add(at[i] * std::exp(vbar[i]) * gauss(nu2 + vbar[i]));
    acc.add(-A * c2 * single.total());

    // sum_ij at_i at_j e^{V_ij} d2k(e^{vbar_i + vbar_j}), i<=j reduction
    Accumulator dsum;
    for (std::size_t i = 0; i < n; ++i)
      dsum.add(at_sq[i] * std::exp(vdiag[i]) * gauss(2.0 * vbar[i]));
    Accumulator offdiag;
    for (std::size_t i = 1; i < n; ++i) {
      kernels::PairSumArgs args;
      args.weight = at.data();
      args.e1 = cov.row(i);
      args.x = vbar.data();
      args.count = i;
      args.x_base = vbar[i];
      args.d_shift = d_shift;
      args.d_scale = inv_s;
      offdiag.add(at[i] * kernels::gauss_pair_sum(args, false));
    }
    acc.add(0.5 * A * c2 * (dsum.total() + 2.0 * offdiag.total()));
  }

  if (order >= 3) {
    acc.add(A / 6.0 * std::exp(3.0 * nu2) * c3 * gauss3(3.0 * nu2));
    Accumulator single;
    for (std::size_t i = 0; i < n; ++i)
      single.add(at[i] * std::exp(nu2 + 2.0 * vbar[i]) *
                 gauss3(2.0 * nu2 + vbar[i]));
    acc.add(-0.5 * A * c3 * single.total());

    // sum_ij at_i at_j e^{vbar_i + vbar_j + V_ij} d3k(e^{nu2 + vbar_i + vbar_j})
    {
      Accumulator dsum;
      for (std::size_t i = 0; i < n; ++i)
        dsum.add(at_sq[i] * std::exp(2.0 * vbar[i] + vdiag[i]) *
                 gauss3(nu2 + 2.0 * vbar[i]));
      Accumulator offdiag;
      for (std::size_t i = 1; i < n; ++i) {
        kernels::PairSumArgs args;
        args.weight = at.data();
        args.e1 = cov.row(i);
        args.e2 = vbar.data();
        args.x = vbar.data();
        args.count = i;
        args.e_base = vbar[i];
        args.x_base = nu2 + vbar[i];
        args.d_shift = d_shift;
        args.d_scale = inv_s;
        offdiag.add(at[i] * kernels::gauss_pair_sum(args, true));
      }
      acc.add(0.5 * A * c3 * (dsum.total() + 2.0 * offdiag.total()));
    }

    // triple sum over ordered tuples with multiplicities {6, 3, 3, 1}
    {
      Accumulator distinct;  // i > j > l
      for (std::size_t i = 2; i < n; ++i) {
        const double* cov_i = cov.row(i);
        Accumulator row;
        for (std::size_t j = 1; j < i; ++j) {
          kernels::PairSumArgs args;
          args.weight = at.data();
          args.e1 = cov_i;
          args.e2 = cov.row(j);
          args.x = vbar.data();
          args.count = j;
          args.e_base = cov_i[j];
          args.x_base = vbar[i] + vbar[j];
          args.d_shift = d_shift;
          args.d_scale = inv_s;
          row.add(at[j] * kernels::gauss_pair_sum(args, true));
        }
        distinct.add(at[i] * row.total());
      }

      Accumulator pair_heavy_low;  // i > j, j doubled
      for (std::size_t i = 1; i < n; ++i) {
        kernels::PairSumArgs args;
        args.weight = at_sq.data();
        args.e1 = cov.row(i);
        args.e1_scale = 2.0;
        args.e2 = vdiag.data();
        args.x = vbar.data();
        args.x_scale = 2.0;
        args.count = i;
        args.x_base = vbar[i];
        args.d_shift = d_shift;
        args.d_scale = inv_s;
        pair_heavy_low.add(at[i] * kernels::gauss_pair_sum(args, true));
      }

      Accumulator pair_heavy_high;  // i > l, i doubled
      for (std::size_t i = 1; i < n; ++i) {
        kernels::PairSumArgs args;
        args.weight = at.data();
        args.e1 = cov.row(i);
        args.e1_scale = 2.0;
        args.x = vbar.data();
        args.count = i;
        args.e_base = vdiag[i];
        args.x_base = 2.0 * vbar[i];
        args.d_shift = d_shift;
        args.d_scale = inv_s;
        pair_heavy_high.add(at_sq[i] * kernels::gauss_pair_sum(args, true));
      }

      Accumulator diag;  // i = j = l
      for (std::size_t i = 0; i < n; ++i)
        diag.add(at[i] * at_sq[i] * std::exp(3.0 * vdiag[i]) *
                 gauss3(3.0 * vbar[i]));

      const double triple = 6.0 * distinct.total() +
                            3.0 * pair_heavy_low.total() +
                            3.0 * pair_heavy_high.total() + diag.total();
      acc.add(-A / 6.0 * c3 * triple);
    }
  }

  PriceResult out;
  out.price = acc.total();
  out.diag.basket_forward = A;
  out.diag.kstar = kstar;
  out.diag.nu2 = nu2;
  out.diag.alpha = p.alpha;
  out.diag.order = order;
  out.diag.method = std::string(proxy_name(kind)) + std::to_string(order);
  if (p.alpha * std::exp(3.0 * nu2) > options.divergence_bound) {
    out.diag.divergence_warning = true;
    out.diag.note =
        "expansion outside its validated regime (large total variance)";
  }
  if (!std::isfinite(out.price))
    throw numerical_error("expansion produced a non-finite price (nu2 = " +
                          std::to_string(nu2) + ")");
  return out;
}

double symmetric_double_sum(
    std::span<const double> coeff,
    const std::function<double(std::size_t, std::size_t)>& term) {
  Accumulator acc;
  for (std::size_t i = 0; i < coeff.size(); ++i) {
    acc.add(coeff[i] * coeff[i] * term(i, i));
    for (std::size_t j = 0; j < i; ++j)
      acc.add(2.0 * coeff[i] * coeff[j] * term(i, j));
  }
  return acc.total();
}

double symmetric_triple_sum(
    std::span<const double> coeff,
    const std::function<double(std::size_t, std::size_t, std::size_t)>& term) {
  Accumulator acc;
  const std::size_t n = coeff.size();
  for (std::size_t i = 0; i < n; ++i) {
    acc.add(coeff[i] * coeff[i] * coeff[i] * term(i, i, i));
    for (std::size_t j = 0; j < i; ++j) {
      acc.add(3.0 * coeff[i] * coeff[i] * coeff[j] * term(i, i, j));
      acc.add(3.0 * coeff[i] * coeff[j] * coeff[j] * term(i, j, j));
      for (std::size_t l = 0; l < j; ++l)
        acc.add(6.0 * coeff[i] * coeff[j] * coeff[l] * term(i, j, l));
    }
  }
  return acc.total();
}

}  // namespace baskex
