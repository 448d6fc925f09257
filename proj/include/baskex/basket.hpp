#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "baskex/black76.hpp"
#include "baskex/matrix.hpp"

namespace baskex {

enum class ProxyKind { VorstGeometric, VorstLevy };

inline const char* proxy_name(ProxyKind k) {
  return k == ProxyKind::VorstGeometric ? "VG" : "VL";
}

struct PriceDiagnostics {
  double basket_forward = 0.0;  // A
  double kstar = 0.0;           // K / A
  double nu2 = 0.0;             // proxy total variance
  double alpha = 1.0;           // spot adjustment
  int order = 0;
  std::string method;
  bool divergence_warning = false;
  std::string note;
};

struct PriceResult {
  double price = 0.0;
  std::optional<double> std_error;  // populated by the MC pricer only
  PriceDiagnostics diag;
};

/// Canonical pricing input: weights (negative allowed), positive forwards to
/// maturity, integrated covariance matrix V with V_ij = rho_ij int_0^T
/// sigma_i sigma_j ds, strike, discount factor, maturity and call/put flag.
/// Requires the basket forward A = sum w_i F_i to be positive.
class BasketSpec {
 public:
  BasketSpec(std::vector<double> weights, std::vector<double> forwards,
             SymMatrix covariance, double strike, double discount,
             double maturity, OptionType type);

  std::size_t size() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& forwards() const { return forwards_; }
  const SymMatrix& covariance() const { return covariance_; }
  double strike() const { return strike_; }
  double discount() const { return discount_; }
  double maturity() const { return maturity_; }
  OptionType option_type() const { return type_; }
  double sign() const { return option_sign(type_); }

  /// A = sum_i w_i F_i.
  double basket_forward() const { return basket_forward_; }

  /// Copy with a different strike (sweeps, tables).
  BasketSpec with_strike(double strike) const;

 private:
  std::vector<double> weights_;
  std::vector<double> forwards_;
  SymMatrix covariance_;
  double strike_;
  double discount_;
  double maturity_;
  OptionType type_;
  double basket_forward_;
};

/// Quantities derived from a spec that feed the expansion formulas.
struct ProxyParams {
  ProxyKind kind = ProxyKind::VorstGeometric;
  std::vector<double> atilde;     // w_i F_i / A, sums to 1
  std::vector<double> exponents;  // a_i: atilde for VG, rescaled for VL
  std::vector<double> vbar;       // (V a)_i
  double nu2 = 0.0;               // proxy total variance
  double alpha = 1.0;             // 1 / E[G]
  double kstar = 0.0;
  double basket_forward = 0.0;
};

struct GeometricMoments {
  double mean_log = 0.0;  // E[ln G]
  double var_log = 0.0;   // Var[ln G]
};

/// Mean and variance of the log of the weighted geometric mean of the
/// normalized assets, for the given exponents a.
GeometricMoments geometric_moments(const BasketSpec& spec,
                                   std::span<const double> exponents);

/// Log second moment of the normalized arithmetic mean:
/// ln( sum_ij atilde_i atilde_j exp(V_ij) ). Throws std::domain_error when the
/// log argument is non-positive (only reachable with negative weights).
double levy_variance(const BasketSpec& spec, std::span<const double> atilde);

ProxyParams make_proxy(const BasketSpec& spec, ProxyKind kind);

/// Order-0 proxy price: A * Black(1, K*, nu2, T).
PriceResult proxy_price(const BasketSpec& spec, const ProxyParams& params);

}  // namespace baskex
