#pragma once

#include <functional>
#include <span>

#include "baskex/basket.hpp"

namespace baskex {

struct ExpandOptions {
  /// Diagnostic threshold: flag the result when alpha * exp(3 nu2) exceeds
  /// this bound (the third-order terms then amplify tail mass heavily and the
  /// approximation is known to misbehave). The price is still returned as-is.
  double divergence_bound = 100.0;
};

/// Stochastic expansion of orders 0..3 around the chosen lognormal proxy.
/// Order 0 is the proxy price itself; each order adds strike-derivative
/// correction terms. Throws numerical_error on non-finite output.
PriceResult expand_price(const BasketSpec& spec, ProxyKind kind, int order,
                         const ExpandOptions& options = {});

/// Reduced-symmetry evaluation of sum_{i,j} c_i c_j f(i,j) for f symmetric:
/// only i <= j is visited, with multiplicity 2 off the diagonal.
double symmetric_double_sum(std::span<const double> coeff,
                            const std::function<double(std::size_t, std::size_t)>& term);

/// Reduced-symmetry evaluation of sum_{i,j,l} c_i c_j c_l f(i,j,l) for f
/// symmetric under index permutations: ordered tuples with multiplicities
/// {1, 3, 3, 6}.
double symmetric_triple_sum(
    std::span<const double> coeff,
    const std::function<double(std::size_t, std::size_t, std::size_t)>& term);

}  // namespace baskex
