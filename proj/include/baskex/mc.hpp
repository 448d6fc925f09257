#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "baskex/basket.hpp"

namespace baskex {

enum class McSampler { Pseudorandom, LowDiscrepancy };

struct McConfig {
  std::int64_t paths = 1'000'000;
  std::uint64_t seed = 0;
  McSampler sampler = McSampler::Pseudorandom;
  bool antithetic = true;
  /// Paths per deterministic accumulation block. Results are bit-identical
  /// for a fixed configuration, independent of the worker count.
  std::int64_t block_size = 65536;
  int threads = 0;  // 0: BASKEX_THREADS env variable, else hardware count
};

struct PsdFactor {
  std::size_t n = 0;
  std::size_t rank = 0;
  std::vector<double> l;  // row-major n x rank, L L^T = V

  double entry(std::size_t i, std::size_t k) const { return l[i * rank + k]; }
};

/// Factor a symmetric positive semidefinite matrix as L L^T using diagonally
/// pivoted Cholesky. Pivots within noise of zero are clipped (semidefinite
/// inputs, e.g. covariance of an observation at t = 0); matrices that are
/// genuinely indefinite are rejected with the offending eigenvalue named.
PsdFactor factor_psd(const SymMatrix& v);

/// Reference pricer: exact sampling of the joint terminal lognormal law.
/// Returns the discounted payoff mean with its standard error.
PriceResult price_mc(const BasketSpec& spec, const McConfig& cfg);

/// One simulation reused across strikes; specs must differ only by strike.
std::vector<PriceResult> price_mc_strikes(const BasketSpec& spec,
                                          std::span<const double> strikes,
                                          const McConfig& cfg);

namespace detail {
/// Smallest eigenvalue via cyclic Jacobi (diagnostics and tests).
double min_eigenvalue(const SymMatrix& v);
}  // namespace detail

}  // namespace baskex
