#pragma once

#include <cstddef>

namespace baskex::kernels {

enum class Backend { Scalar, Avx2 };

/// Weighted Gaussian pair-sum, the inner loop of the expansion double and
/// triple sums. Computes
///   sum_{l<count} w[l] * exp(e_base + e1_scale*e1[l] + e2_scale*e2[l]
///                            - d(l)^2/2) * poly(d(l))
/// with d(l) = (x_base + x_scale*x[l] - d_shift) * d_scale and
/// poly(d) = 1 for the quadratic kernel, (d*d_scale - 1) for the cubic one.
/// e1/e2 may be null (treated as zero). Accumulation is compensated.
struct PairSumArgs {
  const double* weight = nullptr;
  const double* e1 = nullptr;
  double e1_scale = 1.0;
  const double* e2 = nullptr;
  double e2_scale = 1.0;
  const double* x = nullptr;
  double x_scale = 1.0;
  std::size_t count = 0;
  double e_base = 0.0;
  double x_base = 0.0;
  double d_shift = 0.0;
  double d_scale = 1.0;
};

double gauss_pair_sum(const PairSumArgs& args, bool cubic);

/// Monte Carlo tile: for a tile of `lanes` paths with standard normal draws
/// z (layout z[k*lanes + p], k < rank), computes
///   out_pos[p] = sum_i wf[i] * exp(drift[i] + (L z_p)_i)
/// and, when out_neg is non-null, the antithetic value with -z_p.
/// L is row-major n x rank with leading dimension ld.
void mc_basket_tile(const double* factor, std::size_t n, std::size_t rank,
                    std::size_t ld, const double* z, std::size_t lanes,
                    const double* drift, const double* wf, double* out_pos,
                    double* out_neg);

/// Lane width the active backend prefers for mc_basket_tile.
std::size_t preferred_lanes();

bool avx2_available();
Backend active();
/// Force a backend (tests, CLI). Throws if unavailable on this machine.
void force(Backend backend);
/// Honors BASKEX_SIMD=scalar|avx2|auto; called lazily on first use.
void init_from_env();
const char* backend_name(Backend backend);

}  // namespace baskex::kernels
