// Reference implementations of the hot kernels. The SIMD backends must agree
// with these within a few ulps; equivalence is enforced by tests.

#include <cmath>
#include <cstddef>

#include "kernels_internal.hpp"

namespace baskex::kernels::scalar {

double gauss_pair_sum(const PairSumArgs& a, bool cubic) {
  double sum = 0.0;
  double comp = 0.0;  // Neumaier correction
  for (std::size_t l = 0; l < a.count; ++l) {
    double e = a.e_base;
    if (a.e1) e += a.e1_scale * a.e1[l];
    if (a.e2) e += a.e2_scale * a.e2[l];
    const double d = (a.x_base + a.x_scale * a.x[l] - a.d_shift) * a.d_scale;
    double term = a.weight[l] * std::exp(e - 0.5 * d * d);
    if (cubic) term *= d * a.d_scale - 1.0;
    const double t = sum + term;
    comp += (std::fabs(sum) >= std::fabs(term)) ? (sum - t) + term
                                                : (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

void mc_basket_tile(const double* factor, std::size_t n, std::size_t rank,
                    std::size_t ld, const double* z, std::size_t lanes,
                    const double* drift, const double* wf, double* out_pos,
                    double* out_neg) {
  for (std::size_t p = 0; p < lanes; ++p) {
    out_pos[p] = 0.0;
    if (out_neg) out_neg[p] = 0.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = factor + i * ld;
    for (std::size_t p = 0; p < lanes; ++p) {
      double y = 0.0;
      for (std::size_t k = 0; k < rank; ++k) y += row[k] * z[k * lanes + p];
      out_pos[p] += wf[i] * std::exp(drift[i] + y);
      if (out_neg) out_neg[p] += wf[i] * std::exp(drift[i] - y);
    }
  }
}

}  // namespace baskex::kernels::scalar
