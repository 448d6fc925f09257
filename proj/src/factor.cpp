#include <cmath>
#include <string>
#include <vector>

#include "baskex/errors.hpp"
#include "baskex/mc.hpp"

namespace baskex {

namespace detail {

double min_eigenvalue(const SymMatrix& v) {
  const std::size_t n = v.size();
  std::vector<double> a(v.data());
  auto at = [&](std::size_t i, std::size_t j) -> double& {
    return a[i * n + j];
  };
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-24) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  double lo = at(0, 0);
  for (std::size_t i = 1; i < n; ++i) lo = std::min(lo, at(i, i));
  return lo;
}

}  // namespace detail

PsdFactor factor_psd(const SymMatrix& v) {
  const std::size_t n = v.size();
  baskex::detail::require(n >= 1, "factor_psd: empty matrix");
  std::vector<double> a(v.data());
  auto at = [&](std::size_t i, std::size_t j) -> double& {
    return a[i * n + j];
  };
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j)
      baskex::detail::require(std::fabs(at(i, j) - at(j, i)) <=
                                  1e-12 * std::max(1.0, std::fabs(at(i, j))),
                              "factor_psd: matrix must be symmetric");
    scale = std::max(scale, std::fabs(at(i, i)));
  }
  const double clip_tol = 1e-13 * std::max(scale, 1e-300);
  const double reject_tol = 1e-12 * std::max(scale, 1e-300);

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::vector<double> lw(n * n, 0.0);  // work factor in pivoted order
  std::size_t rank = 0;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (at(perm[i], perm[i]) > at(perm[piv], perm[piv])) piv = i;
    const double d = at(perm[piv], perm[piv]);
    if (d <= clip_tol) {
      // remaining block is numerical noise; reject if any of it is clearly
      // negative, otherwise clip to zero
      double worst = 0.0;
      for (std::size_t i = k; i < n; ++i)
        worst = std::min(worst, at(perm[i], perm[i]));
      if (worst < -reject_tol) {
        const double lambda = detail::min_eigenvalue(v);
        throw numerical_error(
            "factor_psd: matrix is not positive semidefinite (eigenvalue " +
            std::to_string(lambda) + ")");
      }
      break;
    }
    std::swap(perm[k], perm[piv]);
    const double root = std::sqrt(d);
    lw[perm[k] * n + k] = root;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double value = at(perm[i], perm[k]) / root;
      lw[perm[i] * n + k] = value;
    }
    // Schur complement update on the remaining diagonal block
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j <= i; ++j) {
        const double upd = at(perm[i], perm[j]) -
                           lw[perm[i] * n + k] * lw[perm[j] * n + k];
        at(perm[i], perm[j]) = upd;
        at(perm[j], perm[i]) = upd;
      }
    rank = k + 1;
  }

  PsdFactor out;
  out.n = n;
  out.rank = rank;
  out.l.assign(n * rank, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < rank; ++k) out.l[i * rank + k] = lw[i * n + k];
  return out;
}

}  // namespace baskex
