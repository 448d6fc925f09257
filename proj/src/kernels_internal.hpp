#pragma once

#include "baskex/kernels.hpp"

namespace baskex::kernels {

namespace scalar {
double gauss_pair_sum(const PairSumArgs& args, bool cubic);
void mc_basket_tile(const double* factor, std::size_t n, std::size_t rank,
                    std::size_t ld, const double* z, std::size_t lanes,
                    const double* drift, const double* wf, double* out_pos,
                    double* out_neg);
}  // namespace scalar

namespace avx2 {
double gauss_pair_sum(const PairSumArgs& args, bool cubic);
void mc_basket_tile(const double* factor, std::size_t n, std::size_t rank,
                    std::size_t ld, const double* z, std::size_t lanes,
                    const double* drift, const double* wf, double* out_pos,
                    double* out_neg);
}  // namespace avx2

}  // namespace baskex::kernels
