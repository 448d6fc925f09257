#include "baskex/detail/sobol.hpp"

#include <bit>
#include <stdexcept>

#include "baskex/detail/rng.hpp"

#include "sobol_table.inc"

namespace baskex::detail {

namespace {
constexpr int kBits = 52;  // points exact as doubles
constexpr double kScale = 0x1.0p-52;
}  // namespace

std::size_t SobolSequence::max_dimension() { return kMaxDim; }

SobolSequence::SobolSequence(std::size_t dimension, std::uint64_t shift_seed)
    : dim_(dimension) {
  if (dimension == 0 || dimension > kMaxDim)
    throw std::invalid_argument("Sobol dimension out of range");
  directions_.assign(dim_ * kBits, 0);
  state_.assign(dim_, 0);
  shift_.assign(dim_, 0);

  for (std::size_t j = 0; j < dim_; ++j) {
    std::uint64_t* v = directions_.data() + j * kBits;
    if (j == 0) {
      for (int k = 0; k < kBits; ++k) v[k] = 1ULL << (kBits - 1 - k);
      continue;
    }
    const int s = kDegree[j];
    const unsigned poly = kPoly[j];
    for (int k = 0; k < s; ++k)
      v[k] = static_cast<std::uint64_t>(kInitial[j][k]) << (kBits - 1 - k);
    for (int k = s; k < kBits; ++k) {
      std::uint64_t value = v[k - s] ^ (v[k - s] >> s);
      for (int i = 1; i < s; ++i)
        if ((poly >> (s - i)) & 1U) value ^= v[k - i];
      v[k] = value;
    }
  }

  if (shift_seed != 0) {
    std::uint64_t sm = shift_seed;
    for (std::size_t j = 0; j < dim_; ++j)
      shift_[j] = splitmix64(sm) & ((1ULL << kBits) - 1);
  }
}

void SobolSequence::next(double* point) {
  if (index_ > 0) {
    // Gray-code update: flip the direction of the lowest set bit of the index
    const int c = std::countr_zero(index_);
    for (std::size_t j = 0; j < dim_; ++j)
      state_[j] ^= directions_[j * kBits + c];
  }
  ++index_;
  for (std::size_t j = 0; j < dim_; ++j) {
    // half-integer offset keeps shifted points strictly inside (0, 1)
    point[j] =
        (static_cast<double>(state_[j] ^ shift_[j]) + 0.5) * kScale;
  }
}

}  // namespace baskex::detail
