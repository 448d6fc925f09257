#pragma once

#include <cstdint>
#include <vector>

namespace baskex::detail {

/// Gray-code Sobol sequence with Joe-Kuo direction numbers, 52 bits of
/// resolution. Supports an optional per-dimension digital shift (XOR) for
/// randomized replicates.
class SobolSequence {
 public:
  static std::size_t max_dimension();

  /// seed_for_shift == 0 disables the digital shift.
  explicit SobolSequence(std::size_t dimension,
                         std::uint64_t shift_seed = 0);

  /// Writes the next point as uniforms in (0, 1).
  void next(double* point);

 private:
  std::size_t dim_;
  std::uint64_t index_ = 0;
  std::vector<std::uint64_t> directions_;  // [dim][bits], flattened
  std::vector<std::uint64_t> state_;
  std::vector<std::uint64_t> shift_;
};

}  // namespace baskex::detail
