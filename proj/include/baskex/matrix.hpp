#pragma once

#include <cstddef>
#include <vector>

namespace baskex {

/// Dense symmetric matrix with full row-major storage (rows are contiguous so
/// kernels can take row pointers). set() mirrors across the diagonal.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n, double fill = 0.0)
      : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }

  const double* row(std::size_t i) const { return data_.data() + i * n_; }
  const std::vector<double>& data() const { return data_; }

  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

}  // namespace baskex
