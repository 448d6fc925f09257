#pragma once

#include <stdexcept>
#include <string>

namespace baskex {

// Numerical breakdown during pricing: non-finite intermediate, failed
// factorization, degenerate proxy.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}
}  // namespace detail

}  // namespace baskex
