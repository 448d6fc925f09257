// Runtime backend selection. The scalar path is always available; AVX2 is
// used when the CPU supports it unless BASKEX_SIMD overrides the choice.

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "kernels_internal.hpp"

namespace baskex::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool avx2_compiled() {
#if defined(BASKEX_AVX2_TU)
  return true;
#else
  return false;
#endif
}

std::atomic<int> g_backend{-1};  // -1 = uninitialized

Backend detect() {
  const char* env = std::getenv("BASKEX_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return Backend::Scalar;
  if (env && std::strcmp(env, "avx2") == 0) {
    if (!avx2_available())
      throw std::runtime_error("BASKEX_SIMD=avx2 but AVX2 is unavailable");
    return Backend::Avx2;
  }
  return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

Backend current() {
  int b = g_backend.load(std::memory_order_acquire);
  if (b < 0) {
    const Backend det = detect();
    b = static_cast<int>(det);
    g_backend.store(b, std::memory_order_release);
  }
  return static_cast<Backend>(b);
}

}  // namespace

bool avx2_available() { return avx2_compiled() && cpu_has_avx2(); }

Backend active() { return current(); }

void force(Backend backend) {
  if (backend == Backend::Avx2 && !avx2_available())
    throw std::runtime_error("AVX2 backend unavailable on this machine");
  g_backend.store(static_cast<int>(backend), std::memory_order_release);
}

void init_from_env() { g_backend.store(static_cast<int>(detect())); }

const char* backend_name(Backend backend) {
  return backend == Backend::Avx2 ? "avx2" : "scalar";
}

std::size_t preferred_lanes() {
  return current() == Backend::Avx2 ? 4 : 4;  // tile size shared by backends
}

double gauss_pair_sum(const PairSumArgs& args, bool cubic) {
#if defined(BASKEX_AVX2_TU)
  if (current() == Backend::Avx2) return avx2::gauss_pair_sum(args, cubic);
#endif
  return scalar::gauss_pair_sum(args, cubic);
}

void mc_basket_tile(const double* factor, std::size_t n, std::size_t rank,
                    std::size_t ld, const double* z, std::size_t lanes,
                    const double* drift, const double* wf, double* out_pos,
                    double* out_neg) {
#if defined(BASKEX_AVX2_TU)
  if (current() == Backend::Avx2) {
    avx2::mc_basket_tile(factor, n, rank, ld, z, lanes, drift, wf, out_pos,
                         out_neg);
    return;
  }
#endif
  scalar::mc_basket_tile(factor, n, rank, ld, z, lanes, drift, wf, out_pos,
                         out_neg);
}

}  // namespace baskex::kernels
