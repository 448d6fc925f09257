#include "baskex/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <thread>

#include "baskex/detail/rng.hpp"
#include "baskex/detail/sobol.hpp"
#include "baskex/errors.hpp"
#include "baskex/kernels.hpp"

namespace baskex {

namespace detail {

double PolarNormal::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * rng_.uniform() - 1.0;
    v = 2.0 * rng_.uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

}  // namespace detail

namespace {

constexpr std::size_t kLanes = 4;

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BASKEX_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 16u));
}

std::uint64_t block_seed(std::uint64_t seed, std::int64_t block) {
  std::uint64_t state =
      seed ^ (0xd1342543de82ef95ULL * static_cast<std::uint64_t>(block + 1));
  return detail::splitmix64(state);
}

struct BlockSums {
  std::vector<double> sum;    // per strike, over unit means
  std::vector<double> sumsq;  // per strike
};

}  // namespace

std::vector<PriceResult> price_mc_strikes(const BasketSpec& spec,
                                          std::span<const double> strikes,
                                          const McConfig& cfg) {
  detail::require(cfg.paths >= 2, "mc: at least two paths required");
  detail::require(cfg.block_size >= 1, "mc: block_size must be positive");
  detail::require(!strikes.empty(), "mc: no strikes requested");

  const std::size_t n = spec.size();
  const PsdFactor factor = factor_psd(spec.covariance());
  const std::size_t rank = factor.rank;

  std::vector<double> wf(n), drift(n);
  for (std::size_t i = 0; i < n; ++i) {
    wf[i] = spec.weights()[i] * spec.forwards()[i];
    drift[i] = -0.5 * spec.covariance()(i, i);
  }
  const double eta = spec.sign();
  const double discount = spec.discount();

  McSampler sampler = cfg.sampler;
  std::string note;
  if (sampler == McSampler::LowDiscrepancy && rank > 0 &&
      rank > detail::SobolSequence::max_dimension()) {
    sampler = McSampler::Pseudorandom;
    note = "low-discrepancy sampler supports up to " +
           std::to_string(detail::SobolSequence::max_dimension()) +
           " dimensions (need " + std::to_string(rank) +
           "); fell back to pseudorandom";
  }

  // One unit = one antithetic pair (two paths) or one path. Low-discrepancy
  // runs use equal-size blocks as randomized replicates so block means give
  // the standard error; the path count rounds up to fill the last block.
  const std::int64_t mult = cfg.antithetic ? 2 : 1;
  const std::int64_t units_requested = (cfg.paths + mult - 1) / mult;
  std::int64_t unit_block = std::max<std::int64_t>(1, cfg.block_size / mult);
  std::int64_t nblocks = (units_requested + unit_block - 1) / unit_block;
  if (sampler == McSampler::LowDiscrepancy && nblocks < 2) {
    unit_block = (units_requested + 1) / 2;
    nblocks = 2;
  }
  const bool equal_blocks = sampler == McSampler::LowDiscrepancy;
  const std::int64_t total_units =
      equal_blocks ? nblocks * unit_block : units_requested;

  const std::size_t n_strikes = strikes.size();
  std::vector<BlockSums> blocks(static_cast<std::size_t>(nblocks));

  auto run_block = [&](std::int64_t b) {
    BlockSums out;
    out.sum.assign(n_strikes, 0.0);
    out.sumsq.assign(n_strikes, 0.0);
    std::vector<double> comp(n_strikes, 0.0);

    std::int64_t units = unit_block;
    if (!equal_blocks && b == nblocks - 1)
      units = units_requested - unit_block * (nblocks - 1);

    detail::PolarNormal prng(block_seed(cfg.seed, b));
    std::unique_ptr<detail::SobolSequence> sobol;
    std::vector<double> point(rank);
    if (sampler == McSampler::LowDiscrepancy && rank > 0)
      sobol = std::make_unique<detail::SobolSequence>(
          rank, block_seed(cfg.seed ^ 0xa02bdbf7bb3c0a7ULL, b) | 1ULL);

    std::vector<double> z(rank * kLanes);
    double basket_pos[kLanes];
    double basket_neg[kLanes];

    for (std::int64_t done = 0; done < units; done += kLanes) {
      const std::size_t lanes =
          static_cast<std::size_t>(std::min<std::int64_t>(kLanes, units - done));
      if (sobol) {
        for (std::size_t p = 0; p < lanes; ++p) {
          sobol->next(point.data());
          for (std::size_t k = 0; k < rank; ++k)
            z[k * lanes + p] = norm_ppf(point[k]);
        }
      } else {
        for (std::size_t p = 0; p < lanes; ++p)
          for (std::size_t k = 0; k < rank; ++k)
            z[k * lanes + p] = prng.next();
      }
      kernels::mc_basket_tile(factor.l.data(), n, rank, rank, z.data(), lanes,
                              drift.data(), wf.data(), basket_pos,
                              cfg.antithetic ? basket_neg : nullptr);
      for (std::size_t p = 0; p < lanes; ++p) {
        for (std::size_t s = 0; s < n_strikes; ++s) {
          double value =
              std::max(eta * (basket_pos[p] - strikes[s]), 0.0);
          if (cfg.antithetic) {
            value = 0.5 * (value +
                           std::max(eta * (basket_neg[p] - strikes[s]), 0.0));
          }
          // Neumaier-compensated block sums
          const double t = out.sum[s] + value;
          comp[s] += (std::fabs(out.sum[s]) >= std::fabs(value))
                         ? (out.sum[s] - t) + value
                         : (value - t) + out.sum[s];
          out.sum[s] = t;
          out.sumsq[s] += value * value;
        }
      }
    }
    for (std::size_t s = 0; s < n_strikes; ++s) out.sum[s] += comp[s];
    blocks[static_cast<std::size_t>(b)] = std::move(out);
  };

  const int n_threads =
      std::min<int>(resolve_threads(cfg.threads), static_cast<int>(nblocks));
  if (n_threads <= 1) {
    for (std::int64_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t)
      pool.emplace_back([&, t] {
        for (std::int64_t b = t; b < nblocks; b += n_threads) run_block(b);
      });
    for (auto& th : pool) th.join();
  }

  // deterministic reduction in block order
  std::vector<PriceResult> results(n_strikes);
  for (std::size_t s = 0; s < n_strikes; ++s) {
    double mean, se;
    if (equal_blocks) {
      double grand = 0.0;
      for (const BlockSums& b : blocks) grand += b.sum[s];
      mean = grand / static_cast<double>(total_units);
      double var_means = 0.0;
      const double nb = static_cast<double>(nblocks);
      for (const BlockSums& b : blocks) {
        const double bm = b.sum[s] / static_cast<double>(unit_block);
        var_means += (bm - mean) * (bm - mean);
      }
      se = std::sqrt(std::max(var_means, 0.0) / (nb * (nb - 1.0)));
    } else {
      double grand = 0.0, grand_sq = 0.0;
      for (const BlockSums& b : blocks) {
        grand += b.sum[s];
        grand_sq += b.sumsq[s];
      }
      const double cnt = static_cast<double>(total_units);
      mean = grand / cnt;
      const double var =
          std::max(grand_sq / cnt - mean * mean, 0.0) * (cnt / (cnt - 1.0));
      se = std::sqrt(var / cnt);
    }
    PriceResult& r = results[s];
    r.price = discount * mean;
    r.std_error = discount * se;
    r.diag.basket_forward = spec.basket_forward();
    r.diag.kstar = strikes[s] / spec.basket_forward();
    r.diag.order = -1;
    r.diag.method = "MC";
    r.diag.note = note;
    if (!std::isfinite(r.price))
      throw numerical_error("mc: non-finite estimate");
  }
  return results;
}

PriceResult price_mc(const BasketSpec& spec, const McConfig& cfg) {
  const double strike = spec.strike();
  return price_mc_strikes(spec, std::span<const double>(&strike, 1), cfg)[0];
}

}  // namespace baskex
