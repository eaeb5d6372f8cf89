#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "pluri/error.hpp"
#include "pluri/rng.hpp"

namespace pluri {

/// Shared Monte Carlo configuration. `chunk` fixes the work decomposition, so
/// a (samples, seed, chunk) triple identifies the estimate exactly; worker
/// count never enters the result.
struct McConfig {
  long long samples = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
  long long chunk = 1 << 16;

  void validate() const {
    if (samples <= 0) fail(ErrorKind::config, "mc.samples must be positive");
    if (chunk <= 0) fail(ErrorKind::config, "mc.chunk must be positive");
  }

  McConfig with_seed(std::uint64_t s) const {
    McConfig c = *this;
    c.seed = s;
    return c;
  }
};

/// Running mean/variance accumulator; merges are performed in a fixed chunk
/// order so the final numbers are bitwise reproducible.
struct MeanAccumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  long long count = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }

  void merge(const MeanAccumulator& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    count += o.count;
  }

  double mean() const { return count > 0 ? sum / static_cast<double>(count) : 0.0; }

  double variance() const {
    if (count < 2) return 0.0;
    const double m = mean();
    const double v = (sum_sq - static_cast<double>(count) * m * m) / static_cast<double>(count - 1);
    return v > 0.0 ? v : 0.0;
  }

  double std_error() const {
    return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }
};

/// Runs `fn(rng, nsamples, acc)` over chunks of the sample budget. Chunk c is
/// seeded with derive_seed(seed, c) and partial results are merged in chunk
/// order, so the estimate depends only on the McConfig, not on `threads`.
template <class ChunkFn>
MeanAccumulator run_chunked_mc(const McConfig& cfg, ChunkFn&& fn, int threads = 0) {
  cfg.validate();
  const long long nchunks = (cfg.samples + cfg.chunk - 1) / cfg.chunk;
  std::vector<MeanAccumulator> partial(static_cast<std::size_t>(nchunks));

  auto run_chunk = [&](long long c) {
    const long long lo = c * cfg.chunk;
    const long long n = std::min(cfg.chunk, cfg.samples - lo);
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(c)));
    fn(rng, n, partial[static_cast<std::size_t>(c)]);
  };

  int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (nthreads < 1) nthreads = 1;
  if (nthreads > nchunks) nthreads = static_cast<int>(nchunks);

  if (nthreads <= 1) {
    for (long long c = 0; c < nchunks; ++c) run_chunk(c);
  } else {
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int i = 0; i < nthreads; ++i) {
      pool.emplace_back([&] {
        for (;;) {
          const long long c = next.fetch_add(1);
          if (c >= nchunks) return;
          run_chunk(c);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  MeanAccumulator total;
  for (const MeanAccumulator& p : partial) total.merge(p);
  return total;
}

}  // namespace pluri
