#pragma once

// Deterministic block-parallel driver. Sample indices are cut into fixed
// blocks independent of the thread count; each block is reduced serially and
// partials come back in block order, so a caller that folds them in order
// gets bit-identical results for any number of workers.

#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <exception>
#include <vector>

namespace fracwos {

inline constexpr std::uint64_t kBlockSize = 1024;

template <class Partial, class BlockFn>
std::vector<Partial> run_blocks(std::uint64_t first, std::uint64_t count, int workers, BlockFn&& block_fn) {
  const std::uint64_t n_blocks = (count + kBlockSize - 1) / kBlockSize;
  std::vector<Partial> partials(n_blocks);
  std::vector<std::exception_ptr> errors(n_blocks);
  const int threads = std::max(1, workers);
  const auto signed_blocks = static_cast<std::int64_t>(n_blocks);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t b = 0; b < signed_blocks; ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    const std::uint64_t begin = first + ub * kBlockSize;
    const std::uint64_t len = std::min(kBlockSize, count - ub * kBlockSize);
    try {
      partials[ub] = block_fn(begin, len);
    } catch (...) {
      errors[ub] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return partials;
}

}  // namespace fracwos
