#pragma once

// Lexicographic k-subset enumeration of {0, ..., n-1} with ranking, and a
// chunked parallel search that always reports the lexicographically smallest
// hit no matter how many threads run it.

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "sparkforge/number_theory.hpp"

namespace sparkforge {

using Combination = std::vector<std::size_t>;

/// Advances to the next k-subset in lexicographic order; false after the last.
inline bool next_combination(Combination& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// The rank-th k-subset of {0..n-1} in lexicographic order.
inline Combination unrank_combination(std::size_t n, std::size_t k, std::uint64_t rank) {
  Combination c;
  c.reserve(k);
  std::size_t x = 0;
  for (std::size_t i = 0; i < k; ++i) {
    while (true) {
      const std::uint64_t block = binomial(n - x - 1, k - i - 1);
      if (rank < block) break;
      rank -= block;
      ++x;
    }
    c.push_back(x++);
  }
  return c;
}

inline std::uint64_t rank_combination(std::size_t n, const Combination& c) {
  const std::size_t k = c.size();
  std::uint64_t rank = 0;
  std::size_t x = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (; x < c[i]; ++x) rank += binomial(n - x - 1, k - i - 1);
    ++x;
  }
  return rank;
}

inline unsigned default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

struct SubsetHit {
  std::uint64_t rank;
  Combination subset;
};

/// Searches the k-subsets of {0..n-1} for one satisfying `hit`, returning the
/// lexicographically smallest. `hit` must be safe to call concurrently.
template <typename Pred>
std::optional<SubsetHit> find_first_subset(std::size_t n, std::size_t k, unsigned threads,
                                           Pred&& hit) {
  const std::uint64_t total = binomial(n, k);
  if (total == 0) return std::nullopt;
  threads = std::max(1U, threads);
  if (threads == 1 || total < 64) {
    Combination c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    std::uint64_t rank = 0;
    do {
      if (hit(static_cast<const Combination&>(c))) return SubsetHit{rank, c};
      ++rank;
    } while (next_combination(c, n));
    return std::nullopt;
  }

  const std::uint64_t chunk = std::max<std::uint64_t>(16, total / (threads * 64ULL));
  std::atomic<std::uint64_t> best{total};
  std::atomic<std::uint64_t> next_chunk{0};

  std::exception_ptr failure;
  std::mutex failure_mu;

  auto work = [&] {
    while (true) {
      const std::uint64_t start = next_chunk.fetch_add(1) * chunk;
      if (start >= total || start >= best.load()) return;
      const std::uint64_t stop = std::min(total, start + chunk);
      Combination c = unrank_combination(n, k, start);
      for (std::uint64_t r = start; r < stop && r < best.load(); ++r) {
        if (hit(static_cast<const Combination&>(c))) {
          std::uint64_t cur = best.load();
          while (r < cur && !best.compare_exchange_weak(cur, r)) {
          }
          break;
        }
        next_combination(c, n);
      }
    }
  };
  auto worker = [&] {
    try {
      work();
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      best.store(0);
    }
  };

  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  const std::uint64_t r = best.load();
  if (r == total) return std::nullopt;
  return SubsetHit{r, unrank_combination(n, k, r)};
}

}  // namespace sparkforge
