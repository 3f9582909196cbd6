#pragma once

// Data-parallel reductions over the subspace stream. Work is partitioned by
// pivot profile; per-profile partial results are merged in profile order so
// the outcome never depends on the number of workers.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "detcode/matq.hpp"

namespace detcode {

struct SearchOptions {
  unsigned threads = 1;
  bool early_exit = true;
};

/// `visit(acc, subspace, profile_index, ordinal)` returns false when nothing
/// after this point in enumeration order can change the answer; later
/// profiles are then skipped and discarded.
template <class Acc, class Visit, class Merge>
Acc reduce_subspaces(const Field& f, std::size_t n, std::size_t r, unsigned threads, const Acc& init, Visit visit,
                     Merge merge) {
  check_subspace_budget(n, r, f.order());
  const auto profiles = pivot_profiles(n, r);
  const std::size_t count = profiles.size();
  std::vector<std::optional<Acc>> partial(count);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> cutoff{std::numeric_limits<std::size_t>::max()};

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || i > cutoff.load()) return;
      Acc acc = init;
      std::uint64_t ordinal = 0;
      bool abandoned = false;
      for_each_subspace_in_profile(f, n, profiles[i], [&](const SubspaceBasis& s) {
        if (!visit(acc, s, i, ordinal++)) {
          std::size_t seen = cutoff.load();
          while (i < seen && !cutoff.compare_exchange_weak(seen, i)) {
          }
          return false;
        }
        if (i > cutoff.load()) {
          abandoned = true;
          return false;
        }
        return true;
      });
      if (!abandoned) partial[i] = std::move(acc);
    }
  };

  const unsigned workers = std::max(1u, threads);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  Acc result = init;
  const std::size_t last = std::min(count, cutoff.load() == std::numeric_limits<std::size_t>::max()
                                               ? count
                                               : cutoff.load() + 1);
  for (std::size_t i = 0; i < last; ++i)
    if (partial[i]) merge(result, *partial[i]);
  return result;
}

}  // namespace detcode
