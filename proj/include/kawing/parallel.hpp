// Copyright 2026 The Kawing Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KAWING_PARALLEL_HPP_
#define KAWING_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace kawing {

inline int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Number of chunks [0, count) is divided into for the given worker cap.
// Small inputs stay single-chunk; threading overhead dwarfs the work.
inline std::size_t plan_chunks(std::size_t count, int jobs) {
  int workers = resolve_jobs(jobs);
  if (workers <= 1 || count < 2048) return count == 0 ? 0 : 1;
  return std::min<std::size_t>(static_cast<std::size_t>(workers), count);
}

// Runs fn(chunk_index, begin, end) over contiguous chunks of [0, count),
// one thread per chunk. Chunk boundaries depend only on (count, jobs), so
// merging per-chunk results in chunk order is deterministic under any
// scheduling.
template <typename Fn>
void parallel_chunks(std::size_t count, int jobs, Fn &&fn) {
  std::size_t n_chunks = plan_chunks(count, jobs);
  if (n_chunks == 0) return;
  if (n_chunks == 1) {
    fn(std::size_t{0}, std::size_t{0}, count);
    return;
  }
  std::size_t chunk = (count + n_chunks - 1) / n_chunks;
  std::vector<std::thread> threads;
  threads.reserve(n_chunks);
  for (std::size_t c = 0; c < n_chunks; ++c) {
    std::size_t begin = c * chunk;
    if (begin >= count) break;
    std::size_t end = std::min(count, begin + chunk);
    threads.emplace_back([&fn, c, begin, end] { fn(c, begin, end); });
  }
  for (auto &t : threads) t.join();
}

}  // namespace kawing

#endif  // KAWING_PARALLEL_HPP_
