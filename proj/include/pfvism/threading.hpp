// Copyright 2026 The pfvism authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace pfv {

/// Worker-thread cap: PFVISM_THREADS if set, hardware concurrency otherwise.
int max_threads();

/// Runs f(begin, end) over fixed contiguous chunks of [0, n).  Chunk
/// boundaries depend only on n and the thread count, so per-element writes
/// and chunked reductions are reproducible at a fixed thread count.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  const int nt = max_threads();
  if (nt <= 1 || n < 4096) {
    f(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + nt - 1) / nt;
  std::vector<std::thread> workers;
  workers.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    const std::size_t begin = t * chunk;
    if (begin >= n) break;
    const std::size_t end = std::min(n, begin + chunk);
    workers.emplace_back([&f, begin, end] { f(begin, end); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace pfv
