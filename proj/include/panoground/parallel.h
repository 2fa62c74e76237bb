// Copyright 2026 The Panoground Authors. All Rights Reserved.
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

#ifndef PANOGROUND_PARALLEL_H_
#define PANOGROUND_PARALLEL_H_

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace panoground {

// Runs fn(i) for i in [0, n) on up to `workers` threads. If any call throws,
// the exception of the lowest failing index is rethrown after all workers
// stop, so failures are reported identically for every worker count.
template <typename Fn>
void ParallelFor(size_t n, int workers, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  auto drain = [&] {
    while (!failed.load()) {
      const size_t i = next.fetch_add(1);
      if (i >= n) break;
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed = true;
      }
    }
  };
  const size_t threads = workers < 1 ? 1 : static_cast<size_t>(workers);
  if (threads == 1 || n <= 1) {
    drain();
  } else {
    std::vector<std::jthread> pool;
    for (size_t t = 0; t < std::min(threads, n); ++t) pool.emplace_back(drain);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace panoground

#endif  // PANOGROUND_PARALLEL_H_
