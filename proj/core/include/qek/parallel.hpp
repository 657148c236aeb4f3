// Copyright 2026 The qek Authors
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

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qek {

/// Runs body(i) for i in [0, n) on up to `workers` threads with a static
/// strided assignment. The first exception thrown by any task is rethrown.
template <typename F>
void parallel_for(std::size_t n, int workers, F&& body) {
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), std::max<std::size_t>(n, 1));
  if (w == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(w);
  {
    std::vector<std::jthread> pool;
    pool.reserve(w);
    for (std::size_t t = 0; t < w; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < n; i += w) body(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace qek
