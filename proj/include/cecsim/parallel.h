// Copyright 2026 The cecsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CECSIM_PARALLEL_H
#define CECSIM_PARALLEL_H

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cecsim {

/// Runs body(k) for k in [0, n) on up to `workers` threads. Work items must
/// write to disjoint outputs. The first exception thrown is rethrown.
template <typename Body>
void parallel_for(std::size_t n, std::size_t workers, Body &&body) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t k = 0; k < n; k++) {
            body(k);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        while (true) {
            std::size_t k = next.fetch_add(1);
            if (k >= n) {
                return;
            }
            try {
                body(k);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(n);
            }
        }
    };
    std::vector<std::jthread> pool;
    std::size_t count = workers < n ? workers : n;
    for (std::size_t w = 0; w < count; w++) {
        pool.emplace_back(run);
    }
    pool.clear();
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace cecsim

#endif
