// Copyright 2026 The qfi-probe Authors
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

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace qfiprobe::detail {

/// Runs fn(i) for i in [begin, end) across hardware threads in contiguous
/// chunks.  fn must be safe to call concurrently for distinct indices;
/// results must be written to per-index slots.  The first exception thrown
/// by any chunk is rethrown after all threads join.  Falls back to a plain
/// loop on single-core machines or tiny ranges.
template <typename Fn>
void parallel_for(std::int64_t begin, std::int64_t end, Fn&& fn) {
    const std::int64_t count = end - begin;
    if (count <= 0) {
        return;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    const std::int64_t max_threads = hw == 0 ? 1 : static_cast<std::int64_t>(hw);
    const std::int64_t n_threads = std::min<std::int64_t>(max_threads, count);
    if (n_threads <= 1) {
        for (std::int64_t i = begin; i < end; ++i) {
            fn(i);
        }
        return;
    }

    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_threads));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(n_threads));
    for (std::int64_t t = 0; t < n_threads; ++t) {
        const std::int64_t chunk_begin = begin + count * t / n_threads;
        const std::int64_t chunk_end = begin + count * (t + 1) / n_threads;
        threads.emplace_back([&, t, chunk_begin, chunk_end] {
            try {
                for (std::int64_t i = chunk_begin; i < chunk_end; ++i) {
                    fn(i);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& thread : threads) {
        thread.join();
    }
    for (const auto& error : errors) {
        if (error) {
            std::rethrow_exception(error);
        }
    }
}

}  // namespace qfiprobe::detail
