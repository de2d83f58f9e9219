// Copyright 2026 The qaoa-greedy Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace qaoa_greedy {

inline constexpr const char *kWorkerEnvVar = "QAOA_GREEDY_WORKERS";

/// Worker count from QAOA_GREEDY_WORKERS, else the hardware concurrency.
[[nodiscard]] inline unsigned worker_count() {
    if (const char *env = std::getenv(kWorkerEnvVar)) {
        try {
            const long v = std::stol(env);
            if (v >= 1) {
                return static_cast<unsigned>(std::min(v, 256L));
            }
        } catch (const std::exception &) {
            // fall through to the default
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/**
 * Runs fn(i) for i in [0, count) on a bounded pool. Results are stored by
 * index, so the output is independent of scheduling. The first exception (by
 * index) is rethrown after all workers finish.
 */
template <typename T>
[[nodiscard]] std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)> &fn,
                                          unsigned workers = worker_count()) {
    std::vector<T> out(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned pool = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (pool <= 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(pool);
        for (unsigned t = 0; t < pool; ++t) {
            threads.emplace_back(work);
        }
        for (auto &t : threads) {
            t.join();
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

} // namespace qaoa_greedy
