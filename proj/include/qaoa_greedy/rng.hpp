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
/**
 * @file
 * Portable seeded generator. The standard distributions are not bit-identical
 * across library implementations, so everything that must be reproducible
 * (graphs, weights, multistart shifts) draws from here.
 */
#pragma once

#include <cstdint>

namespace qaoa_greedy {

/// SplitMix64 (Steele, Lea, Flood 2014).
class SplitMix64 {
  public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31U);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform01() noexcept {
        return static_cast<double>(next() >> 11U) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound), rejection-sampled (no modulo bias).
    constexpr std::uint64_t uniform_below(std::uint64_t bound) noexcept {
        if (bound <= 1) {
            return 0;
        }
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x = next();
        while (x >= limit) {
            x = next();
        }
        return x % bound;
    }

  private:
    std::uint64_t state_;
};

/// Counter-mode split: independent child seed for stream `counter`.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t base,
                                                  std::uint64_t counter) noexcept {
    SplitMix64 mix(base ^ (0xD1B54A32D192ED03ULL * (counter + 1)));
    mix.next();
    return mix.next();
}

} // namespace qaoa_greedy
