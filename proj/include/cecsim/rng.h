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

#ifndef CECSIM_RNG_H
#define CECSIM_RNG_H

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace cecsim {

constexpr uint64_t splitmix64_mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based generator: output k is a fixed hash of (key, k).
///
/// Streams are named by a seed plus a path of integers (cell id, sample index,
/// trajectory index, ...), so results do not depend on which worker draws them.
class CounterRng {
   public:
    using result_type = uint64_t;

    explicit CounterRng(uint64_t key, uint64_t counter = 0) : key_(key), counter_(counter) {
    }

    static uint64_t derive_key(uint64_t seed, std::initializer_list<uint64_t> path) {
        uint64_t k = splitmix64_mix(seed ^ 0x6A09E667F3BCC909ULL);
        for (uint64_t p : path) {
            k = splitmix64_mix(k ^ splitmix64_mix(p + 0x9E3779B97F4A7C15ULL));
        }
        return k;
    }

    static CounterRng stream(uint64_t seed, std::initializer_list<uint64_t> path) {
        return CounterRng(derive_key(seed, path));
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<uint64_t>::max(); }

    result_type operator()() {
        return splitmix64_mix(key_ + (counter_++) * 0x9E3779B97F4A7C15ULL);
    }

    /// Unbiased integer in [0, n) (Lemire's multiply-and-reject).
    uint64_t below(uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * n;
        auto low = static_cast<uint64_t>(m);
        if (low < n) {
            uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>((*this)()) * n;
                low = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    uint64_t counter() const { return counter_; }

   private:
    uint64_t key_;
    uint64_t counter_;
};

}  // namespace cecsim

#endif
