// Copyright 2026 The qubokit Authors.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

// Counter-based pseudo random numbers with platform-independent output.
//
// Draw k of a generator with key K is splitmix64(K + k * golden_gamma). The key
// of stream `s` under seed `seed` is
//
//     K(seed, s) = mix64(mix64(seed) ^ mix64(s + golden_gamma))
//
// so independent streams (replicas, suite instances, ...) are obtained by
// indexing, never by sequential consumption. All distributions below are
// implemented here rather than through <random> because the standard
// distributions are not bitwise reproducible across standard libraries.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace qubokit {

class Rng {
 public:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : key_(derive_key(seed, stream)) {}

    static constexpr std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
        return mix64(mix64(seed) ^ mix64(stream + kGamma));
    }

    /// Child generator for sub-stream `stream`; independent of how much of
    /// this generator has been consumed.
    Rng split(std::uint64_t stream) const {
        Rng child(0);
        child.key_ = mix64(key_ ^ mix64(stream + kGamma));
        return child;
    }

    std::uint64_t next_u64() {
        ++counter_;
        return mix64(key_ + counter_ * kGamma);
    }

    /// Uniform on [0, 1) with 53 bits of precision.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Uniform integer in [0, bound), unbiased (rejection on the top range).
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform integer on the closed range [a, b].
    std::int64_t uniform_int(std::int64_t a, std::int64_t b) {
        const auto span = static_cast<std::uint64_t>(b - a) + 1;
        if (span == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit range
        return a + static_cast<std::int64_t>(below(span));
    }

    /// Standard normal via Box-Muller; the paired deviate is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    bool coin() { return (next_u64() >> 63) != 0; }

    /// Fisher-Yates shuffle of a random-access range.
    template <class Range>
    void shuffle(Range& range) {
        const auto size = static_cast<std::uint64_t>(std::size(range));
        for (std::uint64_t i = size; i > 1; --i) {
            const std::uint64_t j = below(i);
            using std::swap;
            swap(range[i - 1], range[j]);
        }
    }

 private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace qubokit
