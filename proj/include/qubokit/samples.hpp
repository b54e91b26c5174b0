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

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <vector>

#include "qubokit/model.hpp"

namespace qubokit {

struct Sample {
    SpinVector state;
    double energy;
    std::size_t replica;
};

/// Replica ensemble sorted ascending by energy (ties by replica index).
struct SampleSet {
    std::vector<Sample> samples;
    std::size_t replica_count = 0;
    std::uint64_t seed = 0;
    double wall_time = 0.0;

    const Sample& best() const { return samples.front(); }
    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }

    void sort() {
        std::stable_sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
            return a.energy != b.energy ? a.energy < b.energy : a.replica < b.replica;
        });
    }
};

/// Builds a SampleSet from per-replica final states, evaluating every energy
/// with the model itself.
template <class Model>
SampleSet make_sample_set(const Model& model, std::vector<SpinVector> states, std::uint64_t seed, double wall_time) {
    SampleSet out;
    out.replica_count = states.size();
    out.seed = seed;
    out.wall_time = wall_time;
    out.samples.reserve(states.size());
    for (std::size_t r = 0; r < states.size(); ++r) {
        const double e = model.energy(states[r]);
        out.samples.push_back({std::move(states[r]), e, r});
    }
    out.sort();
    return out;
}

class Stopwatch {
 public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

 private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace qubokit
