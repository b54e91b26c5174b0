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

// Parallel annealing: analog spins x in [-1, 1] follow momentum gradient
// descent on lambda(t) |x|^2 / 2 + E(sign(x)), where the target gradient is
// evaluated at the binarized spins (straight-through estimator) and
// lambda(t) = lambda0 (1 - t / T) decays linearly to zero.

#include <cmath>
#include <algorithm>
#include <functional>
#include <span>
#include <optional>
#include <vector>

#include "qubokit/model.hpp"
#include "qubokit/parallel.hpp"
#include "qubokit/rng.hpp"
#include "qubokit/samples.hpp"

namespace qubokit {

struct PaParams {
    std::size_t steps = 1000;
    std::optional<double> learning_rate;  // unset: 0.1 / lambda0
    double momentum = 0.9;
    std::optional<double> lambda0;  // unset: max_i (|h_i| + sum_j |J_ij|)
    std::size_t replicas = 32;
    std::uint64_t seed = 0;
    std::size_t workers = 0;
};

inline double resolve_lambda0(const IsingModel& m, const PaParams& p) {
    if (p.lambda0) {
        if (!(*p.lambda0 > 0.0)) throw ValidationError("lambda0 must be > 0");
        return *p.lambda0;
    }
    const double v = m.max_row_magnitude();
    return v > 0.0 ? v : 1.0;
}

inline double resolve_learning_rate(const IsingModel& m, const PaParams& p) {
    if (p.learning_rate) {
        if (!(*p.learning_rate > 0.0)) throw ValidationError("learning_rate must be > 0");
        return *p.learning_rate;
    }
    return 0.1 / resolve_lambda0(m, p);
}

/// Observer hook for tests: called after every update with the analog spins.
using PaObserver = std::function<void(std::size_t replica, std::size_t step, std::span<const double> x)>;

inline SampleSet solve_pa(const IsingModel& m, const PaParams& p, const PaObserver& observe = {}) {
    if (p.replicas == 0) throw ValidationError("replicas must be >= 1");
    if (!(p.momentum >= 0.0 && p.momentum < 1.0)) throw ValidationError("momentum must lie in [0, 1)");
    const double lambda0 = resolve_lambda0(m, p);
    const double eta = resolve_learning_rate(m, p);
    const std::size_t n = m.size();
    Stopwatch clock;
    std::vector<SpinVector> finals(p.replicas);
    parallel_for(p.replicas, observe ? 1 : resolve_workers(p.workers), [&](std::size_t r) {
        Rng rng(p.seed, r);
        std::vector<double> x(n), velocity(n, 0.0), field(n);
        SpinVector s(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.uniform(-1.0, 1.0);
            s[i] = sign_of(x[i]);
        }
        for (std::size_t i = 0; i < n; ++i) field[i] = m.local_field(i, s);
        for (std::size_t t = 0; t < p.steps; ++t) {
            const double lambda = lambda0 * (1.0 - double(t) / double(p.steps));
            for (std::size_t i = 0; i < n; ++i) {
                const double grad = lambda * x[i] + field[i];
                velocity[i] = p.momentum * velocity[i] - eta * grad;
                x[i] = std::clamp(x[i] + velocity[i], -1.0, 1.0);
            }
            for (std::size_t i = 0; i < n; ++i) {
                const Spin next = sign_of(x[i]);
                if (next == s[i]) continue;
                s[i] = next;
                const double change = 2.0 * next;
                for (const auto& nb : m.neighbors(i)) field[nb.index] += change * nb.value;
            }
            if (observe) observe(r, t, x);
        }
        finals[r] = std::move(s);
    });
    return make_sample_set(m, std::move(finals), p.seed, clock.seconds());
}

}  // namespace qubokit
