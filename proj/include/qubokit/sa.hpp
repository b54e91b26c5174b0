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

// Single-spin-flip Metropolis simulated annealing.

#include <cmath>
#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "qubokit/model.hpp"
#include "qubokit/parallel.hpp"
#include "qubokit/rng.hpp"
#include "qubokit/samples.hpp"

namespace qubokit {

struct SaParams {
    std::size_t sweeps = 1000;
    // Unset temperatures are derived from the model: the hot end accepts the
    // largest possible uphill flip with probability 1/2, the cold end accepts
    // the smallest nonzero one with probability 1/100.
    std::optional<double> t_init;
    std::optional<double> t_final;
    std::size_t replicas = 32;
    std::uint64_t seed = 0;
    std::size_t workers = 0;
};

struct TemperatureRange {
    double hot;
    double cold;
};

inline TemperatureRange resolve_temperatures(const IsingModel& m, const SaParams& p) {
    double hot = 1.0, cold = 1.0;
    const double max_flip = 2.0 * m.max_row_magnitude();
    double min_coef = std::numeric_limits<double>::infinity();
    for (double v : m.h()) {
        if (v != 0.0) min_coef = std::min(min_coef, std::abs(v));
    }
    for (const auto& c : m.couplings()) {
        if (c.value != 0.0) min_coef = std::min(min_coef, std::abs(c.value));
    }
    if (max_flip > 0.0) {
        hot = max_flip / std::log(2.0);
        cold = 2.0 * min_coef / std::log(100.0);
    }
    TemperatureRange t{p.t_init.value_or(hot), p.t_final.value_or(std::min(cold, p.t_init.value_or(hot)))};
    if (!(t.cold > 0.0) || !(t.hot >= t.cold) || !std::isfinite(t.hot)) {
        throw ValidationError("simulated annealing needs t_init >= t_final > 0");
    }
    return t;
}

inline SampleSet solve_sa(const IsingModel& m, const SaParams& p) {
    if (p.replicas == 0) throw ValidationError("replicas must be >= 1");
    const TemperatureRange temps = resolve_temperatures(m, p);
    const std::size_t n = m.size();
    Stopwatch clock;
    std::vector<SpinVector> finals(p.replicas);
    std::vector<double> beta(p.sweeps);
    for (std::size_t k = 0; k < p.sweeps; ++k) {
        const double frac = p.sweeps > 1 ? double(k) / double(p.sweeps - 1) : 1.0;
        beta[k] = 1.0 / (temps.hot * std::pow(temps.cold / temps.hot, frac));
    }
    parallel_for(p.replicas, resolve_workers(p.workers), [&](std::size_t r) {
        Rng rng(p.seed, r);
        SpinVector s(n);
        for (auto& v : s) v = rng.coin() ? Spin{1} : Spin{-1};
        std::vector<double> field(n);
        for (std::size_t i = 0; i < n; ++i) field[i] = m.local_field(i, s);
        for (double b : beta) {
            for (std::size_t i = 0; i < n; ++i) {
                const double delta = -2.0 * s[i] * field[i];
                if (delta > 0.0 && rng.uniform() >= std::exp(-b * delta)) continue;
                s[i] = Spin(-s[i]);
                const double change = 2.0 * s[i];
                for (const auto& nb : m.neighbors(i)) field[nb.index] += change * nb.value;
            }
        }
        finals[r] = std::move(s);
    });
    return make_sample_set(m, std::move(finals), p.seed, clock.seconds());
}

}  // namespace qubokit
