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

// One entry point over every model kind and solver. QUBO inputs are solved
// through their exact Ising image; HUBO inputs are reduced to quadratic form
// and every sample is lifted back and re-evaluated on the original model.

#include <optional>
#include <string>
#include <type_traits>
#include <variant>

#include "qubokit/bnb.hpp"
#include "qubokit/config.hpp"
#include "qubokit/exact.hpp"
#include "qubokit/io.hpp"
#include "qubokit/model.hpp"
#include "qubokit/pa.hpp"
#include "qubokit/reduction.hpp"
#include "qubokit/sa.hpp"
#include "qubokit/samples.hpp"
#include "qubokit/sbm.hpp"

namespace qubokit {

struct SolveOutcome {
    std::string solver;
    SampleSet samples;             // states over the original variables (as spins)
    std::optional<bool> optimal;   // exact methods only
    std::optional<ReductionMap> reduction;
    std::size_t solved_size = 0;   // variables seen by the engine
    double wall_time = 0.0;        // engine call only
};

inline SolveOutcome solve_ising(const IsingModel& m, const SolverParams& params) {
    SolveOutcome out;
    out.solver = solver_name(params);
    out.solved_size = m.size();
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SaParams>) {
                out.samples = solve_sa(m, p);
            } else if constexpr (std::is_same_v<T, PaParams>) {
                out.samples = solve_pa(m, p);
            } else if constexpr (std::is_same_v<T, SbmParams>) {
                out.samples = solve_sbm(m, p);
            } else if constexpr (std::is_same_v<T, BruteForceParams>) {
                Stopwatch clock;
                auto r = solve_brute_force(m, p.cap);
                out.samples = make_sample_set(m, {std::move(r.state)}, 0, clock.seconds());
                out.optimal = true;
            } else {
                auto r = solve_bb(m, p);
                out.samples = make_sample_set(m, {std::move(r.state)}, 0, r.wall_time);
                out.optimal = r.optimal;
            }
        },
        params);
    out.wall_time = out.samples.wall_time;
    return out;
}

inline SolveOutcome solve_model(const AnyModel& model, const SolverParams& params) {
    return std::visit(
        [&](const auto& m) -> SolveOutcome {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, IsingModel>) {
                return solve_ising(m, params);
            } else if constexpr (std::is_same_v<T, QuboModel>) {
                return solve_ising(qubo_to_ising(m), params);
            } else {
                if (std::holds_alternative<BruteForceParams>(params)) {
                    // Enumerate the original polynomial directly.
                    const auto& p = std::get<BruteForceParams>(params);
                    Stopwatch clock;
                    const HuboModel spin = hubo_to_spin(m);
                    auto r = solve_brute_force(spin, p.cap);
                    SolveOutcome out;
                    out.solver = solver_name(params);
                    out.solved_size = m.size();
                    out.samples = make_sample_set(spin, {std::move(r.state)}, 0, clock.seconds());
                    out.optimal = true;
                    out.wall_time = out.samples.wall_time;
                    return out;
                }
                auto [reduced, map] = reduce_cubic(m);
                SolveOutcome out = solve_ising(reduced, params);
                const HuboModel spin = hubo_to_spin(m);
                for (auto& s : out.samples.samples) {
                    s.state = lift_solution(map, s.state);
                    s.energy = spin.energy(s.state);
                }
                out.samples.sort();
                out.reduction = std::move(map);
                return out;
            }
        },
        model);
}

}  // namespace qubokit
