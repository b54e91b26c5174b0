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

// Exhaustive minimization in Gray-code order. Step k flips the spin at the
// lowest set bit of k, so each step costs O(degree). Bit i of the Gray index
// maps to spin i with 0 -> -1 and 1 -> +1; enumeration starts from all -1.
// Ties keep the first state found.

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qubokit/errors.hpp"
#include "qubokit/model.hpp"

namespace qubokit {

struct ExactResult {
    SpinVector state;
    double energy;
};

inline constexpr std::size_t kDefaultBruteForceCap = 30;

namespace detail {

inline void check_cap(std::size_t n, std::size_t cap) {
    if (cap > 62) cap = 62;
    if (n > cap) {
        throw CapacityError("brute force over " + std::to_string(n) + " variables exceeds the cap of " +
                            std::to_string(cap) + "; use a heuristic solver or branch and bound");
    }
}

// Enumerated energies accumulate rounding; a state only replaces the incumbent
// when it is lower by more than this slack, which keeps the first-found
// tie-break stable for exactly degenerate states.
inline double tie_slack(double magnitude) { return 1e-12 * std::max(1.0, magnitude); }

}  // namespace detail

inline ExactResult solve_brute_force(const IsingModel& m, std::size_t cap = kDefaultBruteForceCap) {
    const std::size_t n = m.size();
    detail::check_cap(n, cap);
    SpinVector s(n, Spin{-1});
    std::vector<double> field(n);
    for (std::size_t i = 0; i < n; ++i) field[i] = m.local_field(i, s);
    double magnitude = std::abs(m.offset());
    for (std::size_t i = 0; i < n; ++i) magnitude += m.row_magnitude(i);
    const double slack = detail::tie_slack(magnitude);

    double energy = m.energy(s);
    double best = energy;
    std::uint64_t best_gray = 0;
    std::uint64_t gray = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < total; ++k) {
        const auto i = std::size_t(std::countr_zero(k));
        energy -= 2.0 * s[i] * field[i];
        s[i] = Spin(-s[i]);
        gray ^= std::uint64_t{1} << i;
        const double change = 2.0 * s[i];
        for (const auto& nb : m.neighbors(i)) field[nb.index] += change * nb.value;
        if (energy < best - slack) {
            best = energy;
            best_gray = gray;
        }
    }
    SpinVector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (best_gray >> i & 1) ? Spin{1} : Spin{-1};
    return {out, m.energy(out)};
}

/// Same enumeration for a HUBO (binary models are enumerated over spins after
/// rewriting). Each flip negates the terms containing the flipped spin.
inline ExactResult solve_brute_force(const HuboModel& input, std::size_t cap = kDefaultBruteForceCap) {
    const HuboModel h = hubo_to_spin(input);
    const std::size_t n = h.size();
    detail::check_cap(n, cap);
    std::vector<std::vector<std::size_t>> incident(n);
    std::vector<double> value(h.terms().size());
    SpinVector s(n, Spin{-1});
    double energy = 0.0, magnitude = 0.0;
    for (std::size_t t = 0; t < h.terms().size(); ++t) {
        const auto& term = h.terms()[t];
        value[t] = (term.vars.size() % 2 == 0) ? term.value : -term.value;
        energy += value[t];
        magnitude += std::abs(term.value);
        for (Index v : term.vars) incident[v].push_back(t);
    }
    const double slack = detail::tie_slack(magnitude);
    double best = energy;
    std::uint64_t best_gray = 0, gray = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < total; ++k) {
        const auto i = std::size_t(std::countr_zero(k));
        for (std::size_t t : incident[i]) {
            energy -= 2.0 * value[t];
            value[t] = -value[t];
        }
        s[i] = Spin(-s[i]);
        gray ^= std::uint64_t{1} << i;
        if (energy < best - slack) {
            best = energy;
            best_gray = gray;
        }
    }
    SpinVector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (best_gray >> i & 1) ? Spin{1} : Spin{-1};
    return {out, h.energy(out)};
}

}  // namespace qubokit
