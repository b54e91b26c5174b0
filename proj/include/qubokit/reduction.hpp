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

#include <array>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "qubokit/model.hpp"

namespace qubokit {

struct AuxBinding {
    Index aux;
    std::array<Index, 3> vars;

    friend bool operator==(const AuxBinding&, const AuxBinding&) = default;
};

/// Bookkeeping for a cubic-to-quadratic reduction. For every assignment s of
/// the original spins,
///
///     min_aux E_reduced(s, aux) == energy_scale * E_original(s) + energy_shift.
struct ReductionMap {
    std::size_t original_n = 0;
    std::vector<AuxBinding> aux_bindings;
    double energy_scale = 1.0;
    double energy_shift = 0.0;

    std::size_t reduced_size() const { return original_n + aux_bindings.size(); }

    friend bool operator==(const ReductionMap&, const ReductionMap&) = default;
};

/// Quadratic gadget for sign * s_i s_j s_k with auxiliary spin a:
///
///     3 + sign (s_i + s_j + s_k + 2a) + 2a (s_i + s_j + s_k) + s_i s_j + s_j s_k + s_i s_k
///
/// whose minimum over a equals sign * s_i s_j s_k. A coefficient K is handled
/// by multiplying the whole gadget by |K| with sign = sign(K).
inline double cubic_gadget(int sign, Spin si, Spin sj, Spin sk, Spin aux) {
    const int sum = si + sj + sk;
    return 3.0 + sign * (sum + 2 * aux) + 2 * aux * sum + si * sj + sj * sk + si * sk;
}

/// Reduces a spin-domain HUBO of order <= 3 to an IsingModel with one
/// auxiliary spin per cubic term. Binary-domain input is first rewritten over
/// spins. Auxiliary spins are numbered original_n, original_n + 1, ... in term
/// order.
inline std::pair<IsingModel, ReductionMap> reduce_cubic(const HuboModel& input) {
    if (input.max_order() > 3) {
        throw UnsupportedOrderError("cubic reduction supports order <= 3, model has order " +
                                    std::to_string(input.max_order()));
    }
    const HuboModel h = hubo_to_spin(input);
    ReductionMap map;
    map.original_n = h.size();
    for (const auto& t : h.terms()) {
        if (t.vars.size() == 3 && t.value != 0.0) {
            map.aux_bindings.push_back({Index(map.original_n + map.aux_bindings.size()),
                                        {t.vars[0], t.vars[1], t.vars[2]}});
        }
    }
    const std::size_t n = map.reduced_size();
    std::vector<double> fields(n, 0.0);
    std::vector<Coupling> couplings;
    double offset = 0.0;
    std::size_t next_aux = 0;
    for (const auto& t : h.terms()) {
        switch (t.vars.size()) {
            case 0: offset += t.value; break;
            case 1: fields[t.vars[0]] += t.value; break;
            case 2: couplings.push_back({t.vars[0], t.vars[1], t.value}); break;
            case 3: {
                if (t.value == 0.0) break;
                const double w = std::abs(t.value);
                const double sign = t.value > 0 ? 1.0 : -1.0;
                const Index a = map.aux_bindings[next_aux++].aux;
                const Index i = t.vars[0], j = t.vars[1], k = t.vars[2];
                offset += 3.0 * w;
                for (Index v : {i, j, k}) {
                    fields[v] += sign * w;
                    couplings.push_back({a, v, 2.0 * w});
                }
                fields[a] += 2.0 * sign * w;
                couplings.push_back({i, j, w});
                couplings.push_back({j, k, w});
                couplings.push_back({i, k, w});
                break;
            }
            default: break;
        }
    }
    return {IsingModel(n, std::move(fields), std::move(couplings), offset), std::move(map)};
}

inline SpinVector lift_solution(const ReductionMap& map, std::span<const Spin> reduced) {
    if (reduced.size() != map.reduced_size()) {
        throw DimensionError("reduced state has " + std::to_string(reduced.size()) + " entries, map expects " +
                             std::to_string(map.reduced_size()));
    }
    return SpinVector(reduced.begin(), reduced.begin() + static_cast<std::ptrdiff_t>(map.original_n));
}

/// Extends an original assignment with energy-minimizing auxiliary spins so
/// that E_reduced(extended) == scale * E_original(original) + shift.
inline SpinVector extend_solution(const IsingModel& reduced, const ReductionMap& map,
                                  std::span<const Spin> original) {
    detail::check_dimension(map.original_n, original.size());
    SpinVector s(original.begin(), original.end());
    s.resize(map.reduced_size(), 1);
    // Each auxiliary couples only to its own triple.
    for (const auto& b : map.aux_bindings) s[b.aux] = Spin(-sign_of(reduced.local_field(b.aux, s)));
    return s;
}

}  // namespace qubokit
