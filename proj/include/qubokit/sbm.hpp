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

// Simulated bifurcation. Each spin is an oscillator (q_i, p_i) following
//
//     dq_i/dt = a0 p_i
//     dp_i/dt = -(q_i^2 + a0 - a(t)) q_i + c0 (sum_j M_ij q_j + g_i)
//
// with a(t) ramped linearly from 0 to a0. The dynamics maximize
// q^T M q / 2 + g^T q, so the adapter feeds M = -J and g = -h to minimize the
// Ising energy. Integration is semi-implicit Euler (p first, then q with the
// new p). Positions beyond q_cap are clipped to the wall and their momentum
// zeroed. Spins are read out as sign(q).

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qubokit/linalg.hpp"
#include "qubokit/model.hpp"
#include "qubokit/parallel.hpp"
#include "qubokit/rng.hpp"
#include "qubokit/samples.hpp"

namespace qubokit {

struct SbmParams {
    std::size_t steps = 10000;
    double dt = 0.01;
    double a0 = 1.0;
    std::optional<double> c0;  // unset: c0_scale / lambda_max of the dynamics matrix
    double c0_scale = 1.0;     // multiplies the automatic c0 only
    double init_amplitude = 0.1;
    double q_cap = 2.0;
    std::size_t replicas = 32;
    std::uint64_t seed = 0;
    std::size_t workers = 0;
};

/// c0_scale / lambda_max(-J). Falls back to the Gershgorin bound of |J| when the
/// top eigenvalue is not positive, and to 1 for a coupling-free model.
inline double resolve_c0(const IsingModel& m, const SbmParams& p) {
    if (p.c0) {
        if (!(*p.c0 > 0.0)) throw ValidationError("c0 must be > 0");
        return *p.c0;
    }
    if (!(p.c0_scale > 0.0)) throw ValidationError("c0_scale must be > 0");
    const double lambda_max = -eig_extreme(m, Extreme::min).value;
    if (lambda_max > 1e-12) return p.c0_scale / lambda_max;
    double radius = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        double r = 0.0;
        for (const auto& nb : m.neighbors(i)) r += std::abs(nb.value);
        radius = std::max(radius, r);
    }
    return p.c0_scale * (radius > 0.0 ? 1.0 / radius : 1.0);
}

struct SbmTrace {
    std::span<const double> q;
    std::span<const double> p;
    double a;
};

using SbmObserver = std::function<void(std::size_t replica, std::size_t step, const SbmTrace&)>;

struct SbmRun {
    std::vector<double> q;
    std::vector<double> p;
};

/// Integrates one replica from the given initial condition; `c0` already
/// resolved. Exposed for trajectory-level tests.
inline void integrate_sbm(const IsingModel& m, const SbmParams& prm, double c0, SbmRun& state,
                          const std::function<double(std::size_t)>& ramp, std::size_t replica = 0,
                          const SbmObserver& observe = {}) {
    const std::size_t n = m.size();
    std::vector<double> force(n);
    for (std::size_t t = 0; t < prm.steps; ++t) {
        const double a = ramp(t);
        for (std::size_t i = 0; i < n; ++i) {
            double coupled = -m.h(i);
            for (const auto& nb : m.neighbors(i)) coupled -= nb.value * state.q[nb.index];
            force[i] = -(state.q[i] * state.q[i] + prm.a0 - a) * state.q[i] + c0 * coupled;
        }
        for (std::size_t i = 0; i < n; ++i) {
            state.p[i] += prm.dt * force[i];
            state.q[i] += prm.dt * prm.a0 * state.p[i];
            if (std::abs(state.q[i]) > prm.q_cap) {
                state.q[i] = std::copysign(prm.q_cap, state.q[i]);
                state.p[i] = 0.0;
            }
        }
        if (observe) observe(replica, t, {state.q, state.p, a});
    }
}

inline SampleSet solve_sbm(const IsingModel& m, const SbmParams& p, const SbmObserver& observe = {}) {
    if (p.replicas == 0) throw ValidationError("replicas must be >= 1");
    if (!(p.dt > 0.0) || !std::isfinite(p.dt * double(p.steps))) throw ValidationError("dt must be > 0");
    if (!(p.q_cap > 0.0)) throw ValidationError("q_cap must be > 0");
    const double c0 = resolve_c0(m, p);
    const std::size_t n = m.size();
    Stopwatch clock;
    const auto ramp = [&p](std::size_t t) { return p.a0 * double(t + 1) / double(p.steps); };
    std::vector<SpinVector> finals(p.replicas);
    parallel_for(p.replicas, observe ? 1 : resolve_workers(p.workers), [&](std::size_t r) {
        Rng rng(p.seed, r);
        SbmRun state{std::vector<double>(n), std::vector<double>(n)};
        for (std::size_t i = 0; i < n; ++i) {
            state.q[i] = rng.uniform(-p.init_amplitude, p.init_amplitude);
            state.p[i] = rng.uniform(-p.init_amplitude, p.init_amplitude);
        }
        integrate_sbm(m, p, c0, state, ramp, r, observe);
        SpinVector s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = sign_of(state.q[i]);
        finals[r] = std::move(s);
    });
    return make_sample_set(m, std::move(finals), p.seed, clock.seconds());
}

}  // namespace qubokit
