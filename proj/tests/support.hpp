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

// Bridges between oracle data and library types.

#include <cstdint>
#include <vector>

#include "oracle.hpp"
#include "qubokit/model.hpp"
#include "qubokit/sbm.hpp"

namespace support {

inline qubokit::IsingModel to_model(const oracle::DenseIsing& m) {
    std::vector<qubokit::Coupling> c;
    for (std::size_t i = 0; i < m.n; ++i) {
        for (std::size_t j = i + 1; j < m.n; ++j) {
            if (m.J[i][j] != 0.0) c.push_back({qubokit::Index(i), qubokit::Index(j), m.J[i][j]});
        }
    }
    return qubokit::IsingModel(m.n, m.h, std::move(c), m.offset);
}

inline qubokit::QuboModel to_model(const oracle::DenseQubo& q) {
    std::vector<qubokit::QuboTerm> t;
    for (std::size_t i = 0; i < q.n; ++i) {
        for (std::size_t j = i; j < q.n; ++j) {
            if (q.Q[i][j] != 0.0) t.push_back({qubokit::Index(i), qubokit::Index(j), q.Q[i][j]});
        }
    }
    return qubokit::QuboModel(q.n, std::move(t), q.offset);
}

inline oracle::Poly to_poly(const qubokit::HuboModel& h) {
    oracle::Poly p;
    for (const auto& t : h.terms()) p.terms.push_back({{t.vars.begin(), t.vars.end()}, t.value});
    return p;
}

inline qubokit::SpinVector spins(const std::vector<int>& s) { return {s.begin(), s.end()}; }
inline qubokit::BinaryVector bits(const std::vector<int>& x) { return {x.begin(), x.end()}; }

inline std::vector<int> ints(const qubokit::SpinVector& s) { return {s.begin(), s.end()}; }

/// Dense Ising oracle view of a library model.
inline oracle::DenseIsing to_dense(const qubokit::IsingModel& m) {
    oracle::DenseIsing d{m.size(), m.h(), oracle::Dense(m.size(), std::vector<double>(m.size(), 0.0)), m.offset()};
    for (const auto& c : m.couplings()) d.J[c.i][c.j] = d.J[c.j][c.i] = d.J[c.i][c.j] + c.value;
    return d;
}

inline double oracle_minimum(const qubokit::IsingModel& m) { return oracle::minimum_spin(to_dense(m), m.size()).first; }

/// SBM settings used where a solution-quality threshold is checked: twice the
/// automatic coupling scale and a coarser step than the defaults.
inline qubokit::SbmParams tuned_sbm() {
    qubokit::SbmParams p;
    p.dt = 0.05;
    p.c0_scale = 2.0;
    return p;
}

}  // namespace support
