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


#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "oracle.hpp"
#include "support.hpp"
#include "qubokit/bnb.hpp"
#include "qubokit/exact.hpp"
#include "qubokit/generators.hpp"

using namespace qubokit;
using Catch::Approx;

namespace {

// Minimum energy over all completions of the first prefix.size() spins.
double completion_minimum(const oracle::DenseIsing& m, const std::vector<int>& prefix) {
    const std::size_t k = prefix.size(), free = m.n - k;
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << free); ++c) {
        std::vector<int> s = prefix;
        const auto tail = oracle::spins_of(c, free);
        s.insert(s.end(), tail.begin(), tail.end());
        best = std::min(best, oracle::energy(m, s));
    }
    return best;
}

// Energy of the subgraph induced by the fixed spins, evaluated naively.
double induced_energy(const oracle::DenseIsing& m, const std::vector<int>& prefix) {
    double e = m.offset;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        e += m.h[i] * prefix[i];
        for (std::size_t j = i + 1; j < prefix.size(); ++j) e += m.J[i][j] * prefix[i] * prefix[j];
    }
    return e;
}

BBNode node_of(const std::vector<int>& prefix) { return BBNode{support::spins(prefix), 0.0, 0.0}; }

}  // namespace

TEST_CASE("Base bound") {
    oracle::Source src(1);
    const auto dense = src.ising(10);
    const IsingModel m = support::to_model(dense);
    SECTION("empty prefix gives the offset") {
        CHECK(bound_base(m, node_of({})) == Approx(dense.offset).margin(1e-12));
        CHECK(bound_base(IsingModel(4), node_of({})) == 0.0);
    }
    SECTION("full prefix gives the energy") {
        const auto s = oracle::spins_of(0x2b5, 10);
        CHECK(bound_base(m, node_of(s)) == Approx(oracle::energy(dense, s)).margin(1e-9));
    }
    SECTION("half prefix equals the induced subgraph energy") {
        for (std::uint64_t k = 0; k < 32; ++k) {
            const auto s = oracle::spins_of(k, 5);
            CHECK(bound_base(m, node_of(s)) == Approx(induced_energy(dense, s)).margin(1e-9));
        }
    }
    SECTION("prefix validation") {
        CHECK_THROWS_AS(bound_base(m, node_of(std::vector<int>(11, 1))), DimensionError);
        CHECK_THROWS_AS(bound_base(m, node_of({1, 0})), ValidationError);
    }
}

TEST_CASE("SPD bound") {
    SECTION("single free spin matches the closed form") {
        oracle::Source src(2);
        for (int trial = 0; trial < 20; ++trial) {
            const auto dense = src.ising(6);
            const IsingModel m = support::to_model(dense);
            const auto prefix = oracle::spins_of(std::uint64_t(trial) * 7 % 32, 5);
            double field = dense.h[5];
            for (std::size_t i = 0; i < 5; ++i) field += dense.J[i][5] * prefix[i];
            const double exact = induced_energy(dense, prefix) - std::abs(field);
            const double bound = bound_spd(m, node_of(prefix), 1e-6, BoundKind::spd_admissible);
            CHECK(bound <= exact + 1e-9);
            CHECK(bound == Approx(exact).margin(1e-6));
        }
    }
    SECTION("shift is epsilon when the spectrum is nonnegative") {
        CHECK(spd_shift(Eigen::MatrixXd::Zero(3, 3), 1e-6) == Approx(1e-6).epsilon(1e-12));
        Eigen::MatrixXd pair(2, 2);
        pair << 0, 1, 1, 0;
        CHECK(spd_shift(pair, 1e-6) == Approx(1.0 + 1e-6).epsilon(1e-9));
    }
    SECTION("full prefix gives the energy in every mode") {
        oracle::Source src(3);
        const auto dense = src.ising(8);
        const auto s = oracle::spins_of(0x5a, 8);
        for (auto kind : {BoundKind::spd, BoundKind::spd_literal, BoundKind::spd_admissible}) {
            CHECK(bound_spd(support::to_model(dense), node_of(s), 1e-6, kind) ==
                  Approx(oracle::energy(dense, s)).margin(1e-9));
        }
    }
    SECTION("literal and folded variants agree on the empty prefix") {
        oracle::Source src(4);
        const IsingModel m = support::to_model(src.ising(9));
        CHECK(bound_spd(m, node_of({}), 1e-3, BoundKind::spd_literal) ==
              Approx(bound_spd(m, node_of({}), 1e-3, BoundKind::spd)).margin(1e-9));
    }
    SECTION("admissible bound never exceeds the completion minimum at n = 18") {
        oracle::Source src(5);
        const auto dense = src.ising(18);
        const IsingModel m = support::to_model(dense);
        int violations = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t k = std::size_t(src.integer(0, 17));
            std::vector<int> prefix(k);
            for (auto& v : prefix) v = src.coin() ? 1 : -1;
            violations += bound_spd(m, node_of(prefix), 1e-6, BoundKind::spd_admissible) >
                          completion_minimum(dense, prefix) + 1e-9;
        }
        CHECK(violations == 0);
    }
    SECTION("invalid epsilon") {
        CHECK_THROWS_AS(bound_spd(IsingModel(2), node_of({}), 0.0), ValidationError);
    }
}

TEST_CASE("Branching order and permutation") {
    const IsingModel m(4, {0.1, -2.0, 0.0, 0.5}, {{0, 2, 1.0}, {2, 3, -0.25}});
    const auto order = branching_order(m);
    CHECK(order == std::vector<Index>{1, 2, 0, 3});
    const IsingModel p = permute(m, order);
    for (std::uint64_t k = 0; k < 16; ++k) {
        const auto s = oracle::spins_of(k, 4);
        SpinVector original(4);
        for (std::size_t j = 0; j < 4; ++j) original[order[j]] = Spin(s[j]);
        CHECK(p.energy(support::spins(s)) == Approx(m.energy(original)).margin(1e-12));
    }
}

TEST_CASE("Branch and bound") {
    SECTION("matches brute force on random dense instances") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const std::size_t n = 8 + 2 * seed % 15;
            const IsingModel m = gen_random(Complete{n}, CouplingDistribution::uniform(-1, 1), 300 + seed, true);
            const auto r = solve_bb(m, BBParams{});
            CHECK(r.optimal);
            CHECK(r.evictions == 0);
            CHECK_FALSE(r.hit_limit);
            CHECK(r.energy == Approx(support::oracle_minimum(m)).margin(1e-9));
            CHECK(r.energy == Approx(m.energy(r.state)).margin(1e-12));
        }
    }
    SECTION("integer couplings") {
        const IsingModel m = gen_random(Complete{18}, CouplingDistribution::int_uniform(-31, 31), 9);
        const auto r = solve_bb(m, BBParams{});
        CHECK(r.optimal);
        CHECK(r.energy == solve_brute_force(m).energy);
    }
    SECTION("single zero spin") {
        const auto r = solve_bb(IsingModel(1), BBParams{});
        CHECK(r.energy == 0.0);
        CHECK(r.optimal);
        CHECK(r.state.size() == 1);
    }
    SECTION("empty model") {
        const auto r = solve_bb(IsingModel(0, {}, {}, 2.5), BBParams{});
        CHECK(r.energy == 2.5);
        CHECK(r.optimal);
    }
    SECTION("evictions clear the optimal flag") {
        const IsingModel m = gen_random(Complete{16}, CouplingDistribution::uniform(-1, 1), 4);
        BBParams p;
        p.pool_limit = 2;
        const auto r = solve_bb(m, p);
        CHECK(r.evictions > 0);
        CHECK_FALSE(r.optimal);
        CHECK(r.energy == Approx(m.energy(r.state)).margin(1e-12));
    }
    SECTION("node limit returns a completed incumbent") {
        const IsingModel m = gen_random(Complete{30}, CouplingDistribution::uniform(-1, 1), 5);
        BBParams p;
        p.node_limit = 3;
        const auto r = solve_bb(m, p);
        CHECK(r.hit_limit);
        CHECK_FALSE(r.optimal);
        CHECK(r.expanded == 3);
        REQUIRE(r.state.size() == 30);
        CHECK(r.energy == Approx(m.energy(r.state)).margin(1e-12));
    }
    SECTION("heuristic modes never claim optimality") {
        const IsingModel m = gen_random(Complete{12}, CouplingDistribution::uniform(-1, 1), 6);
        const double exact = support::oracle_minimum(m);
        for (auto kind : {BoundKind::base, BoundKind::spd, BoundKind::spd_literal}) {
            BBParams p;
            p.bound_kind = kind;
            const auto r = solve_bb(m, p);
            CHECK_FALSE(r.optimal);
            CHECK(r.energy >= exact - 1e-9);
            CHECK(r.energy == Approx(m.energy(r.state)).margin(1e-12));
        }
    }
    SECTION("deterministic") {
        const IsingModel m = gen_random(Complete{20}, CouplingDistribution::uniform(-1, 1), 7);
        const auto a = solve_bb(m, BBParams{});
        const auto b = solve_bb(m, BBParams{});
        CHECK(a.state == b.state);
        CHECK(a.expanded == b.expanded);
    }
    SECTION("parameter validation") {
        BBParams p;
        p.pool_limit = 0;
        CHECK_THROWS_AS(solve_bb(IsingModel(2), p), ValidationError);
        CHECK_THROWS_AS(parse_bound_kind("tight"), ValidationError);
        CHECK(parse_bound_kind(to_string(BoundKind::spd_literal)) == BoundKind::spd_literal);
    }
}
