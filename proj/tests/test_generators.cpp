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


#include <map>
#include <set>

#include <catch_amalgamated.hpp>

#include "oracle.hpp"
#include "support.hpp"
#include "qubokit/catalog.hpp"
#include "qubokit/exact.hpp"
#include "qubokit/generators.hpp"
#include "qubokit/reduction.hpp"

using namespace qubokit;
using Catch::Approx;

namespace {

// Global minimum of a planted instance by plain enumeration.
double enumerate_minimum(const PlantedInstance& p, int* count = nullptr) {
    const std::size_t n = p.size();
    double best = INFINITY;
    int at_best = 0;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
        const double e = p.evaluate(support::spins(oracle::spins_of(k, n)));
        if (e < best - 1e-9) {
            best = e;
            at_best = 1;
        } else if (std::abs(e - best) <= 1e-9) {
            ++at_best;
        }
    }
    if (count) *count = at_best;
    return best;
}

}  // namespace

TEST_CASE("chain3 layout and determinism") {
    const HuboModel h = gen_chain3(3, 1);
    CHECK(h.terms().size() == 6);
    std::map<std::size_t, int> by_order;
    for (const auto& t : h.terms()) ++by_order[t.vars.size()];
    CHECK(by_order[1] == 3);
    CHECK(by_order[2] == 2);
    CHECK(by_order[3] == 1);
    CHECK(gen_chain3(12, 99) == gen_chain3(12, 99));
    CHECK_FALSE(gen_chain3(12, 99) == gen_chain3(12, 100));
    CHECK_THROWS_AS(gen_chain3(2, 0), ValidationError);

    const HuboModel ten = gen_chain3(10, 4);
    const auto poly = support::to_poly(ten);
    const double direct = oracle::minimum_spin(poly, 10).first;
    const auto [reduced, map] = reduce_cubic(ten);
    const auto exact = solve_brute_force(reduced);
    CHECK(ten.energy(lift_solution(map, exact.state)) == Approx(direct).margin(1e-9));
}

TEST_CASE("mw3s closed form and expansion") {
    const std::vector<double> w{1.0};
    const std::vector<int> c{0, 0, 0};
    const HuboModel h = build_mw3s(w, c);
    CHECK(h.energy(SpinVector{-1, -1, -1}) == Approx(0.0).margin(1e-15));
    CHECK(h.energy(SpinVector{1, 1, 1}) == Approx(1.0));
    CHECK(h.terms().size() <= 8);
    CHECK_THROWS_AS(gen_mw3s(2, 0), ValidationError);

    // Expanded polynomial against the product form evaluated directly.
    Rng rng(5);
    const std::size_t n = 9;
    std::vector<double> weights(n - 2);
    for (auto& v : weights) v = rng.uniform();
    std::vector<int> neg(n);
    for (auto& v : neg) v = int(rng.below(2));
    const HuboModel big = build_mw3s(weights, neg);
    CHECK(big.terms().size() <= 8 * (n - 2));
    double poly_min = INFINITY, product_min = INFINITY;
    for (std::uint64_t k = 0; k < 512; ++k) {
        const auto s = oracle::spins_of(k, n);
        double product = 0.0;
        for (std::size_t i = 0; i + 2 < n; ++i) {
            double clause = weights[i] / 8.0;
            for (std::size_t t = 0; t < 3; ++t) clause *= 1.0 + (neg[i + t] ? -1.0 : 1.0) * s[i + t];
            product += clause;
        }
        const double e = big.energy(support::spins(s));
        CHECK(e == Approx(product).margin(1e-12));
        poly_min = std::min(poly_min, e);
        product_min = std::min(product_min, product);
    }
    CHECK(poly_min == Approx(product_min).margin(1e-12));
}

TEST_CASE("3R3X instances are regular and certified") {
    for (std::size_t n : {6, 8, 12, 30}) {
        const PlantedInstance p = gen_3r3x(n, 17 + n);
        const auto& h = std::get<HuboModel>(p.model);
        CHECK(h.terms().size() == n);
        std::vector<int> degree(n, 0);
        std::set<std::vector<Index>> clauses;
        for (const auto& t : h.terms()) {
            CHECK(t.vars.size() == 3);
            CHECK(std::abs(t.value) == 1.0);
            clauses.insert(t.vars);
            for (Index v : t.vars) ++degree[v];
        }
        CHECK(clauses.size() == n);
        for (int d : degree) CHECK(d == 3);
        CHECK(p.evaluate(p.planted_state) == -double(n));
        CHECK(p.planted_energy == -double(n));
    }
    CHECK(enumerate_minimum(gen_3r3x(6, 3)) == -6.0);
    CHECK_THROWS_AS(gen_3r3x(5, 0), ValidationError);
    CHECK(std::get<HuboModel>(gen_3r3x(20, 1).model) == std::get<HuboModel>(gen_3r3x(20, 1).model));
}

TEST_CASE("Tile classes have the stated ground-state counts") {
    for (int c = 1; c <= 4; ++c) {
        const auto spec = tile_spectrum(tile_pattern(c));
        CHECK(spec.ferromagnetic_minimal);
        // Counted over the 16 local states; every state pairs with its flip.
        CHECK(spec.minimizers == 2 * c);
        // Independent recount.
        const auto J = tile_pattern(c);
        std::vector<double> e;
        for (int k = 0; k < 16; ++k) {
            const int s[4] = {k & 1 ? 1 : -1, k & 2 ? 1 : -1, k & 4 ? 1 : -1, k & 8 ? 1 : -1};
            e.push_back(-(J[0] * s[0] * s[1] + J[1] * s[1] * s[2] + J[2] * s[2] * s[3] + J[3] * s[3] * s[0]));
        }
        const double lo = *std::min_element(e.begin(), e.end());
        CHECK(std::count(e.begin(), e.end(), lo) == 2 * c);
        CHECK(lo == spec.minimum);
    }
    CHECK_THROWS_AS(tile_pattern(0), ValidationError);
}

TEST_CASE("Tile planting structure") {
    const std::size_t L = 6;
    const PlantedInstance p = gen_tile(L, {0.1, 0.4, 0.2, 0.3}, 8);
    const auto& m = std::get<IsingModel>(p.model);
    CHECK(m.size() == L * L);
    CHECK(m.couplings().size() == 2 * L * L);  // each lattice edge exactly once
    for (std::size_t i = 0; i < m.size(); ++i) CHECK(m.degree(i) == 4);
    // Every coupling is a lattice edge.
    for (const auto& c : m.couplings()) {
        const std::size_t xi = c.i % L, yi = c.i / L, xj = c.j % L, yj = c.j / L;
        const bool horizontal = yi == yj && ((xi + 1) % L == xj || (xj + 1) % L == xi);
        const bool vertical = xi == xj && ((yi + 1) % L == yj || (yj + 1) % L == yi);
        CHECK((horizontal || vertical));
    }
    // Planted energy is the sum of the per-class tile minima.
    double expected = 0.0;
    for (int c = 1; c <= 4; ++c) {
        expected += p.hardness.at("count_c" + std::to_string(c)) * tile_spectrum(tile_pattern(c)).minimum;
    }
    CHECK(p.planted_energy == Approx(expected));
    CHECK(p.evaluate(p.planted_state) == Approx(p.planted_energy));
    CHECK(p.hardness.at("p2") == 0.4);

    CHECK_THROWS_AS(gen_tile(5, {1, 0, 0, 0}, 0), ValidationError);
    CHECK_THROWS_AS(gen_tile(2, {1, 0, 0, 0}, 0), ValidationError);
    CHECK_THROWS_AS(gen_tile(4, {0.5, 0.4, 0, 0}, 0), ValidationError);
    CHECK_THROWS_AS(gen_tile(4, {1.5, -0.5, 0, 0}, 0), ValidationError);
}

TEST_CASE("All-C1 tiling has a unique ground state up to the global flip") {
    const PlantedInstance p = gen_tile(4, {1, 0, 0, 0}, 12);
    int count = 0;
    CHECK(enumerate_minimum(p, &count) == Approx(p.planted_energy));
    CHECK(count == 2);
    SpinVector flipped = p.planted_state;
    for (auto& v : flipped) v = Spin(-v);
    CHECK(p.evaluate(flipped) == Approx(p.planted_energy));
}

TEST_CASE("Tile certificates for mixed classes") {
    for (double p2 : {0.2, 0.8}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const PlantedInstance p = gen_tile(4, {0, p2, 0, 1 - p2}, seed);
            CHECK(enumerate_minimum(p) == Approx(p.planted_energy));
        }
    }
}

TEST_CASE("Wishart columns are orthogonal to the planted state") {
    Rng rng(3);
    const auto W = sample_wishart_columns(64, 20, rng);
    REQUIRE(W.size() == 20);
    for (const auto& w : W) {
        double dot = 0.0, norm = 0.0;
        for (double v : w) {
            dot += v;
            norm += v * v;
        }
        CHECK(std::abs(dot) <= 1e-10 * std::sqrt(norm));
    }
}

TEST_CASE("Wishart planted energy and certificate") {
    const std::size_t N = 10, M = 4;
    const PlantedInstance p = gen_wishart(N, M, 21);
    // Rebuild J~ from the same stream and check H(t) = Tr(J~) / 2.
    Rng coeff = Rng(21).split(stream::coefficients);
    const auto W = sample_wishart_columns(N, M, coeff);
    double trace = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        double d = 0.0;
        for (const auto& w : W) d += w[i] * w[i];
        trace += -d / double(N);
    }
    CHECK(p.planted_energy == Approx(0.5 * trace).epsilon(1e-12));
    CHECK(p.evaluate(p.planted_state) == Approx(p.planted_energy).epsilon(1e-9));
    CHECK(p.hardness.at("alpha") == Approx(0.4));
    CHECK(enumerate_minimum(p) == Approx(p.planted_energy).epsilon(1e-9));

    const PlantedInstance sq = gen_wishart(14, 14, 2);
    CHECK(enumerate_minimum(sq) == Approx(sq.planted_energy).epsilon(1e-9));
    CHECK_THROWS_AS(gen_wishart(2, 1, 0), ValidationError);
    CHECK_THROWS_AS(gen_wishart(5, 0, 0), ValidationError);
}

TEST_CASE("Random topologies") {
    const IsingModel k5 = gen_random(Complete{5}, CouplingDistribution::uniform(-1, 1), 3);
    CHECK(k5.size() == 5);
    CHECK(k5.couplings().size() == 10);
    for (double v : k5.h()) CHECK((v >= -1.0 && v < 1.0));

    const EdgeList chimera = topology_edges(Chimera{2, 8});
    CHECK(chimera.n == 128);
    CHECK(chimera.edges.size() == 16 * 16 + 1 * 8 * 4 + 2 * 7 * 4);
    std::set<std::pair<Index, Index>> unique(chimera.edges.begin(), chimera.edges.end());
    CHECK(unique.size() == chimera.edges.size());

    const IsingModel ints = gen_random(Chimera{2, 2}, CouplingDistribution::int_uniform(-31, 31), 4);
    for (const auto& c : ints.couplings()) {
        CHECK(c.value == std::floor(c.value));
        CHECK((c.value >= -31 && c.value <= 31));
    }
    const IsingModel no_fields = gen_random(Complete{4}, CouplingDistribution::gaussian(), 1, false);
    for (double v : no_fields.h()) CHECK(v == 0.0);

    CHECK_THROWS_AS(gen_random(EdgeList{3, {{0, 3}}}, CouplingDistribution::uniform(-1, 1), 0), ValidationError);
    CHECK_THROWS_AS(gen_random(Complete{3}, CouplingDistribution::uniform(1, -1), 0), ValidationError);
    CHECK(gen_random(Complete{20}, CouplingDistribution::gaussian(), 9) ==
          gen_random(Complete{20}, CouplingDistribution::gaussian(), 9));
}

TEST_CASE("Gauge randomization") {
    const IsingModel m = gen_random(Complete{12}, CouplingDistribution::uniform(-1, 1), 6);
    Rng rng(1);
    for (int t = 0; t < 10; ++t) {
        SpinVector s(12);
        for (auto& v : s) v = rng.coin() ? 1 : -1;
        const auto pair = gauge_randomize(m, s, std::uint64_t(t));
        CHECK(std::abs(pair.model.energy(pair.state) - m.energy(s)) <= 1e-12);
        for (Spin g : pair.gauge.signs) CHECK((g == 1 || g == -1));
        CHECK(apply_gauge(pair.model, pair.gauge.signs) == m);
        CHECK(apply_gauge(pair.state, pair.gauge.signs) == s);
    }
}

TEST_CASE("Certificates round-trip through JSON") {
    const PlantedInstance p = gen_wishart(8, 3, 5);
    const Certificate c = make_certificate(p);
    const Certificate back = certificate_from_json(certificate_to_json(c));
    CHECK(back.planted_energy == c.planted_energy);
    CHECK(back.planted_state == c.planted_state);
    CHECK(back.family == "wishart");
    CHECK(back.hardness == c.hardness);
    CHECK(back.seed == 5);
    auto bad = certificate_to_json(c);
    bad["planted_state"][0] = 0;
    CHECK_THROWS_AS(certificate_from_json(bad), ValidationError);
}

TEST_CASE("Named generation") {
    auto g = generate_instance(Family::wishart, {{"n", 12}, {"alpha", 0.5}}, 3);
    REQUIRE(g.certificate);
    CHECK(model_size(g.model) == 12);
    CHECK(g.hardness.at("M") == 6);
    CHECK(generate_instance(Family::tile, {{"L", 4}, {"p2", 0.8}}, 1).hardness.at("p2") == 0.8);
    CHECK(model_size(generate_instance(Family::random, {{"topology", "chimera"}, {"rows", 2}, {"cols", 8}}, 1).model) ==
          128);
    CHECK_THROWS_AS(generate_instance(Family::r3x3, {{"n", 8}, {"bogus", 1}}, 1), ValidationError);
    CHECK_THROWS_AS(generate_instance(Family::r3x3, nlohmann::json::object(), 1), ValidationError);
    CHECK_FALSE(generate_instance(Family::chain3, {{"n", 5}}, 1).certificate);
    CHECK(parse_family("3r3x") == Family::r3x3);
    CHECK_THROWS_AS(parse_family("pegasus"), ValidationError);
}
