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

// Instance generators.
//
// Every generator is a pure function of its parameters and seed. Randomness is
// drawn from Rng(seed) split into fixed sub-streams so that, for example, the
// gauge of an instance does not depend on how many draws its couplings used:
//
//     stream 1  structure (incidence, tile types, graph)
//     stream 2  coefficients
//     stream 3  planted assignment
//     stream 4  gauge
//
// Suites generating several instances from one seed use seed' = seed + index.

#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qubokit/errors.hpp"
#include "qubokit/model.hpp"
#include "qubokit/rng.hpp"

namespace qubokit {

enum class Family { r3x3, tile, wishart, chain3, mw3s, random };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::r3x3: return "3r3x";
        case Family::tile: return "tile";
        case Family::wishart: return "wishart";
        case Family::chain3: return "chain3";
        case Family::mw3s: return "mw3s";
        case Family::random: return "random";
    }
    return "?";
}

inline Family parse_family(const std::string& s) {
    for (Family f : {Family::r3x3, Family::tile, Family::wishart, Family::chain3, Family::mw3s, Family::random}) {
        if (s == to_string(f)) return f;
    }
    throw ValidationError("unknown instance family '" + s + "'");
}

namespace stream {
inline constexpr std::uint64_t structure = 1;
inline constexpr std::uint64_t coefficients = 2;
inline constexpr std::uint64_t planted = 3;
inline constexpr std::uint64_t gauge = 4;
}  // namespace stream

struct GaugeVector {
    SpinVector signs;
};

inline GaugeVector random_gauge(std::size_t n, Rng& rng) {
    GaugeVector g{SpinVector(n)};
    for (auto& v : g.signs) v = rng.coin() ? Spin{1} : Spin{-1};
    return g;
}

/// A model bundled with a state whose energy is known. For the exact
/// certificate families (3r3x, tile, wishart) the planted energy is a global
/// minimum by construction.
struct PlantedInstance {
    std::variant<IsingModel, HuboModel> model;
    double planted_energy = 0.0;
    SpinVector planted_state;
    Family family = Family::random;
    std::map<std::string, double> hardness;
    std::uint64_t seed = 0;

    std::size_t size() const {
        return std::visit([](const auto& m) { return m.size(); }, model);
    }

    double evaluate(std::span<const Spin> s) const {
        return std::visit([&](const auto& m) { return m.energy(s); }, model);
    }

    /// Throws when the planted state does not reproduce the planted energy.
    void check() const {
        const double e = evaluate(planted_state);
        if (std::abs(e - planted_energy) > 1e-9 * std::max(1.0, std::abs(planted_energy))) {
            throw ValidationError("planted state has energy " + std::to_string(e) + ", certificate says " +
                                  std::to_string(planted_energy));
        }
    }
};

// ---------------------------------------------------------------------------
// HUBO families

/// h_i s_i + J_i s_i s_{i+1} + K_i s_i s_{i+1} s_{i+2}, all i.i.d. N(0, 1).
inline HuboModel gen_chain3(std::size_t n, std::uint64_t seed) {
    if (n < 3) throw ValidationError("chain3 needs n >= 3");
    Rng rng = Rng(seed).split(stream::coefficients);
    std::vector<HuboTerm> terms;
    terms.reserve(3 * n - 3);
    for (std::size_t i = 0; i < n; ++i) terms.push_back({{Index(i)}, rng.normal()});
    for (std::size_t i = 0; i + 1 < n; ++i) terms.push_back({{Index(i), Index(i + 1)}, rng.normal()});
    for (std::size_t i = 0; i + 2 < n; ++i) terms.push_back({{Index(i), Index(i + 1), Index(i + 2)}, rng.normal()});
    return HuboModel(n, Domain::spin, std::move(terms), 3);
}

/// Weighted MAX-3-SAT over the sliding clause window (i, i+1, i+2):
///
///     H(s) = sum_i w_i / 8 * prod_{t=0..2} (1 + (-1)^{c_{i+t}} s_{i+t})
///
/// Each product is expanded exactly into its 8 monomials. `weights` has n - 2
/// entries and `negations` n entries.
inline HuboModel build_mw3s(std::span<const double> weights, std::span<const int> negations) {
    const std::size_t n = negations.size();
    if (n < 3 || weights.size() != n - 2) throw ValidationError("mw3s needs n >= 3 and n - 2 clause weights");
    std::vector<HuboTerm> terms;
    for (std::size_t i = 0; i + 2 < n; ++i) {
        const double w = weights[i] / 8.0;
        for (unsigned mask = 0; mask < 8; ++mask) {
            HuboTerm t{{}, w};
            for (unsigned b = 0; b < 3; ++b) {
                if (mask >> b & 1) {
                    t.vars.push_back(Index(i + b));
                    if (negations[i + b] & 1) t.value = -t.value;
                }
            }
            terms.push_back(std::move(t));
        }
    }
    return HuboModel(n, Domain::spin, std::move(terms), 3);
}

inline HuboModel gen_mw3s(std::size_t n, std::uint64_t seed) {
    if (n < 3) throw ValidationError("mw3s needs n >= 3");
    Rng rng = Rng(seed).split(stream::coefficients);
    std::vector<double> weights(n - 2);
    for (auto& w : weights) w = rng.uniform();
    std::vector<int> neg(n);
    for (auto& c : neg) c = rng.coin() ? 1 : 0;
    return build_mw3s(weights, neg);
}

/// Random 3-regular 3-uniform incidence: n clauses over n variables, each
/// clause with three distinct variables, each variable in exactly three
/// clauses, no clause repeated. Configuration model with rejection.
inline std::vector<std::array<Index, 3>> regular_3x3_incidence(std::size_t n, Rng& rng,
                                                                std::size_t max_attempts = 10000) {
    std::vector<Index> stubs(3 * n);
    for (std::size_t v = 0; v < n; ++v) stubs[3 * v] = stubs[3 * v + 1] = stubs[3 * v + 2] = Index(v);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        rng.shuffle(stubs);
        std::vector<std::array<Index, 3>> clauses(n);
        std::set<std::array<Index, 3>> seen;
        bool ok = true;
        for (std::size_t c = 0; c < n && ok; ++c) {
            std::array<Index, 3> t{stubs[3 * c], stubs[3 * c + 1], stubs[3 * c + 2]};
            std::sort(t.begin(), t.end());
            ok = t[0] != t[1] && t[1] != t[2] && seen.insert(t).second;
            clauses[c] = t;
        }
        if (ok) return clauses;
    }
    throw ValidationError("no 3-regular 3-XORSAT incidence found for n = " + std::to_string(n) + " within " +
                          std::to_string(max_attempts) + " attempts");
}

/// 3-regular 3-XORSAT planting. A random assignment x* fixes the parity b_c of
/// every clause; the model is -sum_c J_c s_a s_b s_d with J_c = (-1)^{b_c}.
/// Every clause is satisfied by s* = (-1)^{x*}, so the planted energy is -n.
inline PlantedInstance gen_3r3x(std::size_t n, std::uint64_t seed) {
    if (n < 6) throw ValidationError("3r3x needs n >= 6");
    Rng root(seed);
    Rng structure = root.split(stream::structure);
    Rng planted = root.split(stream::planted);
    Rng gauge_rng = root.split(stream::gauge);

    const auto clauses = regular_3x3_incidence(n, structure);
    SpinVector s(n);
    for (auto& v : s) v = planted.coin() ? Spin{-1} : Spin{1};  // x_j = 1  <=>  s_j = -1
    std::vector<HuboTerm> terms;
    terms.reserve(n);
    for (const auto& c : clauses) {
        const int parity_sign = s[c[0]] * s[c[1]] * s[c[2]];  // (-1)^{b_c}
        terms.push_back({{c[0], c[1], c[2]}, -double(parity_sign)});
    }
    const HuboModel raw(n, Domain::spin, std::move(terms), 3);
    const GaugeVector g = random_gauge(n, gauge_rng);

    PlantedInstance out;
    out.model = apply_gauge(raw, g.signs);
    out.planted_state = apply_gauge(s, g.signs);
    out.planted_energy = -double(n);
    out.family = Family::r3x3;
    out.hardness = {{"clauses", double(n)}};
    out.seed = seed;
    out.check();
    return out;
}

// ---------------------------------------------------------------------------
// Tile planting

/// Coupling pattern of a tile class around its 4-cycle, in the convention
/// H_tile = -sum_e J_e s_u s_v. Exactly one antiferromagnetic edge; the
/// ferromagnetic state is always a ground state and class C_i has i ground
/// states up to the global spin flip (2i of the 16 local states).
inline std::array<double, 4> tile_pattern(int tile_class) {
    switch (tile_class) {
        case 1: return {-1.0, 2.0, 2.0, 2.0};
        case 2: return {-1.0, 1.0, 2.0, 2.0};
        case 3: return {-1.0, 1.0, 1.0, 2.0};
        case 4: return {-1.0, 1.0, 1.0, 1.0};
        default: throw ValidationError("tile class must be 1..4");
    }
}

struct TileSpectrum {
    double minimum;
    int minimizers;  // among all 16 local states
    bool ferromagnetic_minimal;
};

/// Enumerates the 16 states of a 4-cycle tile with edges (0,1), (1,2), (2,3), (3,0).
inline TileSpectrum tile_spectrum(const std::array<double, 4>& J) {
    std::array<double, 16> e{};
    for (unsigned mask = 0; mask < 16; ++mask) {
        int s[4];
        for (int v = 0; v < 4; ++v) s[v] = (mask >> v & 1) ? -1 : 1;
        e[mask] = 0.0;
        for (int k = 0; k < 4; ++k) e[mask] -= J[k] * s[k] * s[(k + 1) % 4];
    }
    const double lo = *std::min_element(e.begin(), e.end());
    int count = 0;
    for (double v : e) count += std::abs(v - lo) < 1e-12;
    return {lo, count, std::abs(e[0] - lo) < 1e-12};
}

namespace detail {
// Class patterns checked once against their defining ground-state property.
inline const std::array<std::array<double, 4>, 4>& verified_tile_patterns() {
    static const auto patterns = [] {
        std::array<std::array<double, 4>, 4> out{};
        for (int c = 1; c <= 4; ++c) {
            out[c - 1] = tile_pattern(c);
            const auto spec = tile_spectrum(out[c - 1]);
            if (!spec.ferromagnetic_minimal || spec.minimizers != 2 * c) {
                throw NumericalError("tile class C" + std::to_string(c) + " fails its ground-state count");
            }
        }
        return out;
    }();
    return patterns;
}
}  // namespace detail

/// Tile-planted periodic L x L square lattice. Plaquettes with (x + y) even
/// form the tiles, so each edge lies in exactly one tile and each vertex in
/// two. Tile classes are drawn from `p`; each tile's pattern is rotated by a
/// random offset around the cycle.
inline PlantedInstance gen_tile(std::size_t L, std::array<double, 4> p, std::uint64_t seed) {
    if (L < 4 || L % 2 != 0) throw ValidationError("tile planting needs an even lattice side L >= 4");
    double total = 0.0;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("tile probabilities must be non-negative");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ValidationError("tile probabilities must sum to 1");
    const auto& patterns = detail::verified_tile_patterns();

    Rng root(seed);
    Rng structure = root.split(stream::structure);
    Rng gauge_rng = root.split(stream::gauge);
    const std::size_t n = L * L;
    auto vertex = [L](std::size_t x, std::size_t y) { return Index((y % L) * L + (x % L)); };

    std::vector<Coupling> couplings;
    couplings.reserve(2 * n);
    double planted_energy = 0.0;
    std::array<int, 4> counts{};
    for (std::size_t y = 0; y < L; ++y) {
        for (std::size_t x = 0; x < L; ++x) {
            if ((x + y) % 2 != 0) continue;
            const double u = structure.uniform();
            int cls = 3;
            double acc = 0.0;
            for (int c = 0; c < 4; ++c) {
                acc += p[c];
                if (u < acc) {
                    cls = c;
                    break;
                }
            }
            while (p[cls] == 0.0) --cls;  // u landed in rounding slack past the last positive class
            ++counts[cls];
            const auto rot = std::size_t(structure.below(4));
            const std::array<Index, 4> corner{vertex(x, y), vertex(x + 1, y), vertex(x + 1, y + 1), vertex(x, y + 1)};
            for (std::size_t k = 0; k < 4; ++k) {
                const double J = patterns[cls][(k + rot) % 4];
                couplings.push_back({corner[k], corner[(k + 1) % 4], -J});
                planted_energy -= J;
            }
        }
    }
    const IsingModel raw(n, std::vector<double>(n, 0.0), std::move(couplings));
    if (raw.couplings().size() != 2 * n) throw NumericalError("tile edges overlap");
    const GaugeVector g = random_gauge(n, gauge_rng);

    PlantedInstance out;
    out.model = apply_gauge(raw, g.signs);
    out.planted_state = g.signs;  // gauge image of the ferromagnetic state
    out.planted_energy = planted_energy;
    out.family = Family::tile;
    out.hardness = {{"p1", p[0]}, {"p2", p[1]}, {"p3", p[2]}, {"p4", p[3]}, {"L", double(L)}};
    for (int c = 0; c < 4; ++c) out.hardness["count_c" + std::to_string(c + 1)] = counts[c];
    out.seed = seed;
    out.check();
    return out;
}

// ---------------------------------------------------------------------------
// Wishart planting

/// M columns of length N drawn with covariance N/(N-1) (1 - t t^T / N) for
/// the ferromagnetic t, by projecting i.i.d. normals onto the complement of t.
/// Each column then satisfies w^T t = 0 up to rounding.
inline std::vector<std::vector<double>> sample_wishart_columns(std::size_t N, std::size_t M, Rng& rng) {
    const double scale = std::sqrt(double(N) / double(N - 1));
    std::vector<std::vector<double>> W(M, std::vector<double>(N));
    for (auto& w : W) {
        double mean = 0.0;
        for (auto& z : w) {
            z = rng.normal();
            mean += z;
        }
        mean /= double(N);
        for (auto& z : w) z = scale * (z - mean);
    }
    return W;
}

/// Wishart planted ensemble: Jt = -(1/N) W W^T, J = Jt - diag(Jt),
/// H = -1/2 sum_{i != j} J_ij s_i s_j, ground state t with energy Tr(Jt) / 2.
inline PlantedInstance gen_wishart(std::size_t N, std::size_t M, std::uint64_t seed) {
    if (N < 3) throw ValidationError("wishart needs N >= 3");
    if (M < 1) throw ValidationError("wishart needs M >= 1");
    Rng root(seed);
    Rng coeff = root.split(stream::coefficients);
    Rng gauge_rng = root.split(stream::gauge);
    const auto W = sample_wishart_columns(N, M, coeff);

    std::vector<Coupling> couplings;
    couplings.reserve(N * (N - 1) / 2);
    double trace = 0.0;  // Tr(W W^T)
    for (const auto& w : W) {
        for (double v : w) trace += v * v;
    }
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i + 1; j < N; ++j) {
            double dot = 0.0;
            for (const auto& w : W) dot += w[i] * w[j];
            // -1/2 (J_ij + J_ji) with J_ij = -(1/N) (W W^T)_ij
            couplings.push_back({Index(i), Index(j), dot / double(N)});
        }
    }
    const IsingModel raw(N, std::vector<double>(N, 0.0), std::move(couplings));
    const GaugeVector g = random_gauge(N, gauge_rng);

    PlantedInstance out;
    out.model = apply_gauge(raw, g.signs);
    out.planted_state = g.signs;
    out.planted_energy = -0.5 * trace / double(N);
    out.family = Family::wishart;
    out.hardness = {{"alpha", double(M) / double(N)}, {"M", double(M)}, {"N", double(N)}};
    out.seed = seed;
    out.check();
    return out;
}

// ---------------------------------------------------------------------------
// Random instances on fixed topologies

struct Complete {
    std::size_t n;
};

/// rows x cols grid of K_{shore,shore} cells. Variable (r, c, side, k) has
/// index ((r * cols + c) * 2 + side) * shore + k; side 0 chains vertically to
/// (r + 1, c), side 1 horizontally to (r, c + 1).
struct Chimera {
    std::size_t rows;
    std::size_t cols;
    std::size_t shore = 4;
};

struct EdgeList {
    std::size_t n;
    std::vector<std::pair<Index, Index>> edges;
};

using Topology = std::variant<Complete, Chimera, EdgeList>;

inline EdgeList topology_edges(const Topology& topology) {
    return std::visit(
        [](const auto& t) -> EdgeList {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, Complete>) {
                EdgeList out{t.n, {}};
                for (std::size_t i = 0; i < t.n; ++i) {
                    for (std::size_t j = i + 1; j < t.n; ++j) out.edges.emplace_back(Index(i), Index(j));
                }
                return out;
            } else if constexpr (std::is_same_v<T, Chimera>) {
                if (t.rows == 0 || t.cols == 0 || t.shore == 0) throw ValidationError("empty chimera graph");
                const std::size_t L = t.shore;
                auto index = [&](std::size_t r, std::size_t c, std::size_t side, std::size_t k) {
                    return Index(((r * t.cols + c) * 2 + side) * L + k);
                };
                EdgeList out{t.rows * t.cols * 2 * L, {}};
                for (std::size_t r = 0; r < t.rows; ++r) {
                    for (std::size_t c = 0; c < t.cols; ++c) {
                        for (std::size_t a = 0; a < L; ++a) {
                            for (std::size_t b = 0; b < L; ++b) out.edges.emplace_back(index(r, c, 0, a), index(r, c, 1, b));
                        }
                        for (std::size_t k = 0; k < L; ++k) {
                            if (r + 1 < t.rows) out.edges.emplace_back(index(r, c, 0, k), index(r + 1, c, 0, k));
                            if (c + 1 < t.cols) out.edges.emplace_back(index(r, c, 1, k), index(r, c + 1, 1, k));
                        }
                    }
                }
                return out;
            } else {
                for (const auto& [a, b] : t.edges) {
                    if (a >= t.n || b >= t.n || a == b) throw ValidationError("invalid edge in edge list");
                }
                return t;
            }
        },
        topology);
}

struct CouplingDistribution {
    enum class Kind { uniform, int_uniform, gaussian };
    Kind kind = Kind::uniform;
    double a = -1.0;  // lower bound, or mean for gaussian
    double b = 1.0;   // upper bound, or standard deviation for gaussian

    static CouplingDistribution uniform(double lo, double hi) { return {Kind::uniform, lo, hi}; }
    static CouplingDistribution int_uniform(std::int64_t lo, std::int64_t hi) {
        return {Kind::int_uniform, double(lo), double(hi)};
    }
    static CouplingDistribution gaussian(double mean = 0.0, double stddev = 1.0) {
        return {Kind::gaussian, mean, stddev};
    }

    double draw(Rng& rng) const {
        switch (kind) {
            case Kind::uniform: return rng.uniform(a, b);
            case Kind::int_uniform: return double(rng.uniform_int(std::int64_t(a), std::int64_t(b)));
            case Kind::gaussian: return rng.normal(a, b);
        }
        return 0.0;
    }

    void validate() const {
        if (!std::isfinite(a) || !std::isfinite(b)) throw ValidationError("non-finite distribution parameter");
        if (kind == Kind::gaussian ? b < 0.0 : a > b) throw ValidationError("invalid distribution range");
        if (kind == Kind::int_uniform && (a != std::floor(a) || b != std::floor(b))) {
            throw ValidationError("integer distribution needs integer bounds");
        }
    }
};

/// Fields (first, one per variable) and couplings (in edge order) drawn i.i.d.
/// from `dist`. With `with_fields = false` all fields are zero.
inline IsingModel gen_random(const Topology& topology, const CouplingDistribution& dist, std::uint64_t seed,
                             bool with_fields = true) {
    dist.validate();
    const EdgeList graph = topology_edges(topology);
    Rng rng = Rng(seed).split(stream::coefficients);
    std::vector<double> h(graph.n, 0.0);
    if (with_fields) {
        for (auto& v : h) v = dist.draw(rng);
    }
    std::vector<Coupling> couplings;
    couplings.reserve(graph.edges.size());
    for (const auto& [a, b] : graph.edges) couplings.push_back({a, b, dist.draw(rng)});
    return IsingModel(graph.n, std::move(h), std::move(couplings));
}

struct GaugedPair {
    IsingModel model;
    SpinVector state;
    GaugeVector gauge;
};

inline GaugedPair gauge_randomize(const IsingModel& m, std::span<const Spin> s, std::uint64_t seed) {
    detail::check_dimension(m.size(), s.size());
    Rng rng = Rng(seed).split(stream::gauge);
    GaugeVector g = random_gauge(m.size(), rng);
    return {apply_gauge(m, g.signs), apply_gauge(s, g.signs), std::move(g)};
}

// ---------------------------------------------------------------------------
// Certificates

struct Certificate {
    double planted_energy = 0.0;
    SpinVector planted_state;
    std::string family;
    std::map<std::string, double> hardness;
    std::uint64_t seed = 0;
};

inline Certificate make_certificate(const PlantedInstance& p) {
    return {p.planted_energy, p.planted_state, to_string(p.family), p.hardness, p.seed};
}

inline nlohmann::json certificate_to_json(const Certificate& c) {
    nlohmann::json j;
    j["format"] = "qubokit.certificate";
    j["version"] = 1;
    j["family"] = c.family;
    j["planted_energy"] = c.planted_energy;
    auto state = nlohmann::json::array();
    for (Spin v : c.planted_state) state.push_back(int(v));
    j["planted_state"] = std::move(state);
    j["hardness"] = c.hardness;
    j["seed"] = c.seed;
    return j;
}

inline Certificate certificate_from_json(const nlohmann::json& j) {
    try {
        Certificate c;
        c.planted_energy = j.at("planted_energy").get<double>();
        for (const auto& v : j.at("planted_state")) {
            const int s = v.get<int>();
            if (s != 1 && s != -1) throw ValidationError("certificate state entries must be -1 or +1");
            c.planted_state.push_back(Spin(s));
        }
        c.family = j.value("family", std::string("unknown"));
        if (j.contains("hardness")) c.hardness = j.at("hardness").get<std::map<std::string, double>>();
        c.seed = j.value("seed", std::uint64_t{0});
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed certificate: ") + e.what());
    }
}

}  // namespace qubokit
