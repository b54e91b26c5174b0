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

// Name-driven access to the generator families, shared by the command line
// and the benchmark suite. Parameters come as a JSON object so both callers
// validate them the same way.

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "qubokit/errors.hpp"
#include "qubokit/generators.hpp"
#include "qubokit/io.hpp"

namespace qubokit {

struct GeneratedInstance {
    AnyModel model;
    Family family = Family::random;
    std::optional<Certificate> certificate;
    std::map<std::string, double> hardness;
};

namespace detail {

inline void check_param_keys(const nlohmann::json& params, std::initializer_list<const char*> allowed) {
    if (params.is_null()) return;
    if (!params.is_object()) throw ValidationError("generator parameters must be an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : params.items()) {
        if (!ok.count(key)) throw ValidationError("unknown generator parameter '" + key + "'");
    }
}

template <class T>
T param(const nlohmann::json& params, const char* key, T fallback) {
    if (params.is_null() || !params.contains(key) || params.at(key).is_null()) return fallback;
    try {
        return params.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError(std::string("generator parameter '") + key + "' has the wrong type");
    }
}

inline std::size_t required_size(const nlohmann::json& params, const char* key) {
    if (params.is_null() || !params.contains(key)) {
        throw ValidationError(std::string("generator needs parameter '") + key + "'");
    }
    const auto v = param<long long>(params, key, 0);
    if (v <= 0) throw ValidationError(std::string("parameter '") + key + "' must be positive");
    return std::size_t(v);
}

inline GeneratedInstance from_planted(PlantedInstance p) {
    GeneratedInstance out;
    out.family = p.family;
    out.hardness = p.hardness;
    out.certificate = make_certificate(p);
    out.model = std::visit([](auto& m) -> AnyModel { return std::move(m); }, p.model);
    return out;
}

}  // namespace detail

/// Parameter key carrying the instance size for each family. Suites sweep it.
inline const char* size_key(Family f, const nlohmann::json& params = nullptr) {
    if (f == Family::tile) return "L";
    if (f == Family::random && detail::param<std::string>(params, "topology", "complete") == "chimera") {
        return "rows";
    }
    return "n";
}

/// Generator keys:
///   3r3x, chain3, mw3s: n
///   tile: L, and p2 (subspace (0, p2, 0, 1 - p2)) or p (four probabilities)
///   wishart: n, and m or alpha (m = round(alpha * n), at least 1)
///   random: topology complete (n) or chimera (rows, cols, shore);
///           dist uniform | int_uniform | gaussian with a, b; fields
inline GeneratedInstance generate_instance(Family family, const nlohmann::json& params, std::uint64_t seed) {
    using detail::param;
    switch (family) {
        case Family::r3x3:
            detail::check_param_keys(params, {"n"});
            return detail::from_planted(gen_3r3x(detail::required_size(params, "n"), seed));
        case Family::chain3:
        case Family::mw3s: {
            detail::check_param_keys(params, {"n"});
            const std::size_t n = detail::required_size(params, "n");
            GeneratedInstance out;
            out.family = family;
            out.model = family == Family::chain3 ? gen_chain3(n, seed) : gen_mw3s(n, seed);
            return out;
        }
        case Family::tile: {
            detail::check_param_keys(params, {"L", "p2", "p"});
            const std::size_t L = detail::required_size(params, "L");
            std::array<double, 4> p{};
            if (params.contains("p")) {
                if (params.contains("p2")) throw ValidationError("give either p or p2 for tile, not both");
                const auto v = param<std::vector<double>>(params, "p", {});
                if (v.size() != 4) throw ValidationError("tile parameter p needs four entries");
                std::copy(v.begin(), v.end(), p.begin());
            } else {
                const double p2 = param<double>(params, "p2", 0.5);
                p = {0.0, p2, 0.0, 1.0 - p2};
            }
            return detail::from_planted(gen_tile(L, p, seed));
        }
        case Family::wishart: {
            detail::check_param_keys(params, {"n", "m", "alpha"});
            const std::size_t n = detail::required_size(params, "n");
            std::size_t m = 0;
            if (params.contains("m")) {
                if (params.contains("alpha")) throw ValidationError("give either m or alpha for wishart, not both");
                m = detail::required_size(params, "m");
            } else {
                const double alpha = param<double>(params, "alpha", 0.5);
                if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be positive");
                m = std::max<std::size_t>(1, std::size_t(std::llround(alpha * double(n))));
            }
            return detail::from_planted(gen_wishart(n, m, seed));
        }
        case Family::random: {
            detail::check_param_keys(params, {"topology", "n", "rows", "cols", "shore", "dist", "a", "b", "fields"});
            const auto topo = param<std::string>(params, "topology", "complete");
            Topology topology;
            if (topo == "complete") {
                topology = Complete{detail::required_size(params, "n")};
            } else if (topo == "chimera") {
                const std::size_t rows = detail::required_size(params, "rows");
                topology = Chimera{rows, std::size_t(param<long long>(params, "cols", (long long)rows)),
                                   std::size_t(param<long long>(params, "shore", 4))};
            } else {
                throw ValidationError("unknown topology '" + topo + "' (expected complete or chimera)");
            }
            const auto dist_name = param<std::string>(params, "dist", "uniform");
            CouplingDistribution dist;
            if (dist_name == "uniform") {
                dist = CouplingDistribution::uniform(param<double>(params, "a", -1.0), param<double>(params, "b", 1.0));
            } else if (dist_name == "int_uniform") {
                dist = {CouplingDistribution::Kind::int_uniform, param<double>(params, "a", -1.0),
                        param<double>(params, "b", 1.0)};
            } else if (dist_name == "gaussian") {
                dist = CouplingDistribution::gaussian(param<double>(params, "a", 0.0), param<double>(params, "b", 1.0));
            } else {
                throw ValidationError("unknown distribution '" + dist_name + "'");
            }
            GeneratedInstance out;
            out.family = Family::random;
            out.model = gen_random(topology, dist, seed, param<bool>(params, "fields", true));
            return out;
        }
    }
    throw ValidationError("unknown family");
}

}  // namespace qubokit
