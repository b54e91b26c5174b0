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

// JSON form of the solver parameter records. Every key is optional on input
// and takes the documented default; unknown keys are rejected. Values that
// are resolved from the model when omitted serialize as null.
//
//   {"solver": "sa",  "sweeps": 1000, "t_init": null, "t_final": null, "replicas": 32, "seed": 0}
//   {"solver": "pa",  "steps": 1000, "learning_rate": null, "momentum": 0.9, "lambda0": null, ...}
//   {"solver": "sbm", "steps": 10000, "dt": 0.01, "a0": 1.0, "c0": null, "c0_scale": 1.0,
//                     "init_amplitude": 0.1, "q_cap": 2.0, ...}
//   {"solver": "bb",  "bound_kind": "spd_admissible", "pool_limit": 1048576, "epsilon": 1e-6,
//                     "time_limit": 0, "node_limit": 0}
//   {"solver": "brute_force", "cap": 30}

#include <optional>
#include <set>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "qubokit/bnb.hpp"
#include "qubokit/errors.hpp"
#include "qubokit/exact.hpp"
#include "qubokit/pa.hpp"
#include "qubokit/sa.hpp"
#include "qubokit/sbm.hpp"

namespace qubokit {

struct BruteForceParams {
    std::size_t cap = kDefaultBruteForceCap;
};

using SolverParams = std::variant<SaParams, PaParams, SbmParams, BruteForceParams, BBParams>;

inline std::string solver_name(const SolverParams& p) {
    static constexpr const char* names[] = {"sa", "pa", "sbm", "brute_force", "bb"};
    return names[p.index()];
}

namespace detail {

using nlohmann::json;

inline json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

class KeyReader {
 public:
    explicit KeyReader(const json& j) : j_(j) {
        if (!j_.is_object()) throw ValidationError("solver config must be a JSON object");
    }

    template <class T>
    void read(const char* key, T& out) {
        used_.insert(key);
        if (!j_.contains(key)) return;
        if constexpr (std::is_integral_v<T> && std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
            const json& v = j_.at(key);
            if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<long long>() < 0)) {
                throw ValidationError(std::string("config key '") + key + "' must be a non-negative integer");
            }
        }
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception& e) {
            throw ValidationError(std::string("config key '") + key + "': " + e.what());
        }
    }

    void read(const char* key, std::optional<double>& out) {
        used_.insert(key);
        if (!j_.contains(key)) return;
        if (j_.at(key).is_null()) {
            out.reset();
            return;
        }
        if (!j_.at(key).is_number()) throw ValidationError(std::string("config key '") + key + "' must be a number");
        out = j_.at(key).get<double>();
    }

    void finish() const {
        for (const auto& [key, value] : j_.items()) {
            if (key != "solver" && !used_.count(key)) throw ValidationError("unknown config key '" + key + "'");
        }
    }

 private:
    const json& j_;
    std::set<std::string> used_;
};

}  // namespace detail

inline nlohmann::json to_json(const SolverParams& params) {
    using nlohmann::json;
    json j;
    j["solver"] = solver_name(params);
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SaParams>) {
                j["sweeps"] = p.sweeps;
                j["t_init"] = detail::optional_json(p.t_init);
                j["t_final"] = detail::optional_json(p.t_final);
                j["replicas"] = p.replicas;
                j["seed"] = p.seed;
                j["workers"] = p.workers;
            } else if constexpr (std::is_same_v<T, PaParams>) {
                j["steps"] = p.steps;
                j["learning_rate"] = detail::optional_json(p.learning_rate);
                j["momentum"] = p.momentum;
                j["lambda0"] = detail::optional_json(p.lambda0);
                j["replicas"] = p.replicas;
                j["seed"] = p.seed;
                j["workers"] = p.workers;
            } else if constexpr (std::is_same_v<T, SbmParams>) {
                j["steps"] = p.steps;
                j["dt"] = p.dt;
                j["a0"] = p.a0;
                j["c0"] = detail::optional_json(p.c0);
                j["c0_scale"] = p.c0_scale;
                j["init_amplitude"] = p.init_amplitude;
                j["q_cap"] = p.q_cap;
                j["replicas"] = p.replicas;
                j["seed"] = p.seed;
                j["workers"] = p.workers;
            } else if constexpr (std::is_same_v<T, BruteForceParams>) {
                j["cap"] = p.cap;
            } else {
                j["bound_kind"] = to_string(p.bound_kind);
                j["pool_limit"] = p.pool_limit;
                j["epsilon"] = p.epsilon;
                j["time_limit"] = p.time_limit;
                j["node_limit"] = p.node_limit;
            }
        },
        params);
    return j;
}

inline SolverParams default_params(const std::string& solver) {
    if (solver == "sa") return SaParams{};
    if (solver == "pa") return PaParams{};
    if (solver == "sbm") return SbmParams{};
    if (solver == "brute_force" || solver == "bf") return BruteForceParams{};
    if (solver == "bb") return BBParams{};
    throw ValidationError("unknown solver '" + solver + "' (expected sa, pa, sbm, brute_force or bb)");
}

/// Parses a config object; `solver` may be omitted when a fallback is given.
inline SolverParams params_from_json(const nlohmann::json& j, const std::string& fallback_solver = "") {
    std::string solver = fallback_solver;
    if (j.is_object() && j.contains("solver")) solver = j.at("solver").get<std::string>();
    if (solver.empty()) throw ValidationError("solver config lacks a 'solver' key");
    SolverParams params = default_params(solver);
    detail::KeyReader r(j);
    std::visit(
        [&](auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SaParams>) {
                r.read("sweeps", p.sweeps);
                r.read("t_init", p.t_init);
                r.read("t_final", p.t_final);
                r.read("replicas", p.replicas);
                r.read("seed", p.seed);
                r.read("workers", p.workers);
            } else if constexpr (std::is_same_v<T, PaParams>) {
                r.read("steps", p.steps);
                r.read("learning_rate", p.learning_rate);
                r.read("momentum", p.momentum);
                r.read("lambda0", p.lambda0);
                r.read("replicas", p.replicas);
                r.read("seed", p.seed);
                r.read("workers", p.workers);
            } else if constexpr (std::is_same_v<T, SbmParams>) {
                r.read("steps", p.steps);
                r.read("dt", p.dt);
                r.read("a0", p.a0);
                r.read("c0", p.c0);
                r.read("c0_scale", p.c0_scale);
                r.read("init_amplitude", p.init_amplitude);
                r.read("q_cap", p.q_cap);
                r.read("replicas", p.replicas);
                r.read("seed", p.seed);
                r.read("workers", p.workers);
            } else if constexpr (std::is_same_v<T, BruteForceParams>) {
                r.read("cap", p.cap);
            } else {
                std::string kind = to_string(p.bound_kind);
                r.read("bound_kind", kind);
                p.bound_kind = parse_bound_kind(kind);
                r.read("pool_limit", p.pool_limit);
                r.read("epsilon", p.epsilon);
                r.read("time_limit", p.time_limit);
                r.read("node_limit", p.node_limit);
                p.validate();
            }
        },
        params);
    r.finish();
    return params;
}

/// Applies replicas / seed / workers overrides where the solver has them.
inline void override_run_options(SolverParams& params, std::optional<std::size_t> replicas,
                                 std::optional<std::uint64_t> seed, std::optional<std::size_t> workers) {
    std::visit(
        [&](auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (requires { p.replicas; p.seed; p.workers; }) {
                if (replicas) p.replicas = *replicas;
                if (seed) p.seed = *seed;
                if (workers) p.workers = *workers;
            }
            (void)sizeof(T);
        },
        params);
}

}  // namespace qubokit
