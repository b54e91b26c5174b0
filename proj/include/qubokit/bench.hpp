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

// Benchmark harness: the optimality gap, suite orchestration over generated or
// file instances, energy spectra and CSV/JSON reports.
//
// Record CSV columns, in order (schema version 1):
//
//     instance_id,family,n,solver_id,energy,reference_energy,gap,wall_time,seed,optimal,state,error
//
// Reals are written with the shortest representation that round-trips. Empty
// cells stand for absent values (error records carry no energy or gap).
// `state` spells the best state as a string of '+' and '-'.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <tuple>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qubokit/catalog.hpp"
#include "qubokit/config.hpp"
#include "qubokit/errors.hpp"
#include "qubokit/io.hpp"
#include "qubokit/parallel.hpp"
#include "qubokit/rng.hpp"
#include "qubokit/solve.hpp"

namespace qubokit {

inline constexpr int kReportVersion = 1;

/// Raised when a gap is requested against a zero reference energy. Callers
/// that want the absolute difference must ask for it explicitly.
class UndefinedReferenceError : public ValidationError {
 public:
    using ValidationError::ValidationError;
};

inline double optimality_gap(double e, double e_ref) {
    if (e_ref == 0.0) throw UndefinedReferenceError("optimality gap is undefined for a zero reference energy");
    return (e - e_ref) / std::abs(e_ref);
}

inline double absolute_gap(double e, double e_ref) { return e - e_ref; }

struct GapRecord {
    std::string instance_id;
    std::string family;
    std::size_t n = 0;
    std::string solver_id;
    std::optional<double> energy;
    std::optional<double> reference_energy;
    std::optional<double> gap;
    double wall_time = 0.0;
    std::uint64_t seed = 0;
    std::optional<bool> optimal;
    std::string state;
    std::string error;

    bool ok() const { return error.empty(); }

    /// Equality over everything except wall_time.
    bool same_outcome(const GapRecord& o) const {
        return instance_id == o.instance_id && family == o.family && n == o.n && solver_id == o.solver_id &&
               energy == o.energy && reference_energy == o.reference_energy && gap == o.gap && seed == o.seed &&
               optimal == o.optimal && state == o.state && error == o.error;
    }

    friend bool operator==(const GapRecord&, const GapRecord&) = default;
};

inline std::string state_string(std::span<const Spin> s) {
    std::string out(s.size(), '-');
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] > 0) out[i] = '+';
    }
    return out;
}

inline SpinVector parse_state_string(std::string_view text) {
    SpinVector s(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '+') {
            s[i] = 1;
        } else if (text[i] == '-') {
            s[i] = -1;
        } else {
            throw ValidationError("state strings use only '+' and '-'");
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Suite specification

enum class ReferencePolicy { planted, brute_force, best_of_suite, file };

inline const char* to_string(ReferencePolicy p) {
    switch (p) {
        case ReferencePolicy::planted: return "planted";
        case ReferencePolicy::brute_force: return "brute_force";
        case ReferencePolicy::best_of_suite: return "best_of_suite";
        case ReferencePolicy::file: return "file";
    }
    return "?";
}

inline ReferencePolicy parse_reference_policy(const std::string& s) {
    if (s == "planted") return ReferencePolicy::planted;
    if (s == "brute_force") return ReferencePolicy::brute_force;
    if (s == "best_of_suite") return ReferencePolicy::best_of_suite;
    if (s == "file") return ReferencePolicy::file;
    throw ValidationError("unknown reference policy '" + s + "'");
}

/// One block of instances: a generator family swept over sizes with
/// `realizations` consecutive seeds starting at `seed` (or an explicit seed
/// list), or a list of instance files and glob patterns.
struct InstanceSource {
    std::optional<Family> family;
    nlohmann::json params = nlohmann::json::object();
    std::vector<std::size_t> sizes;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> files;
};

struct SolverEntry {
    std::string id;
    SolverParams params;
};

struct SuiteSpec {
    std::vector<InstanceSource> instances;
    std::vector<SolverEntry> solvers;
    std::optional<std::size_t> replicas;       // overrides per-solver replica counts
    std::size_t sample_count = 1024;           // samples retained per record for spectra
    ReferencePolicy reference = ReferencePolicy::best_of_suite;
    std::string reference_file;                // JSON object {instance_id: energy}
    std::size_t brute_force_cap = 24;
    std::size_t workers = 0;                   // 0: QUBOKIT_WORKERS or hardware
    std::uint64_t seed = 0;
    bool include_overhead = false;             // time generation and conversion too
    std::filesystem::path base_dir;            // relative files resolve here

    void validate() const {
        if (instances.empty()) throw ValidationError("suite has no instance sources");
        if (solvers.empty()) throw ValidationError("suite has no solvers");
        if (sample_count < 1) throw ValidationError("sample_count must be at least 1");
        if (replicas && *replicas < 1) throw ValidationError("replicas must be at least 1");
        if (reference == ReferencePolicy::file && reference_file.empty()) {
            throw ValidationError("reference policy 'file' needs reference_file");
        }
        std::set<std::string> ids;
        for (const auto& s : solvers) {
            if (!ids.insert(s.id).second) throw ValidationError("duplicate solver id '" + s.id + "'");
        }
        for (const auto& src : instances) {
            const bool generated = src.family.has_value();
            if (generated == !src.files.empty()) {
                throw ValidationError("an instance source needs either a family or files");
            }
            if (generated && (src.sizes.empty() || src.seeds.empty())) {
                throw ValidationError("a generated instance source needs sizes and seeds");
            }
        }
    }
};

inline SuiteSpec suite_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {}) {
    using nlohmann::json;
    static const std::set<std::string> top_keys = {"version", "instances", "solvers", "replicas", "sample_count",
                                                   "reference", "reference_file", "brute_force_cap", "workers",
                                                   "seed", "include_overhead"};
    static const std::set<std::string> source_keys = {"family", "params", "sizes", "seeds", "seed",
                                                      "realizations", "files"};
    SuiteSpec spec;
    spec.base_dir = base_dir;
    try {
        if (!j.is_object()) throw ValidationError("suite spec must be a JSON object");
        for (const auto& [key, _] : j.items()) {
            if (!top_keys.count(key)) throw ValidationError("unknown suite key '" + key + "'");
        }
        if (j.value("version", 1) != 1) throw ValidationError("unsupported suite version");
        for (const auto& s : j.at("instances")) {
            for (const auto& [key, _] : s.items()) {
                if (!source_keys.count(key)) throw ValidationError("unknown instance-source key '" + key + "'");
            }
            InstanceSource src;
            if (s.contains("family")) {
                src.family = parse_family(s.at("family").get<std::string>());
                if (s.contains("params")) src.params = s.at("params");
                src.sizes = s.at("sizes").get<std::vector<std::size_t>>();
                if (s.contains("seeds")) {
                    src.seeds = s.at("seeds").get<std::vector<std::uint64_t>>();
                } else {
                    const auto first = s.value("seed", std::uint64_t{0});
                    const auto count = s.value("realizations", std::size_t{5});
                    for (std::size_t r = 0; r < count; ++r) src.seeds.push_back(first + r);
                }
            }
            if (s.contains("files")) src.files = s.at("files").get<std::vector<std::string>>();
            spec.instances.push_back(std::move(src));
        }
        for (const auto& s : j.at("solvers")) {
            SolverEntry e;
            json params = s;
            std::string solver;
            if (params.contains("solver")) solver = params.at("solver").get<std::string>();
            e.id = params.value("id", solver);
            params.erase("id");
            e.params = params_from_json(params);
            spec.solvers.push_back(std::move(e));
        }
        if (j.contains("replicas") && !j.at("replicas").is_null()) spec.replicas = j.at("replicas").get<std::size_t>();
        spec.sample_count = j.value("sample_count", spec.sample_count);
        if (j.contains("reference")) spec.reference = parse_reference_policy(j.at("reference").get<std::string>());
        spec.reference_file = j.value("reference_file", std::string{});
        spec.brute_force_cap = j.value("brute_force_cap", spec.brute_force_cap);
        spec.workers = j.value("workers", spec.workers);
        spec.seed = j.value("seed", spec.seed);
        spec.include_overhead = j.value("include_overhead", false);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed suite spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

// ---------------------------------------------------------------------------
// Instance expansion

/// A suite instance before it is built. Generation happens lazily so that
/// `include_overhead` can time it.
struct SuiteInstance {
    std::string id;
    std::string family;
    std::optional<Family> generator;
    nlohmann::json params;
    std::uint64_t seed = 0;
    std::filesystem::path file;
};

namespace detail {

inline bool glob_match(std::string_view pattern, std::string_view name) {
    if (pattern.empty()) return name.empty();
    if (pattern[0] == '*') {
        for (std::size_t k = 0; k <= name.size(); ++k) {
            if (glob_match(pattern.substr(1), name.substr(k))) return true;
        }
        return false;
    }
    if (name.empty()) return false;
    return (pattern[0] == '?' || pattern[0] == name[0]) && glob_match(pattern.substr(1), name.substr(1));
}

/// Expands '*' and '?' in the final path component; results sorted.
inline std::vector<std::filesystem::path> expand_glob(const std::filesystem::path& pattern) {
    const std::string leaf = pattern.filename().string();
    if (leaf.find_first_of("*?") == std::string::npos) {
        if (!std::filesystem::exists(pattern)) throw IoError("instance file '" + pattern.string() + "' not found");
        return {pattern};
    }
    std::filesystem::path dir = pattern.parent_path();
    if (dir.empty()) dir = ".";
    if (!std::filesystem::is_directory(dir)) throw IoError("directory '" + dir.string() + "' not found");
    std::vector<std::filesystem::path> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && glob_match(leaf, entry.path().filename().string())) out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    if (out.empty()) throw IoError("pattern '" + pattern.string() + "' matched no files");
    return out;
}

struct BuiltInstance {
    AnyModel model;
    std::optional<double> planted_energy;
};

inline BuiltInstance build_instance(const SuiteInstance& inst) {
    if (inst.generator) {
        GeneratedInstance g = generate_instance(*inst.generator, inst.params, inst.seed);
        BuiltInstance out{std::move(g.model), std::nullopt};
        if (g.certificate) out.planted_energy = g.certificate->planted_energy;
        return out;
    }
    BuiltInstance out{read_instance(inst.file), std::nullopt};
    std::filesystem::path cert = inst.file;
    cert += ".cert.json";
    if (std::filesystem::exists(cert)) {
        out.planted_energy = certificate_from_json(nlohmann::json::parse(read_file(cert))).planted_energy;
    }
    return out;
}

}  // namespace detail

inline std::vector<SuiteInstance> expand_instances(const SuiteSpec& spec) {
    std::vector<SuiteInstance> out;
    for (const auto& src : spec.instances) {
        if (src.family) {
            for (std::size_t size : src.sizes) {
                for (std::uint64_t seed : src.seeds) {
                    SuiteInstance inst;
                    inst.family = to_string(*src.family);
                    inst.generator = src.family;
                    inst.params = src.params.is_null() ? nlohmann::json::object() : src.params;
                    inst.params[size_key(*src.family, inst.params)] = size;
                    inst.seed = seed;
                    inst.id = inst.family + "-" + std::to_string(size) + "-s" + std::to_string(seed);
                    out.push_back(std::move(inst));
                }
            }
        } else {
            for (const auto& pattern : src.files) {
                std::filesystem::path p(pattern);
                if (p.is_relative() && !spec.base_dir.empty()) p = spec.base_dir / p;
                for (const auto& file : detail::expand_glob(p)) {
                    SuiteInstance inst;
                    inst.family = "file";
                    inst.file = file;
                    inst.id = file.filename().string();
                    out.push_back(std::move(inst));
                }
            }
        }
    }
    std::set<std::string> seen;
    for (const auto& inst : out) {
        if (!seen.insert(inst.id).second) throw ValidationError("duplicate instance id '" + inst.id + "'");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Running

struct SuiteResult {
    std::vector<GapRecord> records;        // instance-major, solver order within
    std::vector<SampleSet> samples;        // per record, lowest sample_count kept
};

/// Seed handed to every solver on instance `index` of a suite.
inline std::uint64_t suite_run_seed(std::uint64_t suite_seed, std::size_t index) {
    return Rng::derive_key(suite_seed, index);
}

inline SuiteResult run_suite_detailed(const SuiteSpec& spec) {
    spec.validate();
    const std::vector<SuiteInstance> instances = expand_instances(spec);
    const std::size_t S = spec.solvers.size();

    std::map<std::string, double> file_refs;
    if (spec.reference == ReferencePolicy::file) {
        std::filesystem::path p(spec.reference_file);
        if (p.is_relative() && !spec.base_dir.empty()) p = spec.base_dir / p;
        const auto j = nlohmann::json::parse(read_file(p));
        try {
            file_refs = j.get<std::map<std::string, double>>();
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError("reference file must map instance ids to energies: " + std::string(e.what()));
        }
    }

    SuiteResult result;
    result.records.resize(instances.size() * S);
    result.samples.resize(instances.size() * S);
    std::vector<std::optional<double>> references(instances.size());

    // Entries write only to their own slots, so scheduling order cannot leak
    // into the output. Instances are rebuilt per entry: generation is pure.
    parallel_for(instances.size() * S, resolve_workers(spec.workers), [&](std::size_t e) {
        const std::size_t ii = e / S, si = e % S;
        const SuiteInstance& inst = instances[ii];
        GapRecord& rec = result.records[e];
        rec.instance_id = inst.id;
        rec.family = inst.family;
        rec.solver_id = spec.solvers[si].id;
        rec.seed = suite_run_seed(spec.seed, ii);
        std::optional<detail::BuiltInstance> built;
        try {
            Stopwatch total;
            built = detail::build_instance(inst);
            rec.n = model_size(built->model);
            SolverParams params = spec.solvers[si].params;
            override_run_options(params, spec.replicas, rec.seed, 1);
            SolveOutcome out = solve_model(built->model, params);
            rec.wall_time = spec.include_overhead ? total.seconds() : out.wall_time;
            rec.energy = out.samples.best().energy;
            rec.state = state_string(out.samples.best().state);
            rec.optimal = out.optimal;
            SampleSet kept = std::move(out.samples);
            if (kept.samples.size() > spec.sample_count) kept.samples.resize(spec.sample_count);
            result.samples[e] = std::move(kept);
        } catch (const std::exception& ex) {
            rec.error = ex.what();
        }
        if (si != 0 || !built) return;
        try {
            if (spec.reference == ReferencePolicy::planted) {
                references[ii] = built->planted_energy;
            } else if (spec.reference == ReferencePolicy::brute_force && rec.n <= spec.brute_force_cap) {
                references[ii] =
                    solve_model(built->model, BruteForceParams{spec.brute_force_cap}).samples.best().energy;
            } else if (spec.reference == ReferencePolicy::file) {
                if (auto it = file_refs.find(inst.id); it != file_refs.end()) references[ii] = it->second;
            }
        } catch (const std::exception&) {
            references[ii].reset();
        }
    });

    for (std::size_t ii = 0; ii < instances.size(); ++ii) {
        std::optional<double> ref = references[ii];
        std::string why;
        if (spec.reference == ReferencePolicy::best_of_suite) {
            for (std::size_t si = 0; si < S; ++si) {
                const auto& r = result.records[ii * S + si];
                if (r.ok() && (!ref || *r.energy < *ref)) ref = r.energy;
            }
            if (!ref) why = "no solver produced a result";
        } else if (!ref) {
            if (spec.reference == ReferencePolicy::planted) {
                why = "instance has no planted certificate";
            } else if (spec.reference == ReferencePolicy::brute_force) {
                why = "instance exceeds the brute-force cap of " + std::to_string(spec.brute_force_cap);
            } else {
                why = "instance missing from the reference file";
            }
        }
        for (std::size_t si = 0; si < S; ++si) {
            GapRecord& r = result.records[ii * S + si];
            if (!r.ok()) continue;
            if (!ref) {
                r.error = why;
                continue;
            }
            r.reference_energy = ref;
            try {
                r.gap = optimality_gap(*r.energy, *ref);
            } catch (const UndefinedReferenceError& ex) {
                r.error = ex.what();
            }
        }
    }
    return result;
}

inline std::vector<GapRecord> run_suite(const SuiteSpec& spec) { return run_suite_detailed(spec).records; }

// ---------------------------------------------------------------------------
// Spectra

struct Histogram {
    std::vector<double> edges;         // bins + 1 ascending edges
    std::vector<std::size_t> counts;   // one per bin

    std::size_t total() const {
        std::size_t t = 0;
        for (auto c : counts) t += c;
        return t;
    }

    /// Bin holding energy e; the top edge belongs to the last bin.
    std::size_t bin_of(double e) const {
        const std::size_t bins = counts.size();
        if (bins == 1) return 0;
        const double lo = edges.front(), hi = edges.back();
        auto b = std::size_t(double(bins) * (e - lo) / (hi - lo));
        return std::min(b, bins - 1);
    }
};

/// Equal-width histogram over [min, max] of the sample energies. Energies
/// that are all equal give a single bin.
inline Histogram spectrum(const SampleSet& samples, std::size_t bins) {
    if (samples.empty()) throw ValidationError("spectrum of an empty sample set");
    if (bins < 1) throw ValidationError("spectrum needs at least one bin");
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& s : samples.samples) {
        lo = std::min(lo, s.energy);
        hi = std::max(hi, s.energy);
    }
    Histogram h;
    if (lo == hi) {
        h.edges = {lo, hi};
        h.counts = {samples.size()};
        return h;
    }
    h.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) h.edges[b] = lo + (hi - lo) * double(b) / double(bins);
    h.edges.back() = hi;
    h.counts.assign(bins, 0);
    for (const auto& s : samples.samples) ++h.counts[h.bin_of(s.energy)];
    return h;
}

// ---------------------------------------------------------------------------
// Reports

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

/// RFC 4180 record splitting; quoted fields may span lines.
inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t k = 0; k < text.size(); ++k) {
        const char c = text[k];
        if (quoted) {
            if (c == '"') {
                if (k + 1 < text.size() && text[k + 1] == '"') {
                    field += '"';
                    ++k;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && k + 1 < text.size() && text[k + 1] == '\n') ++k;
            if (any || !field.empty()) {
                row.push_back(std::move(field));
                rows.push_back(std::move(row));
            }
            row.clear();
            field.clear();
            any = false;
        } else {
            field += c;
            any = true;
        }
    }
    if (quoted) throw ValidationError("unterminated quoted CSV field");
    if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string opt_real(const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; }

inline std::optional<double> read_opt_real(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return parse_real(s, LineError("report", 0));
}

}  // namespace detail

inline const std::vector<std::string>& record_columns() {
    static const std::vector<std::string> cols = {"instance_id", "family",    "n",    "solver_id",
                                                  "energy",      "reference_energy", "gap", "wall_time",
                                                  "seed",        "optimal",   "state", "error"};
    return cols;
}

inline std::string records_to_csv(const std::vector<GapRecord>& records) {
    std::ostringstream out;
    const auto& cols = record_columns();
    for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
    out << "\r\n";
    for (const auto& r : records) {
        using detail::csv_field;
        out << csv_field(r.instance_id) << ',' << csv_field(r.family) << ',' << r.n << ',' << csv_field(r.solver_id)
            << ',' << detail::opt_real(r.energy) << ',' << detail::opt_real(r.reference_energy) << ','
            << detail::opt_real(r.gap) << ',' << format_double(r.wall_time) << ',' << r.seed << ','
            << (r.optimal ? (*r.optimal ? "true" : "false") : "") << ',' << r.state << ',' << csv_field(r.error)
            << "\r\n";
    }
    return out.str();
}

inline std::vector<GapRecord> records_from_csv(const std::string& text) {
    const auto rows = detail::parse_csv(text);
    if (rows.empty() || rows[0] != record_columns()) throw ValidationError("CSV report header does not match");
    std::vector<GapRecord> out;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto& f = rows[k];
        if (f.size() != record_columns().size()) {
            throw ValidationError("CSV report row " + std::to_string(k + 1) + " has the wrong field count");
        }
        GapRecord r;
        r.instance_id = f[0];
        r.family = f[1];
        r.n = std::size_t(std::stoull(f[2]));
        r.solver_id = f[3];
        r.energy = detail::read_opt_real(f[4]);
        r.reference_energy = detail::read_opt_real(f[5]);
        r.gap = detail::read_opt_real(f[6]);
        r.wall_time = *detail::read_opt_real(f[7]);
        r.seed = std::stoull(f[8]);
        if (!f[9].empty()) r.optimal = f[9] == "true";
        r.state = f[10];
        r.error = f[11];
        out.push_back(std::move(r));
    }
    return out;
}

inline nlohmann::json records_to_json(const std::vector<GapRecord>& records) {
    nlohmann::json j;
    j["format"] = "qubokit.report";
    j["version"] = kReportVersion;
    auto rows = nlohmann::json::array();
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    for (const auto& r : records) {
        rows.push_back({{"instance_id", r.instance_id},
                        {"family", r.family},
                        {"n", r.n},
                        {"solver_id", r.solver_id},
                        {"energy", opt(r.energy)},
                        {"reference_energy", opt(r.reference_energy)},
                        {"gap", opt(r.gap)},
                        {"wall_time", r.wall_time},
                        {"seed", r.seed},
                        {"optimal", r.optimal ? nlohmann::json(*r.optimal) : nlohmann::json(nullptr)},
                        {"state", r.state},
                        {"error", r.error}});
    }
    j["records"] = std::move(rows);
    return j;
}

inline std::vector<GapRecord> records_from_json(const nlohmann::json& j) {
    try {
        if (j.at("format") != "qubokit.report" || j.at("version") != kReportVersion) {
            throw ValidationError("not a version 1 qubokit report");
        }
        auto opt = [](const nlohmann::json& v) -> std::optional<double> {
            if (v.is_null()) return std::nullopt;
            return v.get<double>();
        };
        std::vector<GapRecord> out;
        for (const auto& row : j.at("records")) {
            GapRecord r;
            r.instance_id = row.at("instance_id").get<std::string>();
            r.family = row.at("family").get<std::string>();
            r.n = row.at("n").get<std::size_t>();
            r.solver_id = row.at("solver_id").get<std::string>();
            r.energy = opt(row.at("energy"));
            r.reference_energy = opt(row.at("reference_energy"));
            r.gap = opt(row.at("gap"));
            r.wall_time = row.at("wall_time").get<double>();
            r.seed = row.at("seed").get<std::uint64_t>();
            if (!row.at("optimal").is_null()) r.optimal = row.at("optimal").get<bool>();
            r.state = row.at("state").get<std::string>();
            r.error = row.at("error").get<std::string>();
            out.push_back(std::move(r));
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed report: ") + e.what());
    }
}

enum class ReportFormat { csv, json };

inline ReportFormat parse_report_format(const std::string& s) {
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    throw ValidationError("unknown report format '" + s + "' (expected csv or json)");
}

inline void export_records(const std::vector<GapRecord>& records, ReportFormat format,
                           const std::filesystem::path& path) {
    write_file(path, format == ReportFormat::csv ? records_to_csv(records) : records_to_json(records).dump(1) + "\n");
}

inline std::vector<GapRecord> import_records(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    if (path.extension() == ".json") return records_from_json(nlohmann::json::parse(text));
    return records_from_csv(text);
}

/// Mean gap per (solver, family, n) over the successful records.
struct SummaryRow {
    std::string solver_id;
    std::string family;
    std::size_t n = 0;
    std::size_t count = 0;
    std::size_t errors = 0;
    double mean_gap = 0.0;
    double mean_wall_time = 0.0;
};

inline std::vector<SummaryRow> summarize(const std::vector<GapRecord>& records) {
    std::map<std::tuple<std::string, std::string, std::size_t>, SummaryRow> groups;
    std::vector<std::tuple<std::string, std::string, std::size_t>> order;
    for (const auto& r : records) {
        auto key = std::make_tuple(r.solver_id, r.family, r.n);
        auto [it, fresh] = groups.try_emplace(key);
        if (fresh) {
            it->second.solver_id = r.solver_id;
            it->second.family = r.family;
            it->second.n = r.n;
            order.push_back(key);
        }
        SummaryRow& row = it->second;
        if (!r.ok() || !r.gap) {
            ++row.errors;
            continue;
        }
        ++row.count;
        row.mean_gap += *r.gap;
        row.mean_wall_time += r.wall_time;
    }
    std::vector<SummaryRow> out;
    for (const auto& key : order) {
        SummaryRow row = groups.at(key);
        if (row.count > 0) {
            row.mean_gap /= double(row.count);
            row.mean_wall_time /= double(row.count);
        }
        out.push_back(row);
    }
    return out;
}

inline std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    out << "solver_id,family,n,count,errors,mean_gap,mean_wall_time\r\n";
    for (const auto& r : rows) {
        out << detail::csv_field(r.solver_id) << ',' << detail::csv_field(r.family) << ',' << r.n << ',' << r.count
            << ',' << r.errors << ',' << (r.count ? format_double(r.mean_gap) : "") << ','
            << (r.count ? format_double(r.mean_wall_time) : "") << "\r\n";
    }
    return out.str();
}

inline std::string histogram_to_csv(const Histogram& h) {
    std::ostringstream out;
    out << "lower,upper,count\r\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
        out << format_double(h.edges[b]) << ',' << format_double(h.edges[b + 1]) << ',' << h.counts[b] << "\r\n";
    }
    return out.str();
}

}  // namespace qubokit
