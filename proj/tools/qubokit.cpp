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


// qubokit command-line tool. Every subcommand is a thin adapter over the
// library; see `qubokit --help`.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 validation error, 4 runtime failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qubokit/qubokit.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qubokit;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kValidation = 3, kRuntime = 4 };

class UsageError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

// Parses "key=value"; the value is read as JSON when it parses, else as a string.
std::pair<std::string, json> parse_assignment(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value, got '" + text + "'");
    const std::string key = text.substr(0, eq), raw = text.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    return {key, value};
}

json read_json_file(const std::string& path) {
    const json j = json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) throw ValidationError("'" + path + "' is not valid JSON");
    return j;
}

FileFormat output_format(const std::string& flag, const fs::path& out) {
    return flag.empty() ? format_from_path(out) : parse_file_format(flag);
}

void emit(const std::string& content, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << content;
    } else {
        write_file(out, content);
    }
}

json reduction_json(const ReductionMap& map) {
    json bindings = json::array();
    for (const auto& b : map.aux_bindings) bindings.push_back({{"aux", b.aux}, {"vars", b.vars}});
    return {{"original_n", map.original_n},
            {"reduced_n", map.reduced_size()},
            {"aux_count", map.aux_bindings.size()},
            {"energy_scale", map.energy_scale},
            {"energy_shift", map.energy_shift},
            {"aux_bindings", bindings}};
}

void print_reduction(const ReductionMap& map) {
    std::cerr << "reduction: " << map.original_n << " variables + " << map.aux_bindings.size()
              << " auxiliaries = " << map.reduced_size() << ", energy scale " << format_double(map.energy_scale)
              << ", shift " << format_double(map.energy_shift) << "\n";
}

std::vector<int> ints(const SpinVector& s) { return {s.begin(), s.end()}; }

// ---------------------------------------------------------------------------
// generate

struct GenerateOptions {
    std::string family;
    std::optional<long long> n, m, L, rows, cols, shore;
    std::optional<double> alpha, p2, a, b;
    std::vector<double> p;
    std::string topology, dist, params, out, format;
    bool fields = false;
    std::uint64_t seed = 0;
    bool print_config = false;
};

json generate_params(const GenerateOptions& o) {
    json j = o.params.empty() ? json::object() : json::parse(o.params, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw UsageError("--params must be a JSON object");
    auto set = [&](const char* key, const auto& v) {
        if (v) j[key] = *v;
    };
    set("n", o.n);
    set("m", o.m);
    set("L", o.L);
    set("rows", o.rows);
    set("cols", o.cols);
    set("shore", o.shore);
    set("alpha", o.alpha);
    set("p2", o.p2);
    set("a", o.a);
    set("b", o.b);
    if (!o.p.empty()) j["p"] = o.p;
    if (!o.topology.empty()) j["topology"] = o.topology;
    if (!o.dist.empty()) j["dist"] = o.dist;
    if (o.fields) j["fields"] = true;
    return j;
}

int cmd_generate(const GenerateOptions& o) {
    Family family;
    json params;
    GeneratedInstance g;
    try {
        family = parse_family(o.family);
        params = generate_params(o);
        if (o.print_config) {
            std::cout << json{{"family", to_string(family)}, {"params", params}, {"seed", o.seed}}.dump(2) << "\n";
            return kOk;
        }
        g = generate_instance(family, params, o.seed);
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    }
    fs::path out = o.out;
    if (out.empty()) {
        const std::string key = size_key(family, params);
        out = std::string(to_string(family)) + "-" + params.value(key, json(0)).dump() + "-s" +
              std::to_string(o.seed) + (o.format == "json" ? ".json" : ".txt");
    }
    write_instance(out, g.model, output_format(o.format, out));
    std::cout << "family=" << to_string(family) << " n=" << model_size(g.model) << " file=" << out.string();
    if (g.certificate) {
        fs::path cert = out;
        cert += ".cert.json";
        write_file(cert, certificate_to_json(*g.certificate).dump(2) + "\n");
        std::cout << " planted_energy=" << format_double(g.certificate->planted_energy) << " certificate="
                  << cert.string();
    }
    for (const auto& [key, value] : g.hardness) std::cout << " " << key << "=" << format_double(value);
    std::cout << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------
// convert / reduce

int cmd_convert(const std::string& input, const std::string& to, const std::string& out, const std::string& format) {
    const AnyModel model = read_instance(input);
    AnyModel result = model;
    if (to == "ising") {
        if (const auto* q = std::get_if<QuboModel>(&model)) {
            result = qubo_to_ising(*q);
        } else if (const auto* h = std::get_if<HuboModel>(&model)) {
            result = hubo_quadratic_to_ising(*h);
        }
    } else if (to == "qubo") {
        if (const auto* m = std::get_if<IsingModel>(&model)) {
            result = ising_to_qubo(*m);
        } else if (!std::holds_alternative<QuboModel>(model)) {
            throw ValidationError("only quadratic models convert to QUBO");
        }
    } else if (to == "spin") {
        if (const auto* h = std::get_if<HuboModel>(&model)) {
            result = hubo_to_spin(*h);
        } else if (const auto* q = std::get_if<QuboModel>(&model)) {
            result = qubo_to_ising(*q);
        }
    } else if (!to.empty()) {
        throw UsageError("--to must be ising, qubo or spin");
    }
    const FileFormat f = format.empty() ? (out.empty() ? format_from_path(input) : format_from_path(out))
                                        : parse_file_format(format);
    emit(serialize_instance(result, f), out);
    return kOk;
}

int cmd_reduce(const std::string& input, const std::string& out, const std::string& format,
               const std::string& report) {
    const AnyModel model = read_instance(input);
    const auto* h = std::get_if<HuboModel>(&model);
    if (!h) throw ValidationError("reduce expects a HUBO instance");
    auto [reduced, map] = reduce_cubic(*h);
    const FileFormat f = format.empty() ? (out.empty() ? FileFormat::text : format_from_path(out))
                                        : parse_file_format(format);
    emit(serialize_instance(reduced, f), out);
    std::string report_path = report;
    if (report_path.empty() && !out.empty() && out != "-") report_path = out + ".reduction.json";
    if (!report_path.empty()) write_file(report_path, reduction_json(map).dump(2) + "\n");
    print_reduction(map);
    return kOk;
}

// ---------------------------------------------------------------------------
// solve

struct RunOptions {
    std::optional<std::size_t> replicas, workers;
    std::optional<std::uint64_t> seed;
};

SolverParams solver_config(const std::string& solver, const std::string& config_file,
                           const std::vector<std::string>& sets, const RunOptions& run) {
    json j = config_file.empty() ? json::object() : read_json_file(config_file);
    if (!j.is_object()) throw ValidationError("solver config must be a JSON object");
    for (const auto& s : sets) {
        auto [key, value] = parse_assignment(s);
        j[key] = value;
    }
    if (!solver.empty()) j["solver"] = solver;
    SolverParams params = params_from_json(j, "sa");
    override_run_options(params, run.replicas, run.seed, run.workers);
    return params;
}

int cmd_solve(const std::string& input, const SolverParams& params, const std::string& out,
              std::optional<std::size_t> max_samples, bool print_config) {
    if (print_config) {
        std::cout << to_json(params).dump(2) << "\n";
        return kOk;
    }
    const AnyModel model = read_instance(input);
    const SolveOutcome result = solve_model(model, params);
    if (result.reduction) print_reduction(*result.reduction);
    const bool binary = std::holds_alternative<QuboModel>(model) ||
                        (std::holds_alternative<HuboModel>(model) &&
                         std::get<HuboModel>(model).domain() == Domain::binary);
    const Sample& best = result.samples.best();

    json report;
    report["format"] = "qubokit.solution";
    report["version"] = 1;
    report["instance"] = input;
    report["n"] = model_size(model);
    report["solved_size"] = result.solved_size;
    report["config"] = to_json(params);
    report["energy"] = best.energy;
    report["state"] = ints(best.state);
    if (binary) {
        const auto x = to_binary(best.state);
        report["bits"] = std::vector<int>(x.begin(), x.end());
    }
    report["optimal"] = result.optimal ? json(*result.optimal) : json(nullptr);
    report["wall_time"] = result.wall_time;
    report["replica_count"] = result.samples.replica_count;
    if (result.reduction) report["reduction"] = reduction_json(*result.reduction);
    json samples = json::array();
    const std::size_t keep = std::min(result.samples.size(), max_samples.value_or(result.samples.size()));
    for (std::size_t k = 0; k < keep; ++k) {
        const auto& s = result.samples.samples[k];
        samples.push_back({{"energy", s.energy}, {"state", state_string(s.state)}, {"replica", s.replica}});
    }
    report["samples"] = std::move(samples);
    if (!out.empty()) write_file(out, report.dump(1) + "\n");

    std::cout << "solver=" << solver_name(params) << " n=" << model_size(model) << " energy="
              << format_double(best.energy) << " samples=" << result.samples.size();
    if (result.optimal) std::cout << " optimal=" << (*result.optimal ? "true" : "false");
    std::cout << " wall_time=" << format_double(result.wall_time) << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
    std::string suite, out, format, summary, spectra;
    std::size_t bins = 32;
    std::optional<std::size_t> workers, replicas;
    std::optional<std::uint64_t> seed;
    bool include_overhead = false, print_config = false;
};

int cmd_bench(const BenchOptions& o) {
    SuiteSpec spec = suite_from_json(read_json_file(o.suite), fs::path(o.suite).parent_path());
    if (o.workers) spec.workers = *o.workers;
    if (o.replicas) spec.replicas = *o.replicas;
    if (o.seed) spec.seed = *o.seed;
    if (o.include_overhead) spec.include_overhead = true;
    if (o.print_config) {
        json instances = json::array();
        for (const auto& inst : expand_instances(spec)) instances.push_back(inst.id);
        json solvers = json::array();
        for (const auto& s : spec.solvers) {
            json p = to_json(s.params);
            p["id"] = s.id;
            solvers.push_back(p);
        }
        std::cout << json{{"instances", instances},
                          {"solvers", solvers},
                          {"replicas", spec.replicas ? json(*spec.replicas) : json(nullptr)},
                          {"sample_count", spec.sample_count},
                          {"reference", to_string(spec.reference)},
                          {"seed", spec.seed},
                          {"workers", resolve_workers(spec.workers)}}
                         .dump(2)
                  << "\n";
        return kOk;
    }
    const SuiteResult result = run_suite_detailed(spec);
    const ReportFormat format =
        o.format.empty() ? (fs::path(o.out).extension() == ".json" ? ReportFormat::json : ReportFormat::csv)
                         : parse_report_format(o.format);
    if (o.out.empty() || o.out == "-") {
        std::cout << (format == ReportFormat::csv ? records_to_csv(result.records)
                                                  : records_to_json(result.records).dump(1) + "\n");
    } else {
        export_records(result.records, format, o.out);
    }
    const std::string summary = summary_to_csv(summarize(result.records));
    if (!o.summary.empty()) write_file(o.summary, summary);
    if (!o.spectra.empty()) {
        for (std::size_t k = 0; k < result.records.size(); ++k) {
            if (result.samples[k].empty()) continue;
            const auto& r = result.records[k];
            write_file(fs::path(o.spectra) / (r.instance_id + "." + r.solver_id + ".csv"),
                       histogram_to_csv(spectrum(result.samples[k], o.bins)));
        }
    }
    std::size_t errors = 0;
    for (const auto& r : result.records) errors += !r.ok();
    std::cerr << summary << "records=" << result.records.size() << " errors=" << errors << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::string& input, const std::string& cert_path, std::size_t cap) {
    fs::path cert = cert_path;
    if (cert.empty()) {
        cert = input;
        cert += ".cert.json";
    }
    if (!fs::exists(cert)) throw UsageError("certificate '" + cert.string() + "' not found (use --cert)");
    const AnyModel model = read_instance(input);
    const Certificate c = certificate_from_json(read_json_file(cert.string()));
    const std::size_t n = model_size(model);
    if (c.planted_state.size() != n) {
        std::cout << "FAIL planted state has " << c.planted_state.size() << " entries, model has " << n << "\n";
        return kVerifyFailed;
    }
    const double evaluated = std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, QuboModel>) {
                return m.energy(to_binary(c.planted_state));
            } else if constexpr (std::is_same_v<T, HuboModel>) {
                return hubo_to_spin(m).energy(c.planted_state);
            } else {
                return m.energy(c.planted_state);
            }
        },
        model);
    const double tol = 1e-9 * std::max(1.0, std::abs(c.planted_energy));
    bool ok = std::abs(evaluated - c.planted_energy) <= tol;
    std::cout << (ok ? "PASS" : "FAIL") << " planted state energy " << format_double(evaluated) << " vs certificate "
              << format_double(c.planted_energy) << "\n";
    if (n <= cap) {
        const double minimum = solve_model(model, BruteForceParams{cap}).samples.best().energy;
        const bool global = minimum >= c.planted_energy - tol;
        std::cout << (global ? "PASS" : "FAIL") << " brute-force minimum " << format_double(minimum)
                  << (global ? " equals" : " is below") << " the planted energy\n";
        ok = ok && global;
    } else {
        std::cout << "SKIP brute-force check (n = " << n << " exceeds cap " << cap << ")\n";
    }
    return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qubokit: QUBO / Ising / HUBO toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "qubokit 0.1.0");

    GenerateOptions gen;
    auto* generate = app.add_subcommand("generate", "Generate an instance (and certificate when planted)");
    generate->add_option("family", gen.family, "3r3x | tile | wishart | chain3 | mw3s | random")->required();
    generate->add_option("--n", gen.n, "Number of variables");
    generate->add_option("--m", gen.m, "Wishart planted-vector count");
    generate->add_option("--alpha", gen.alpha, "Wishart ratio M/N");
    generate->add_option("--L", gen.L, "Tile lattice side");
    generate->add_option("--p2", gen.p2, "Tile class-2 probability (rest is class 4)");
    generate->add_option("--p", gen.p, "Tile class probabilities p1,p2,p3,p4")->delimiter(',')->expected(4);
    generate->add_option("--topology", gen.topology, "random: complete | chimera");
    generate->add_option("--rows", gen.rows, "Chimera rows");
    generate->add_option("--cols", gen.cols, "Chimera columns");
    generate->add_option("--shore", gen.shore, "Chimera shore size");
    generate->add_option("--dist", gen.dist, "random: uniform | int_uniform | gaussian");
    generate->add_option("--a", gen.a, "Distribution lower bound or mean");
    generate->add_option("--b", gen.b, "Distribution upper bound or deviation");
    generate->add_flag("--fields", gen.fields, "random: draw local fields too");
    generate->add_option("--params", gen.params, "Generator parameters as a JSON object");
    generate->add_option("--seed", gen.seed, "Seed");
    generate->add_option("--out", gen.out, "Instance path (certificate goes to <out>.cert.json)");
    generate->add_option("--format", gen.format, "text | json (default from extension)");
    generate->add_flag("--print-config", gen.print_config, "Print the resolved parameters and exit");

    std::string conv_in, conv_to, conv_out, conv_format;
    auto* convert = app.add_subcommand("convert", "Convert between QUBO, Ising and file formats");
    convert->add_option("input", conv_in, "Instance file")->required()->check(CLI::ExistingFile);
    convert->add_option("--to", conv_to, "ising | qubo | spin");
    convert->add_option("--out", conv_out, "Output path (default stdout)");
    convert->add_option("--format", conv_format, "text | json");

    std::string red_in, red_out, red_format, red_report;
    auto* reduce = app.add_subcommand("reduce", "Reduce a cubic HUBO to an Ising model");
    reduce->add_option("input", red_in, "HUBO instance file")->required()->check(CLI::ExistingFile);
    reduce->add_option("--out", red_out, "Output path (default stdout)");
    reduce->add_option("--format", red_format, "text | json");
    reduce->add_option("--report", red_report, "Reduction report path (default <out>.reduction.json)");

    std::string solve_in, solve_solver, solve_config, solve_out;
    std::vector<std::string> solve_sets;
    std::optional<std::size_t> solve_samples;
    RunOptions solve_run;
    bool solve_print = false;
    auto* solve = app.add_subcommand("solve", "Solve an instance");
    solve->add_option("input", solve_in, "Instance file");
    solve->add_option("--solver", solve_solver, "sa | pa | sbm | bb | brute_force (default sa)");
    solve->add_option("--config", solve_config, "Solver config JSON file")->check(CLI::ExistingFile);
    solve->add_option("--set", solve_sets, "Solver parameter key=value (repeatable)");
    solve->add_option("--replicas", solve_run.replicas, "Replica count");
    solve->add_option("--seed", solve_run.seed, "Seed");
    solve->add_option("--workers", solve_run.workers, "Worker threads (default QUBOKIT_WORKERS or all cores)");
    solve->add_option("--out", solve_out, "Solution report JSON path");
    solve->add_option("--samples", solve_samples, "Samples kept in the report (default all)");
    solve->add_flag("--print-config", solve_print, "Print the resolved solver config and exit");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite");
    bench_cmd->add_option("suite", bench.suite, "Suite spec JSON")->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--out", bench.out, "Report path (default stdout)");
    bench_cmd->add_option("--format", bench.format, "csv | json (default from extension)");
    bench_cmd->add_option("--summary", bench.summary, "Mean-gap summary CSV path");
    bench_cmd->add_option("--spectra", bench.spectra, "Directory for per-record energy histograms");
    bench_cmd->add_option("--bins", bench.bins, "Histogram bins")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--workers", bench.workers, "Concurrent suite entries");
    bench_cmd->add_option("--replicas", bench.replicas, "Override replicas for every solver");
    bench_cmd->add_option("--seed", bench.seed, "Suite seed");
    bench_cmd->add_flag("--include-overhead", bench.include_overhead, "Time generation and conversion too");
    bench_cmd->add_flag("--print-config", bench.print_config, "Print the resolved suite and exit");

    std::string ver_in, ver_cert;
    std::size_t ver_cap = 24;
    auto* verify = app.add_subcommand("verify", "Check a planted certificate against its instance");
    verify->add_option("input", ver_in, "Instance file")->required()->check(CLI::ExistingFile);
    verify->add_option("--cert", ver_cert, "Certificate path (default <input>.cert.json)");
    verify->add_option("--cap", ver_cap, "Largest n checked by brute force");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*generate) return cmd_generate(gen);
        if (*convert) return cmd_convert(conv_in, conv_to, conv_out, conv_format);
        if (*reduce) return cmd_reduce(red_in, red_out, red_format, red_report);
        if (*solve) {
            const SolverParams params = solver_config(solve_solver, solve_config, solve_sets, solve_run);
            if (!solve_print && solve_in.empty()) throw UsageError("solve needs an instance file");
            return cmd_solve(solve_in, params, solve_out, solve_samples, solve_print);
        }
        if (*bench_cmd) return cmd_bench(bench);
        if (*verify) return cmd_verify(ver_in, ver_cert, ver_cap);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntime;
    }
    return kUsage;
}
