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

#include <filesystem>

#include "support.hpp"
#include "qubokit/bench.hpp"
#include "qubokit/generators.hpp"
#include "qubokit/io.hpp"

using namespace qubokit;
using Catch::Approx;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "qubokit_test_bench";
    std::filesystem::create_directories(dir);
    return dir / name;
}

SuiteSpec random_suite(std::vector<std::size_t> sizes, ReferencePolicy reference) {
    SuiteSpec spec;
    InstanceSource src;
    src.family = Family::random;
    src.sizes = std::move(sizes);
    src.seeds = {1, 2, 3};
    spec.instances.push_back(src);
    SaParams sa;
    sa.sweeps = 200;
    sa.replicas = 8;
    PaParams pa;
    pa.steps = 200;
    pa.replicas = 8;
    spec.solvers = {{"sa", sa}, {"pa", pa}};
    spec.reference = reference;
    spec.seed = 17;
    return spec;
}

GapRecord sample_record() {
    GapRecord r;
    r.instance_id = "tile-4-s1";
    r.family = "tile";
    r.n = 16;
    r.solver_id = "sa, \"fast\"";
    r.energy = -31.5;
    r.reference_energy = -32.0;
    r.gap = 0.015625;
    r.wall_time = 0.125;
    r.seed = 18446744073709551615ull;
    r.optimal = false;
    r.state = "+-+-";
    return r;
}

}  // namespace

TEST_CASE("Optimality gap") {
    CHECK(optimality_gap(-95, -100) == Approx(0.05).epsilon(1e-12));
    CHECK(optimality_gap(-100, -100) == 0.0);
    CHECK(optimality_gap(-105, -100) == Approx(-0.05).epsilon(1e-12));
    CHECK(optimality_gap(12, 10) == Approx(0.2).epsilon(1e-12));
    CHECK_THROWS_AS(optimality_gap(-1, 0), UndefinedReferenceError);
    CHECK(absolute_gap(-1, 0) == -1.0);
}

TEST_CASE("State strings") {
    const SpinVector s{1, -1, -1, 1};
    CHECK(state_string(s) == "+--+");
    CHECK(parse_state_string("+--+") == s);
    CHECK_THROWS_AS(parse_state_string("+0"), ValidationError);
}

TEST_CASE("Suite runs") {
    SECTION("planted tile instances solved exactly have zero gap") {
        SuiteSpec spec;
        InstanceSource src;
        src.family = Family::tile;
        src.params = {{"p2", 0.2}};
        src.sizes = {4};
        src.seeds = {1, 2, 3};
        spec.instances.push_back(src);
        spec.solvers = {{"bb", BBParams{}}, {"bf", BruteForceParams{}}};
        spec.reference = ReferencePolicy::planted;
        const auto records = run_suite(spec);
        REQUIRE(records.size() == 6);
        for (const auto& r : records) {
            INFO(r.error);
            REQUIRE(r.ok());
            CHECK(*r.gap == Approx(0.0).margin(1e-12));
            CHECK(r.optimal == std::optional<bool>(true));
            CHECK(r.n == 16);
            CHECK(r.state.size() == 16);
        }
        CHECK(records[0].instance_id == "tile-4-s1");
        CHECK(records[0].solver_id == "bb");
        CHECK(records[1].solver_id == "bf");
    }
    SECTION("brute-force reference gives nonnegative heuristic gaps") {
        const auto records = run_suite(random_suite({12, 16}, ReferencePolicy::brute_force));
        REQUIRE(records.size() == 12);
        for (const auto& r : records) {
            REQUIRE(r.ok());
            CHECK(*r.gap >= -1e-12);
            const IsingModel m = std::get<IsingModel>(
                generate_instance(Family::random, {{"n", r.n}}, r.instance_id.back() - '0').model);
            CHECK(*r.reference_energy == Approx(support::oracle_minimum(m)).margin(1e-9));
            CHECK(*r.energy == Approx(m.energy(parse_state_string(r.state))).margin(1e-9));
        }
    }
    SECTION("best_of_suite gives each instance a zero gap") {
        const auto records = run_suite(random_suite({20}, ReferencePolicy::best_of_suite));
        for (std::size_t k = 0; k < records.size(); k += 2) {
            CHECK(records[k].reference_energy == records[k + 1].reference_energy);
            CHECK(std::min(*records[k].gap, *records[k + 1].gap) == 0.0);
        }
    }
    SECTION("samples are sorted and truncated") {
        SuiteSpec spec = random_suite({10}, ReferencePolicy::best_of_suite);
        spec.sample_count = 3;
        const auto result = run_suite_detailed(spec);
        for (const auto& set : result.samples) {
            REQUIRE(set.size() == 3);
            CHECK(set.samples[0].energy <= set.samples[2].energy);
        }
    }
    SECTION("replicas override") {
        SuiteSpec spec = random_suite({10}, ReferencePolicy::best_of_suite);
        spec.replicas = 2;
        for (const auto& set : run_suite_detailed(spec).samples) CHECK(set.size() == 2);
    }
    SECTION("reference failures become per-record errors") {
        SuiteSpec spec = random_suite({30}, ReferencePolicy::brute_force);
        const auto records = run_suite(spec);
        REQUIRE(records.size() == 6);
        for (const auto& r : records) {
            CHECK_FALSE(r.ok());
            CHECK(r.error.find("brute-force cap") != std::string::npos);
            CHECK(r.energy.has_value());
            CHECK_FALSE(r.gap.has_value());
        }
        spec.reference = ReferencePolicy::planted;
        for (const auto& r : run_suite(spec)) CHECK(r.error.find("planted") != std::string::npos);
    }
    SECTION("zero reference is reported, not replaced") {
        SuiteSpec spec;
        const auto path = scratch("zero.json");
        write_instance(path, AnyModel(IsingModel(3)), FileFormat::json);
        InstanceSource src;
        src.files = {path.string()};
        spec.instances.push_back(src);
        spec.solvers = {{"bf", BruteForceParams{}}};
        const auto records = run_suite(spec);
        REQUIRE(records.size() == 1);
        CHECK(records[0].energy == 0.0);
        CHECK(records[0].error.find("zero reference") != std::string::npos);
    }
    SECTION("file instances with certificates and a reference file") {
        const auto dir = scratch("files");
        std::filesystem::create_directories(dir);
        const auto planted = gen_tile(4, {0.0, 0.5, 0.0, 0.5}, 9);
        write_instance(dir / "a.txt", AnyModel(std::get<IsingModel>(planted.model)), FileFormat::text);
        write_file(dir / "a.txt.cert.json", certificate_to_json(make_certificate(planted)).dump());
        write_instance(dir / "b.txt", AnyModel(std::get<IsingModel>(planted.model)), FileFormat::text);
        SuiteSpec spec;
        InstanceSource src;
        src.files = {"a.*t"};
        spec.instances.push_back(src);
        spec.solvers = {{"bb", BBParams{}}};
        spec.reference = ReferencePolicy::planted;
        spec.base_dir = dir;
        const auto records = run_suite(spec);
        REQUIRE(records.size() == 1);
        CHECK(records[0].instance_id == "a.txt");
        CHECK(records[0].gap == 0.0);

        write_file(dir / "refs.json", json{{"b.txt", planted.planted_energy}}.dump());
        spec.instances[0].files = {"?.txt"};
        spec.reference = ReferencePolicy::file;
        spec.reference_file = "refs.json";
        const auto both = run_suite(spec);
        REQUIRE(both.size() == 2);
        CHECK(both[0].error.find("reference file") != std::string::npos);
        CHECK(both[1].gap == 0.0);
    }
    SECTION("determinism across worker budgets") {
        SuiteSpec spec = random_suite({14}, ReferencePolicy::best_of_suite);
        spec.workers = 1;
        const auto a = run_suite(spec);
        spec.workers = 4;
        const auto b = run_suite(spec);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].same_outcome(b[k]));
        spec.seed = 18;
        CHECK_FALSE(run_suite(spec)[0].same_outcome(a[0]));
    }
}

TEST_CASE("Suite specs") {
    SECTION("JSON form") {
        const json j = {{"instances", {{{"family", "wishart"}, {"params", {{"alpha", 0.5}}}, {"sizes", {8, 10}},
                                        {"seed", 3}, {"realizations", 2}}}},
                        {"solvers", {{{"id", "sa-short"}, {"solver", "sa"}, {"sweeps", 50}}, {{"solver", "bb"}}}},
                        {"reference", "planted"},
                        {"sample_count", 16}};
        const SuiteSpec spec = suite_from_json(j);
        REQUIRE(spec.instances.size() == 1);
        CHECK(spec.instances[0].seeds == std::vector<std::uint64_t>{3, 4});
        CHECK(spec.solvers[0].id == "sa-short");
        CHECK(std::get<SaParams>(spec.solvers[0].params).sweeps == 50);
        CHECK(spec.solvers[1].id == "bb");
        CHECK(spec.sample_count == 16);
        const auto instances = expand_instances(spec);
        REQUIRE(instances.size() == 4);
        CHECK(instances[0].id == "wishart-8-s3");
        CHECK(instances[3].id == "wishart-10-s4");
        CHECK(instances[0].params.at("n") == 8);
        for (const auto& r : run_suite(spec)) {
            INFO(r.error);
            CHECK(r.ok());
        }
    }
    SECTION("defaults") {
        const SuiteSpec spec =
            suite_from_json({{"instances", {{{"family", "random"}, {"sizes", {8}}}}}, {"solvers", {{{"solver", "pa"}}}}});
        CHECK(spec.sample_count == 1024);
        CHECK(spec.reference == ReferencePolicy::best_of_suite);
        CHECK(spec.instances[0].seeds.size() == 5);
        CHECK_FALSE(spec.replicas.has_value());
    }
    SECTION("rejections") {
        const json solvers = {{{"solver", "sa"}}};
        const json inst = {{{"family", "random"}, {"sizes", {8}}}};
        CHECK_THROWS_AS(suite_from_json({{"instances", inst}, {"solvers", solvers}, {"extra", 1}}), ValidationError);
        CHECK_THROWS_AS(suite_from_json({{"instances", json::array()}, {"solvers", solvers}}), ValidationError);
        CHECK_THROWS_AS(suite_from_json({{"instances", inst}, {"solvers", json::array()}}), ValidationError);
        CHECK_THROWS_AS(suite_from_json({{"instances", inst}, {"solvers", solvers}, {"sample_count", 0}}),
                        ValidationError);
        CHECK_THROWS_AS(suite_from_json({{"instances", inst}, {"solvers", {{{"solver", "sa"}}, {{"solver", "sa"}}}}}),
                        ValidationError);
        CHECK_THROWS_AS(suite_from_json({{"instances", inst}, {"solvers", {{{"solver", "sa"}, {"bogus", 1}}}}}),
                        ValidationError);
        CHECK_THROWS_AS(suite_from_json({{"instances", inst}, {"solvers", solvers}, {"reference", "cplex"}}),
                        ValidationError);
        CHECK_THROWS_AS(suite_from_json({{"instances", inst}, {"solvers", solvers}, {"reference", "file"}}),
                        ValidationError);
        CHECK_THROWS_AS(suite_from_json({{"instances", {{{"family", "random"}, {"sizes", {8}}, {"size", 3}}}},
                                         {"solvers", solvers}}),
                        ValidationError);
    }
    SECTION("missing files") {
        SuiteSpec spec;
        InstanceSource src;
        src.files = {(scratch("none") / "*.txt").string()};
        spec.instances.push_back(src);
        spec.solvers = {{"sa", SaParams{}}};
        CHECK_THROWS_AS(run_suite(spec), IoError);
    }
    SECTION("glob matching") {
        CHECK(detail::glob_match("*.txt", "a.txt"));
        CHECK(detail::glob_match("g?a*", "gka1a"));
        CHECK_FALSE(detail::glob_match("*.txt", "a.json"));
        CHECK_FALSE(detail::glob_match("a?", "a"));
    }
}

TEST_CASE("Spectrum") {
    const IsingModel m = gen_random(Complete{30}, CouplingDistribution::uniform(-1, 1), 4);
    PaParams p;
    p.replicas = 1024;
    p.steps = 50;
    const SampleSet set = solve_pa(m, p);
    SECTION("counts are conserved") {
        const Histogram h = spectrum(set, 40);
        CHECK(h.counts.size() == 40);
        CHECK(h.edges.size() == 41);
        CHECK(h.total() == 1024);
        CHECK(h.edges.front() == set.best().energy);
        CHECK(h.edges.back() == set.samples.back().energy);
    }
    SECTION("lowest occupied bin holds the best sample") {
        const Histogram h = spectrum(set, 25);
        std::size_t first = 0;
        while (h.counts[first] == 0) ++first;
        CHECK(h.bin_of(set.best().energy) == first);
        CHECK(h.bin_of(h.edges.back()) == 24);
    }
    SECTION("constant energies give a single bin") {
        const IsingModel zero(5);
        SaParams sp;
        sp.replicas = 7;
        sp.sweeps = 2;
        const Histogram h = spectrum(solve_sa(zero, sp), 10);
        REQUIRE(h.counts.size() == 1);
        CHECK(h.counts[0] == 7);
    }
    SECTION("errors") {
        CHECK_THROWS_AS(spectrum(SampleSet{}, 4), ValidationError);
        CHECK_THROWS_AS(spectrum(set, 0), ValidationError);
    }
    SECTION("CSV form") {
        const std::string csv = histogram_to_csv(spectrum(set, 2));
        CHECK(csv.rfind("lower,upper,count\r\n", 0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    }
}

TEST_CASE("Report export") {
    GapRecord failed;
    failed.instance_id = "x\ny";
    failed.family = "file";
    failed.solver_id = "bb";
    failed.error = "instance exceeds the brute-force cap, \"24\"";
    const std::vector<GapRecord> records = {sample_record(), failed};

    SECTION("empty list gives a header-only CSV") {
        CHECK(records_to_csv({}) ==
              "instance_id,family,n,solver_id,energy,reference_energy,gap,wall_time,seed,optimal,state,error\r\n");
        CHECK(records_from_csv(records_to_csv({})).empty());
    }
    SECTION("CSV quoting") {
        const std::string csv = records_to_csv(records);
        CHECK(csv.find("\"sa, \"\"fast\"\"\"") != std::string::npos);
        CHECK(csv.find("\"x\ny\"") != std::string::npos);
        const auto rows = detail::parse_csv(csv);
        REQUIRE(rows.size() == 3);
        CHECK(rows[1][3] == "sa, \"fast\"");
        CHECK(rows[2][4].empty());
    }
    SECTION("CSV round trip") { CHECK(records_from_csv(records_to_csv(records)) == records); }
    SECTION("JSON round trip and schema") {
        const json j = records_to_json(records);
        CHECK(j.at("format") == "qubokit.report");
        CHECK(j.at("version") == 1);
        CHECK(j.at("records").size() == 2);
        CHECK(j.at("records")[1].at("energy").is_null());
        CHECK(records_from_json(j) == records);
        CHECK(records_from_json(json::parse(j.dump())) == records);
        CHECK_THROWS_AS(records_from_json({{"format", "other"}, {"version", 1}}), ValidationError);
    }
    SECTION("file round trip") {
        export_records(records, ReportFormat::csv, scratch("r.csv"));
        export_records(records, ReportFormat::json, scratch("r.json"));
        CHECK(import_records(scratch("r.csv")) == records);
        CHECK(import_records(scratch("r.json")) == records);
        CHECK_THROWS_AS(export_records(records, ReportFormat::csv, scratch("r.json") / "r.csv"), IoError);
        CHECK_THROWS_AS(parse_report_format("xml"), ValidationError);
    }
    SECTION("malformed CSV") {
        CHECK_THROWS_AS(records_from_csv("a,b\r\n"), ValidationError);
        const std::string header = records_to_csv({});
        CHECK_THROWS_AS(records_from_csv(header + "1,2\r\n"), ValidationError);
        CHECK_THROWS_AS(records_from_csv(header + "\"open"), ValidationError);
    }
}

TEST_CASE("Summaries") {
    GapRecord a = sample_record(), b = sample_record(), c = sample_record();
    b.gap = 0.0;
    b.wall_time = 0.375;
    c.error = "boom";
    c.gap.reset();
    const auto rows = summarize({a, b, c});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].count == 2);
    CHECK(rows[0].errors == 1);
    CHECK(rows[0].mean_gap == Approx(0.0078125));
    CHECK(rows[0].mean_wall_time == Approx(0.25));
    const std::string csv = summary_to_csv(rows);
    CHECK(csv.rfind("solver_id,family,n,count,errors,mean_gap,mean_wall_time\r\n", 0) == 0);
}
