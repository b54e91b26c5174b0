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

// Instance files.
//
// Text format: '#' starts a comment. The first non-comment line is
//
//     n m d [hubo]
//
// with n variables, m term lines and domain tag d in {spin, binary}. Quadratic
// files then carry m lines "i j v" with 1-based indices; i == j is a linear
// term and "0 0 v" is the constant offset. Spin files are Ising models (v is
// J_ij or h_i), binary files QUBO models (v is Q_ij). With the "hubo" marker
// each line is "k i1 ... ik v" and "0 v" is the constant term.
//
// JSON mirrors the same content:
//
//     {"format": "qubokit.instance", "version": 1, "n": .., "domain": "spin",
//      "kind": "quadratic" | "hubo", "offset": .., "terms": [[i, j, v], ...]}
//
// where hubo terms are [[i1, ..., ik], v] and indices stay 1-based.

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qubokit/errors.hpp"
#include "qubokit/model.hpp"

namespace qubokit {

using AnyModel = std::variant<IsingModel, QuboModel, HuboModel>;

enum class FileFormat { text, json };

inline FileFormat parse_file_format(const std::string& s) {
    if (s == "text" || s == "txt") return FileFormat::text;
    if (s == "json") return FileFormat::json;
    throw ValidationError("unknown instance format '" + s + "' (expected text or json)");
}

inline FileFormat format_from_path(const std::filesystem::path& p) {
    return p.extension() == ".json" ? FileFormat::json : FileFormat::text;
}

inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        const std::size_t start = pos;
        while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos > start) out.push_back(line.substr(start, pos - start));
    }
    return out;
}

class LineError {
 public:
    LineError(std::string source, std::size_t line) : source_(std::move(source)), line_(line) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw ValidationError(source_ + ":" + std::to_string(line_) + ": " + what);
    }

    void set_line(std::size_t line) { line_ = line; }

 private:
    std::string source_;
    std::size_t line_;
};

inline long long parse_integer(std::string_view tok, const LineError& err) {
    long long v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
        err.fail("expected an integer, got '" + std::string(tok) + "'");
    }
    return v;
}

inline double parse_real(std::string_view tok, const LineError& err) {
    // strtod accepts the same spellings the writer emits and is locale-free for "C".
    const std::string s(tok);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty()) err.fail("expected a number, got '" + s + "'");
    return v;
}

struct QuadraticEntry {
    std::size_t i;  // 0 means constant
    std::size_t j;
    double value;
};

inline AnyModel build_quadratic(std::size_t n, Domain domain, const std::vector<QuadraticEntry>& entries) {
    double offset = 0.0;
    if (domain == Domain::spin) {
        std::vector<double> h(n, 0.0);
        std::vector<Coupling> couplings;
        for (const auto& e : entries) {
            if (e.i == 0) {
                offset += e.value;
            } else if (e.i == e.j) {
                h[e.i - 1] += e.value;
            } else {
                couplings.push_back({Index(e.i - 1), Index(e.j - 1), e.value});
            }
        }
        return IsingModel(n, std::move(h), std::move(couplings), offset);
    }
    std::vector<QuboTerm> terms;
    for (const auto& e : entries) {
        if (e.i == 0) {
            offset += e.value;
        } else {
            terms.push_back({Index(e.i - 1), Index(e.j - 1), e.value});
        }
    }
    return QuboModel(n, std::move(terms), offset);
}

}  // namespace detail

inline AnyModel parse_instance_text(std::istream& in, const std::string& source = "<input>") {
    detail::LineError err(source, 0);
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    bool hubo = false;
    std::size_t n = 0, m = 0, seen = 0;
    Domain domain = Domain::spin;
    std::vector<detail::QuadraticEntry> quad;
    std::vector<HuboTerm> hterms;
    while (std::getline(in, line)) {
        ++lineno;
        err.set_line(lineno);
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        const auto tok = detail::split_tokens(view);
        if (tok.empty()) continue;
        if (!have_header) {
            if (tok.size() != 3 && tok.size() != 4) err.fail("header must be 'n m domain [hubo]'");
            const auto nn = detail::parse_integer(tok[0], err);
            const auto mm = detail::parse_integer(tok[1], err);
            if (nn < 0 || mm < 0) err.fail("negative size in header");
            n = std::size_t(nn);
            m = std::size_t(mm);
            try {
                domain = parse_domain(std::string(tok[2]));
            } catch (const ValidationError& e) {
                err.fail(e.what());
            }
            if (tok.size() == 4) {
                if (tok[3] != "hubo") err.fail("unknown header marker '" + std::string(tok[3]) + "'");
                hubo = true;
            }
            have_header = true;
            continue;
        }
        if (seen == m) err.fail("more term lines than the header declares");
        ++seen;
        if (!hubo) {
            if (tok.size() != 3) err.fail("term line must be 'i j v'");
            const auto i = detail::parse_integer(tok[0], err);
            const auto j = detail::parse_integer(tok[1], err);
            const double v = detail::parse_real(tok[2], err);
            if ((i == 0) != (j == 0)) err.fail("only '0 0 v' may use index 0");
            if (i < 0 || j < 0 || std::size_t(i) > n || std::size_t(j) > n) err.fail("index out of range");
            if (!std::isfinite(v)) err.fail("non-finite coefficient");
            quad.push_back({std::size_t(i), std::size_t(j), v});
        } else {
            const auto k = detail::parse_integer(tok[0], err);
            if (k < 0 || tok.size() != std::size_t(k) + 2) err.fail("HUBO line must be 'k i1 ... ik v'");
            HuboTerm t{{}, detail::parse_real(tok.back(), err)};
            for (long long a = 0; a < k; ++a) {
                const auto idx = detail::parse_integer(tok[std::size_t(a) + 1], err);
                if (idx < 1 || std::size_t(idx) > n) err.fail("index out of range");
                t.vars.push_back(Index(idx - 1));
            }
            if (!std::isfinite(t.value)) err.fail("non-finite coefficient");
            hterms.push_back(std::move(t));
        }
    }
    if (!have_header) throw ValidationError(source + ": missing header line");
    if (seen != m) {
        throw ValidationError(source + ": header declares " + std::to_string(m) + " terms, found " +
                              std::to_string(seen));
    }
    try {
        if (hubo) return HuboModel(n, domain, std::move(hterms));
        return detail::build_quadratic(n, domain, quad);
    } catch (const ValidationError& e) {
        throw ValidationError(source + ": " + e.what());
    }
}

inline AnyModel parse_instance_json(const nlohmann::json& j, const std::string& source = "<input>") {
    try {
        const std::size_t n = j.at("n").get<std::size_t>();
        const Domain domain = parse_domain(j.at("domain").get<std::string>());
        const std::string kind = j.value("kind", std::string("quadratic"));
        const double offset = j.value("offset", 0.0);
        if (kind == "hubo") {
            std::vector<HuboTerm> terms;
            for (const auto& t : j.at("terms")) {
                HuboTerm term{{}, t.at(1).get<double>()};
                for (const auto& idx : t.at(0)) {
                    const auto v = idx.get<long long>();
                    if (v < 1 || std::size_t(v) > n) throw ValidationError("index out of range");
                    term.vars.push_back(Index(v - 1));
                }
                terms.push_back(std::move(term));
            }
            if (offset != 0.0) terms.push_back({{}, offset});
            return HuboModel(n, domain, std::move(terms));
        }
        if (kind != "quadratic") throw ValidationError("unknown instance kind '" + kind + "'");
        std::vector<detail::QuadraticEntry> entries;
        for (const auto& t : j.at("terms")) {
            const auto i = t.at(0).get<long long>();
            const auto k = t.at(1).get<long long>();
            if (i < 1 || k < 1 || std::size_t(i) > n || std::size_t(k) > n) {
                throw ValidationError("index out of range");
            }
            entries.push_back({std::size_t(i), std::size_t(k), t.at(2).get<double>()});
        }
        if (offset != 0.0) entries.push_back({0, 0, offset});
        return detail::build_quadratic(n, domain, entries);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(source + ": malformed instance JSON: " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(source + ": " + e.what());
    }
}

inline AnyModel parse_instance(const std::string& content, FileFormat format, const std::string& source = "<input>") {
    if (format == FileFormat::json) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(content);
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(source + ": " + e.what());
        }
        return parse_instance_json(j, source);
    }
    std::istringstream in(content);
    return parse_instance_text(in, source);
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failure on '" + path.string() + "'");
}

inline AnyModel read_instance(const std::filesystem::path& path) {
    return parse_instance(read_file(path), format_from_path(path), path.string());
}

inline std::string instance_to_text(const AnyModel& model) {
    std::ostringstream out;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, IsingModel>) {
                const std::size_t count = m.size() + m.couplings().size() + (m.offset() != 0.0 ? 1 : 0);
                out << m.size() << ' ' << count << " spin\n";
                if (m.offset() != 0.0) out << "0 0 " << format_double(m.offset()) << '\n';
                for (std::size_t i = 0; i < m.size(); ++i) {
                    out << i + 1 << ' ' << i + 1 << ' ' << format_double(m.h(i)) << '\n';
                }
                for (const auto& c : m.couplings()) {
                    out << c.i + 1 << ' ' << c.j + 1 << ' ' << format_double(c.value) << '\n';
                }
            } else if constexpr (std::is_same_v<T, QuboModel>) {
                const std::size_t count = m.terms().size() + (m.offset() != 0.0 ? 1 : 0);
                out << m.size() << ' ' << count << " binary\n";
                if (m.offset() != 0.0) out << "0 0 " << format_double(m.offset()) << '\n';
                for (const auto& t : m.terms()) {
                    out << t.i + 1 << ' ' << t.j + 1 << ' ' << format_double(t.value) << '\n';
                }
            } else {
                out << m.size() << ' ' << m.terms().size() << ' ' << to_string(m.domain()) << " hubo\n";
                for (const auto& t : m.terms()) {
                    out << t.vars.size();
                    for (Index v : t.vars) out << ' ' << v + 1;
                    out << ' ' << format_double(t.value) << '\n';
                }
            }
        },
        model);
    return out.str();
}

inline nlohmann::json instance_to_json(const AnyModel& model) {
    nlohmann::json j;
    j["format"] = "qubokit.instance";
    j["version"] = 1;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            auto terms = nlohmann::json::array();
            j["n"] = m.size();
            if constexpr (std::is_same_v<T, IsingModel>) {
                j["domain"] = "spin";
                j["kind"] = "quadratic";
                j["offset"] = m.offset();
                for (std::size_t i = 0; i < m.size(); ++i) terms.push_back({i + 1, i + 1, m.h(i)});
                for (const auto& c : m.couplings()) terms.push_back({c.i + 1, c.j + 1, c.value});
            } else if constexpr (std::is_same_v<T, QuboModel>) {
                j["domain"] = "binary";
                j["kind"] = "quadratic";
                j["offset"] = m.offset();
                for (const auto& t : m.terms()) terms.push_back({t.i + 1, t.j + 1, t.value});
            } else {
                j["domain"] = to_string(m.domain());
                j["kind"] = "hubo";
                j["offset"] = 0.0;
                for (const auto& t : m.terms()) {
                    auto idx = nlohmann::json::array();
                    for (Index v : t.vars) idx.push_back(v + 1);
                    terms.push_back({idx, t.value});
                }
            }
            j["terms"] = std::move(terms);
        },
        model);
    return j;
}

inline std::string serialize_instance(const AnyModel& model, FileFormat format) {
    if (format == FileFormat::json) return instance_to_json(model).dump(1) + "\n";
    return instance_to_text(model);
}

inline void write_instance(const std::filesystem::path& path, const AnyModel& model, FileFormat format) {
    write_file(path, serialize_instance(model, format));
}

inline void write_instance(const std::filesystem::path& path, const AnyModel& model) {
    write_instance(path, model, format_from_path(path));
}

inline std::size_t model_size(const AnyModel& model) {
    return std::visit([](const auto& m) { return m.size(); }, model);
}

}  // namespace qubokit
