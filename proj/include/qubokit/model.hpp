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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qubokit/errors.hpp"

namespace qubokit {

using Spin = std::int8_t;
using Bit = std::uint8_t;
using SpinVector = std::vector<Spin>;
using BinaryVector = std::vector<Bit>;
using Index = std::uint32_t;

/// sign(0) is +1 everywhere in the toolkit.
constexpr Spin sign_of(double x) { return x < 0.0 ? Spin{-1} : Spin{1}; }

inline void validate_spins(std::span<const Spin> s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != 1 && s[i] != -1) {
            throw ValidationError("spin " + std::to_string(i) + " is " + std::to_string(int(s[i])) +
                                  ", expected -1 or +1");
        }
    }
}

inline void validate_bits(std::span<const Bit> x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 1) {
            throw ValidationError("bit " + std::to_string(i) + " is " + std::to_string(int(x[i])) +
                                  ", expected 0 or 1");
        }
    }
}

inline BinaryVector to_binary(std::span<const Spin> s) {
    validate_spins(s);
    BinaryVector x(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) x[i] = s[i] > 0 ? 1 : 0;
    return x;
}

inline SpinVector to_spin(std::span<const Bit> x) {
    validate_bits(x);
    SpinVector s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] ? 1 : -1;
    return s;
}

namespace detail {

inline void check_dimension(std::size_t expected, std::size_t got) {
    if (expected != got) {
        throw DimensionError("state has " + std::to_string(got) + " entries, model has " +
                             std::to_string(expected) + " variables");
    }
}

inline void check_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw ValidationError(std::string("non-finite ") + what);
}

// Sums above this many terms switch to Neumaier compensated accumulation.
inline constexpr std::size_t kCompensatedThreshold = 100000;

class Summation {
 public:
    explicit Summation(bool compensated) : compensated_(compensated) {}

    void add(double v) {
        if (!compensated_) {
            sum_ += v;
            return;
        }
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            carry_ += (sum_ - t) + v;
        } else {
            carry_ += (v - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + carry_; }

 private:
    bool compensated_;
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace detail

struct Coupling {
    Index i;
    Index j;
    double value;

    friend bool operator==(const Coupling&, const Coupling&) = default;
};

struct Neighbor {
    Index index;
    double value;
};

/// Order-2 spin model  E(s) = sum_{i<j} J_ij s_i s_j + sum_i h_i s_i + offset.
///
/// Couplings are stored strictly upper triangular, sorted by (i, j); duplicate
/// pairs given at construction are summed. A CSR adjacency is built once for
/// O(degree) local-field updates. Instances are immutable.
class IsingModel {
 public:
    IsingModel() = default;

    explicit IsingModel(std::size_t n) : h_(n, 0.0), row_start_(n + 1, 0) {}

    IsingModel(std::size_t n, std::vector<double> h, std::vector<Coupling> couplings, double offset = 0.0)
        : h_(std::move(h)), couplings_(std::move(couplings)), offset_(offset) {
        if (h_.empty() && n > 0) h_.assign(n, 0.0);
        if (h_.size() != n) {
            throw DimensionError("field vector has " + std::to_string(h_.size()) + " entries for " +
                                 std::to_string(n) + " variables");
        }
        detail::check_finite(offset_, "offset");
        for (double v : h_) detail::check_finite(v, "field");
        canonicalize();
        build_adjacency();
    }

    std::size_t size() const { return h_.size(); }
    const std::vector<double>& h() const { return h_; }
    double h(std::size_t i) const { return h_[i]; }
    const std::vector<Coupling>& couplings() const { return couplings_; }
    double offset() const { return offset_; }

    std::span<const Neighbor> neighbors(std::size_t i) const {
        return {adjacency_.data() + row_start_[i], adjacency_.data() + row_start_[i + 1]};
    }

    std::size_t degree(std::size_t i) const { return row_start_[i + 1] - row_start_[i]; }

    /// h_i + sum_j J_ij s_j.
    double local_field(std::size_t i, std::span<const Spin> s) const {
        double f = h_[i];
        for (const auto& nb : neighbors(i)) f += nb.value * s[nb.index];
        return f;
    }

    /// max_i (|h_i| + sum_j |J_ij|); bounds every local field.
    double max_row_magnitude() const {
        double best = 0.0;
        for (std::size_t i = 0; i < size(); ++i) best = std::max(best, row_magnitude(i));
        return best;
    }

    double row_magnitude(std::size_t i) const {
        double r = std::abs(h_[i]);
        for (const auto& nb : neighbors(i)) r += std::abs(nb.value);
        return r;
    }

    double energy(std::span<const Spin> s) const {
        detail::check_dimension(size(), s.size());
        validate_spins(s);
        detail::Summation sum(couplings_.size() + h_.size() > detail::kCompensatedThreshold);
        for (const auto& c : couplings_) sum.add(c.value * double(s[c.i] * s[c.j]));
        for (std::size_t i = 0; i < h_.size(); ++i) sum.add(h_[i] * s[i]);
        sum.add(offset_);
        return sum.value();
    }

    friend bool operator==(const IsingModel& a, const IsingModel& b) {
        return a.h_ == b.h_ && a.couplings_ == b.couplings_ && a.offset_ == b.offset_;
    }

 private:
    void canonicalize() {
        const auto n = size();
        for (auto& c : couplings_) {
            if (c.i >= n || c.j >= n) {
                throw ValidationError("coupling (" + std::to_string(c.i) + ", " + std::to_string(c.j) +
                                      ") out of range for " + std::to_string(n) + " variables");
            }
            if (c.i == c.j) throw ValidationError("self coupling on variable " + std::to_string(c.i));
            detail::check_finite(c.value, "coupling");
            if (c.i > c.j) std::swap(c.i, c.j);
        }
        std::stable_sort(couplings_.begin(), couplings_.end(),
                         [](const Coupling& a, const Coupling& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
        std::vector<Coupling> merged;
        merged.reserve(couplings_.size());
        for (const auto& c : couplings_) {
            if (!merged.empty() && merged.back().i == c.i && merged.back().j == c.j) {
                merged.back().value += c.value;
            } else {
                merged.push_back(c);
            }
        }
        couplings_ = std::move(merged);
    }

    void build_adjacency() {
        const auto n = size();
        row_start_.assign(n + 1, 0);
        for (const auto& c : couplings_) {
            ++row_start_[c.i + 1];
            ++row_start_[c.j + 1];
        }
        for (std::size_t i = 0; i < n; ++i) row_start_[i + 1] += row_start_[i];
        adjacency_.resize(row_start_[n]);
        std::vector<std::size_t> fill(row_start_.begin(), row_start_.end() - 1);
        for (const auto& c : couplings_) {
            adjacency_[fill[c.i]++] = {c.j, c.value};
            adjacency_[fill[c.j]++] = {c.i, c.value};
        }
    }

    std::vector<double> h_;
    std::vector<Coupling> couplings_;
    double offset_ = 0.0;
    std::vector<std::size_t> row_start_ = {0};
    std::vector<Neighbor> adjacency_;
};

struct QuboTerm {
    Index i;
    Index j;
    double value;

    friend bool operator==(const QuboTerm&, const QuboTerm&) = default;
};

/// Q(x) = sum_{i<=j} Q_ij x_i x_j + offset over binary x; i == j is linear.
class QuboModel {
 public:
    QuboModel() = default;

    QuboModel(std::size_t n, std::vector<QuboTerm> terms, double offset = 0.0)
        : n_(n), terms_(std::move(terms)), offset_(offset) {
        detail::check_finite(offset_, "offset");
        for (auto& t : terms_) {
            if (t.i >= n_ || t.j >= n_) {
                throw ValidationError("QUBO term (" + std::to_string(t.i) + ", " + std::to_string(t.j) +
                                      ") out of range for " + std::to_string(n_) + " variables");
            }
            detail::check_finite(t.value, "QUBO coefficient");
            if (t.i > t.j) std::swap(t.i, t.j);
        }
        std::stable_sort(terms_.begin(), terms_.end(),
                         [](const QuboTerm& a, const QuboTerm& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
        std::vector<QuboTerm> merged;
        merged.reserve(terms_.size());
        for (const auto& t : terms_) {
            if (!merged.empty() && merged.back().i == t.i && merged.back().j == t.j) {
                merged.back().value += t.value;
            } else {
                merged.push_back(t);
            }
        }
        terms_ = std::move(merged);
    }

    std::size_t size() const { return n_; }
    const std::vector<QuboTerm>& terms() const { return terms_; }
    double offset() const { return offset_; }

    double energy(std::span<const Bit> x) const {
        detail::check_dimension(n_, x.size());
        validate_bits(x);
        detail::Summation sum(terms_.size() > detail::kCompensatedThreshold);
        for (const auto& t : terms_) {
            if (x[t.i] && x[t.j]) sum.add(t.value);
        }
        sum.add(offset_);
        return sum.value();
    }

    friend bool operator==(const QuboModel&, const QuboModel&) = default;

 private:
    std::size_t n_ = 0;
    std::vector<QuboTerm> terms_;
    double offset_ = 0.0;
};

enum class Domain { spin, binary };

inline const char* to_string(Domain d) { return d == Domain::spin ? "spin" : "binary"; }

inline Domain parse_domain(const std::string& s) {
    if (s == "spin") return Domain::spin;
    if (s == "binary") return Domain::binary;
    throw ValidationError("unknown domain '" + s + "' (expected spin or binary)");
}

struct HuboTerm {
    std::vector<Index> vars;  // strictly increasing; empty for the constant term
    double value;

    friend bool operator==(const HuboTerm&, const HuboTerm&) = default;
};

/// Polynomial of order P over spins or bits. Constants live in a degree-0
/// term; there is no separate offset.
class HuboModel {
 public:
    HuboModel() = default;

    HuboModel(std::size_t n, Domain domain, std::vector<HuboTerm> terms, std::size_t max_order = 0)
        : n_(n), domain_(domain), terms_(std::move(terms)) {
        std::size_t order = 1;
        for (auto& t : terms_) {
            std::sort(t.vars.begin(), t.vars.end());
            for (std::size_t k = 0; k < t.vars.size(); ++k) {
                if (t.vars[k] >= n_) {
                    throw ValidationError("HUBO term index " + std::to_string(t.vars[k]) + " out of range for " +
                                          std::to_string(n_) + " variables");
                }
                if (k > 0 && t.vars[k] == t.vars[k - 1]) {
                    throw ValidationError("HUBO term repeats variable " + std::to_string(t.vars[k]));
                }
            }
            detail::check_finite(t.value, "HUBO coefficient");
            order = std::max(order, t.vars.size());
        }
        if (max_order != 0 && order > max_order) {
            throw UnsupportedOrderError("HUBO term of order " + std::to_string(order) + " exceeds declared order " +
                                        std::to_string(max_order));
        }
        max_order_ = max_order != 0 ? max_order : order;
        std::stable_sort(terms_.begin(), terms_.end(), [](const HuboTerm& a, const HuboTerm& b) {
            if (a.vars.size() != b.vars.size()) return a.vars.size() < b.vars.size();
            return a.vars < b.vars;
        });
        std::vector<HuboTerm> merged;
        merged.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!merged.empty() && merged.back().vars == t.vars) {
                merged.back().value += t.value;
            } else {
                merged.push_back(std::move(t));
            }
        }
        terms_ = std::move(merged);
    }

    std::size_t size() const { return n_; }
    Domain domain() const { return domain_; }
    const std::vector<HuboTerm>& terms() const { return terms_; }
    std::size_t max_order() const { return max_order_; }

    double energy(std::span<const Spin> s) const {
        if (domain_ != Domain::spin) throw ValidationError("spin state given to a binary-domain HUBO");
        detail::check_dimension(n_, s.size());
        validate_spins(s);
        detail::Summation sum(terms_.size() > detail::kCompensatedThreshold);
        for (const auto& t : terms_) {
            int p = 1;
            for (Index v : t.vars) p *= s[v];
            sum.add(t.value * p);
        }
        return sum.value();
    }

    double energy(std::span<const Bit> x) const {
        if (domain_ != Domain::binary) throw ValidationError("binary state given to a spin-domain HUBO");
        detail::check_dimension(n_, x.size());
        validate_bits(x);
        detail::Summation sum(terms_.size() > detail::kCompensatedThreshold);
        for (const auto& t : terms_) {
            bool on = true;
            for (Index v : t.vars) on = on && x[v];
            if (on) sum.add(t.value);
        }
        return sum.value();
    }

    friend bool operator==(const HuboModel&, const HuboModel&) = default;

 private:
    std::size_t n_ = 0;
    Domain domain_ = Domain::spin;
    std::vector<HuboTerm> terms_;
    std::size_t max_order_ = 1;
};

inline double energy_ising(const IsingModel& m, std::span<const Spin> s) { return m.energy(s); }
inline double energy_qubo(const QuboModel& q, std::span<const Bit> x) { return q.energy(x); }
inline double energy_hubo(const HuboModel& h, std::span<const Spin> s) { return h.energy(s); }
inline double energy_hubo(const HuboModel& h, std::span<const Bit> x) { return h.energy(x); }

/// Exact expansion under x_i = (1 + s_i) / 2; the constant lands in the
/// offset so energies are equal state by state.
inline IsingModel qubo_to_ising(const QuboModel& q) {
    std::vector<double> h(q.size(), 0.0);
    std::vector<Coupling> couplings;
    double offset = q.offset();
    for (const auto& t : q.terms()) {
        if (t.i == t.j) {
            h[t.i] += 0.5 * t.value;
            offset += 0.5 * t.value;
        } else {
            const double quarter = 0.25 * t.value;
            couplings.push_back({t.i, t.j, quarter});
            h[t.i] += quarter;
            h[t.j] += quarter;
            offset += quarter;
        }
    }
    return IsingModel(q.size(), std::move(h), std::move(couplings), offset);
}

/// Exact expansion under s_i = 2 x_i - 1.
inline QuboModel ising_to_qubo(const IsingModel& m) {
    std::vector<QuboTerm> terms;
    terms.reserve(m.couplings().size() + m.size());
    std::vector<double> diag(m.size(), 0.0);
    double offset = m.offset();
    for (std::size_t i = 0; i < m.size(); ++i) {
        diag[i] += 2.0 * m.h(i);
        offset -= m.h(i);
    }
    for (const auto& c : m.couplings()) {
        terms.push_back({c.i, c.j, 4.0 * c.value});
        diag[c.i] -= 2.0 * c.value;
        diag[c.j] -= 2.0 * c.value;
        offset += c.value;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (diag[i] != 0.0) terms.push_back({Index(i), Index(i), diag[i]});
    }
    return QuboModel(m.size(), std::move(terms), offset);
}

/// Rewrites a binary-domain HUBO over spins by expanding each product of
/// (1 + s_v) / 2 factors. Spin-domain input is returned unchanged.
inline HuboModel hubo_to_spin(const HuboModel& h) {
    if (h.domain() == Domain::spin) return h;
    std::vector<HuboTerm> out;
    for (const auto& t : h.terms()) {
        const std::size_t k = t.vars.size();
        if (k > 20) throw UnsupportedOrderError("binary HUBO term order too large to expand");
        const double coef = t.value / double(std::uint64_t{1} << k);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            HuboTerm sub{{}, coef};
            for (std::size_t b = 0; b < k; ++b) {
                if (mask >> b & 1) sub.vars.push_back(t.vars[b]);
            }
            out.push_back(std::move(sub));
        }
    }
    return HuboModel(h.size(), Domain::spin, std::move(out), h.max_order());
}

/// Order <= 2 spin HUBO as an IsingModel (degree-0 term becomes the offset).
inline IsingModel hubo_quadratic_to_ising(const HuboModel& in) {
    const HuboModel h = hubo_to_spin(in);
    std::vector<double> fields(h.size(), 0.0);
    std::vector<Coupling> couplings;
    double offset = 0.0;
    for (const auto& t : h.terms()) {
        switch (t.vars.size()) {
            case 0: offset += t.value; break;
            case 1: fields[t.vars[0]] += t.value; break;
            case 2: couplings.push_back({t.vars[0], t.vars[1], t.value}); break;
            default: throw UnsupportedOrderError("HUBO term of order " + std::to_string(t.vars.size()) +
                                                 " is not quadratic");
        }
    }
    return IsingModel(h.size(), std::move(fields), std::move(couplings), offset);
}

/// h_i -> g_i h_i, J_ij -> g_i g_j J_ij. Energies satisfy E'(g.s) = E(s).
inline IsingModel apply_gauge(const IsingModel& m, std::span<const Spin> g) {
    detail::check_dimension(m.size(), g.size());
    validate_spins(g);
    std::vector<double> h(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) h[i] = g[i] * m.h(i);
    std::vector<Coupling> couplings = m.couplings();
    for (auto& c : couplings) c.value *= double(g[c.i] * g[c.j]);
    return IsingModel(m.size(), std::move(h), std::move(couplings), m.offset());
}

inline HuboModel apply_gauge(const HuboModel& m, std::span<const Spin> g) {
    if (m.domain() != Domain::spin) throw ValidationError("gauge transform needs a spin-domain HUBO");
    detail::check_dimension(m.size(), g.size());
    validate_spins(g);
    std::vector<HuboTerm> terms = m.terms();
    for (auto& t : terms) {
        int p = 1;
        for (Index v : t.vars) p *= g[v];
        t.value *= p;
    }
    return HuboModel(m.size(), Domain::spin, std::move(terms), m.max_order());
}

inline SpinVector apply_gauge(std::span<const Spin> s, std::span<const Spin> g) {
    detail::check_dimension(g.size(), s.size());
    SpinVector out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = Spin(s[i] * g[i]);
    return out;
}

}  // namespace qubokit
