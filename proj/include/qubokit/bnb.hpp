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

// Best-first branch and bound over spin assignments.
//
// Variables are fixed in a static order (descending |h_i| + sum_j |J_ij|), so
// the set of free variables at depth k is always the same suffix of that
// order and every per-depth matrix (shifted Cholesky factor, eigenbasis) is
// computed once. A node stores its fixed prefix; its bound is
//
//     base            prefix energy of the fixed spins alone
//     spd             prefix + min_r r^T (A + d I) r / 2 + f^T r
//     spd_literal     as spd, but with the raw fields h of the free spins
//     spd_admissible  prefix + max_{d' >= d} [-f^T (A + d' I)^{-1} f / 2 - d' m / 2]
//
// where A is the coupling matrix of the m free spins, f their effective
// fields with the fixed spins folded in (f_j = h_j + sum_{i fixed} J_ij s_i),
// and d = max(0, -eigmin A) + epsilon. For spin vectors s^T (A + d I) s / 2 =
// s^T A s / 2 + d m / 2, so the admissible form never exceeds the best
// completion and supports exact pruning. The other kinds are heuristic scores.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "qubokit/errors.hpp"
#include "qubokit/linalg.hpp"
#include "qubokit/model.hpp"
#include "qubokit/samples.hpp"

namespace qubokit {

enum class BoundKind { base, spd, spd_literal, spd_admissible };

inline const char* to_string(BoundKind k) {
    switch (k) {
        case BoundKind::base: return "base";
        case BoundKind::spd: return "spd";
        case BoundKind::spd_literal: return "spd_literal";
        case BoundKind::spd_admissible: return "spd_admissible";
    }
    return "?";
}

inline BoundKind parse_bound_kind(const std::string& s) {
    for (BoundKind k : {BoundKind::base, BoundKind::spd, BoundKind::spd_literal, BoundKind::spd_admissible}) {
        if (s == to_string(k)) return k;
    }
    throw ValidationError("unknown bound kind '" + s + "'");
}

struct BBParams {
    BoundKind bound_kind = BoundKind::spd_admissible;
    std::size_t pool_limit = std::size_t{1} << 20;
    double epsilon = 1e-6;
    double time_limit = 0.0;     // seconds; 0 disables
    std::size_t node_limit = 0;  // node expansions; 0 disables

    void validate() const {
        if (pool_limit < 1) throw ValidationError("pool_limit must be >= 1");
        if (!(epsilon > 0.0)) throw ValidationError("epsilon must be > 0");
        if (!(time_limit >= 0.0)) throw ValidationError("time_limit must be >= 0");
    }
};

/// Partial assignment of variables 0 .. k-1 of a model.
struct BBNode {
    SpinVector fixed_prefix;
    double prefix_energy = 0.0;
    double bound = 0.0;
};

struct BBResult {
    SpinVector state;
    double energy = std::numeric_limits<double>::infinity();
    bool optimal = false;
    std::size_t expanded = 0;
    std::size_t evictions = 0;
    bool hit_limit = false;
    double wall_time = 0.0;
};

namespace detail {

inline constexpr int kFactorRetries = 40;

struct ShiftedFactor {
    double shift = 0.0;
    Eigen::LLT<Eigen::MatrixXd> llt;
};

/// Cholesky of A + d I with d = max(0, -eigmin A) + epsilon; epsilon doubles
/// on factorization failure.
inline ShiftedFactor factor_shifted(const Eigen::MatrixXd& A, double epsilon) {
    const double eigmin = A.rows() > 0 ? eig_extreme(A, Extreme::min).value : 0.0;
    const auto m = A.rows();
    for (int attempt = 0; attempt < kFactorRetries; ++attempt) {
        ShiftedFactor f;
        f.shift = std::max(0.0, -eigmin) + epsilon;
        Eigen::MatrixXd shifted = A;
        shifted.diagonal().array() += f.shift;
        f.llt.compute(shifted);
        if (f.llt.info() == Eigen::Success && m > 0) {
            const auto& L = f.llt.matrixL();
            bool ok = true;
            for (Eigen::Index i = 0; i < m; ++i) ok = ok && L(i, i) > 0.0 && std::isfinite(L(i, i));
            if (ok) return f;
        }
        epsilon *= 2.0;
    }
    throw NumericalError("shifted coupling matrix is not positive definite after " +
                         std::to_string(kFactorRetries) + " epsilon doublings");
}

/// min_r r^T (A + d I) r / 2 + f^T r  =  -f^T (A + d I)^{-1} f / 2.
inline double relaxed_minimum(const ShiftedFactor& factor, const Eigen::VectorXd& f) {
    if (f.size() == 0) return 0.0;
    const Eigen::VectorXd r = factor.llt.solve(-f);
    return 0.5 * f.dot(r);
}

struct SubSpectrum {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
    double floor = 0.0;  // smallest admissible shift, max(0, -eigmin) + epsilon
};

inline SubSpectrum sub_spectrum(const Eigen::MatrixXd& A, double epsilon) {
    SubSpectrum s;
    if (A.rows() == 0) return s;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
    s.eigenvalues = es.eigenvalues();
    s.eigenvectors = es.eigenvectors();
    s.floor = std::max(0.0, -s.eigenvalues(0)) + epsilon;
    return s;
}

// g(d) = -1/2 sum_i y_i^2 / (lambda_i + d) - d m / 2 is concave in d; its
// maximizer satisfies sum_i y_i^2 / (lambda_i + d)^2 = m. Newton steps on the
// secular form 1/||r(d)|| - 1/sqrt(m) approach it from below. Any d >= floor
// yields a valid bound, so the best value seen is returned.
inline double admissible_minimum(const SubSpectrum& s, const Eigen::VectorXd& f) {
    const auto m = s.eigenvalues.size();
    if (m == 0) return 0.0;
    const Eigen::VectorXd y = s.eigenvectors.transpose() * f;
    const Eigen::ArrayXd y2 = y.array().square();
    const double target = std::sqrt(double(m));
    auto value = [&](double d) { return -0.5 * (y2 / (s.eigenvalues.array() + d)).sum() - 0.5 * d * double(m); };
    double d = s.floor;
    double best = value(d);
    for (int it = 0; it < 60; ++it) {
        const Eigen::ArrayXd inv = 1.0 / (s.eigenvalues.array() + d);
        const double norm2 = (y2 * inv.square()).sum();
        if (norm2 <= double(m) || !(norm2 > 0.0)) break;
        const double norm = std::sqrt(norm2);
        const double dnorm2 = -2.0 * (y2 * inv.cube()).sum();
        // psi(d) = 1/norm - 1/target, psi'(d) = -dnorm2 / (2 norm^3)
        const double psi = 1.0 / norm - 1.0 / target;
        const double dpsi = -dnorm2 / (2.0 * norm2 * norm);
        if (!(dpsi > 0.0)) break;
        const double next = d - psi / dpsi;
        if (!(next > d) || !std::isfinite(next)) break;
        const double v = value(next);
        if (v > best) best = v;
        const bool converged = next - d <= 1e-12 * std::max(1.0, std::abs(next));
        d = next;
        if (converged) break;
    }
    return best;
}

inline Eigen::MatrixXd trailing_block(const Eigen::MatrixXd& A, std::size_t k) {
    const auto m = A.rows() - Eigen::Index(k);
    return A.bottomRightCorner(m, m);
}

}  // namespace detail

/// Energy of the subproblem induced by the fixed spins (offset included).
inline double prefix_energy(const IsingModel& m, std::span<const Spin> prefix) {
    if (prefix.size() > m.size()) throw DimensionError("prefix longer than the model");
    validate_spins(prefix);
    const std::size_t k = prefix.size();
    double e = m.offset();
    for (std::size_t i = 0; i < k; ++i) e += m.h(i) * prefix[i];
    for (const auto& c : m.couplings()) {
        if (c.j < k) e += c.value * prefix[c.i] * prefix[c.j];
    }
    return e;
}

/// Effective fields of the free variables k .. n-1 given the fixed prefix.
inline Eigen::VectorXd folded_fields(const IsingModel& m, std::span<const Spin> prefix) {
    const std::size_t k = prefix.size();
    Eigen::VectorXd f(Eigen::Index(m.size() - k));
    for (std::size_t j = k; j < m.size(); ++j) f(Eigen::Index(j - k)) = m.h(j);
    for (const auto& c : m.couplings()) {
        if (c.i < k && c.j >= k) f(Eigen::Index(c.j - k)) += c.value * prefix[c.i];
    }
    return f;
}

inline double bound_base(const IsingModel& m, const BBNode& node) { return prefix_energy(m, node.fixed_prefix); }

/// SPD relaxation bound of a node; `kind` selects among the spd variants.
inline double bound_spd(const IsingModel& m, const BBNode& node, double epsilon,
                        BoundKind kind = BoundKind::spd) {
    if (kind == BoundKind::base) return bound_base(m, node);
    if (!(epsilon > 0.0)) throw ValidationError("epsilon must be > 0");
    const std::size_t k = node.fixed_prefix.size();
    const double prefix = prefix_energy(m, node.fixed_prefix);
    if (k == m.size()) return prefix;
    const Eigen::MatrixXd A = detail::trailing_block(coupling_matrix(m), k);
    if (kind == BoundKind::spd_admissible) {
        return prefix + detail::admissible_minimum(detail::sub_spectrum(A, epsilon), folded_fields(m, node.fixed_prefix));
    }
    Eigen::VectorXd f;
    if (kind == BoundKind::spd_literal) {
        f.resize(Eigen::Index(m.size() - k));
        for (std::size_t j = k; j < m.size(); ++j) f(Eigen::Index(j - k)) = m.h(j);
    } else {
        f = folded_fields(m, node.fixed_prefix);
    }
    return prefix + detail::relaxed_minimum(detail::factor_shifted(A, epsilon), f);
}

/// Shift d(J) = max(0, -eigmin J) + epsilon actually used by the spd bounds
/// (after any epsilon doubling).
inline double spd_shift(const Eigen::MatrixXd& A, double epsilon) { return detail::factor_shifted(A, epsilon).shift; }

/// Static branching order: descending |h_i| + sum_j |J_ij|, ties by index.
inline std::vector<Index> branching_order(const IsingModel& m) {
    std::vector<Index> order(m.size());
    std::iota(order.begin(), order.end(), Index{0});
    std::vector<double> weight(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) weight[i] = m.row_magnitude(i);
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return weight[a] > weight[b]; });
    return order;
}

/// Model with variable k of the result being variable order[k] of `m`.
inline IsingModel permute(const IsingModel& m, std::span<const Index> order) {
    std::vector<Index> position(m.size());
    for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = Index(k);
    std::vector<double> h(m.size());
    for (std::size_t k = 0; k < order.size(); ++k) h[k] = m.h(order[k]);
    std::vector<Coupling> couplings;
    couplings.reserve(m.couplings().size());
    for (const auto& c : m.couplings()) couplings.push_back({position[c.i], position[c.j], c.value});
    return IsingModel(m.size(), std::move(h), std::move(couplings), m.offset());
}

namespace detail {

// Per-depth data for the free suffix k .. n-1.
class DepthBounds {
 public:
    DepthBounds(const Eigen::MatrixXd& A, const Eigen::VectorXd& h, BoundKind kind, double epsilon)
        : kind_(kind) {
        const std::size_t n = std::size_t(A.rows());
        if (kind_ == BoundKind::base) return;
        if (kind_ == BoundKind::spd_admissible) {
            spectra_.reserve(n);
            for (std::size_t k = 0; k < n; ++k) spectra_.push_back(sub_spectrum(trailing_block(A, k), epsilon));
            return;
        }
        factors_.reserve(n);
        for (std::size_t k = 0; k < n; ++k) factors_.push_back(factor_shifted(trailing_block(A, k), epsilon));
        if (kind_ == BoundKind::spd_literal) {
            literal_.resize(n);
            for (std::size_t k = 0; k < n; ++k) {
                literal_[k] = relaxed_minimum(factors_[k], h.tail(Eigen::Index(n - k)));
            }
        }
    }

    /// Completion term for a node at depth k with free-variable fields f.
    double completion(std::size_t k, const Eigen::VectorXd& f) const {
        switch (kind_) {
            case BoundKind::base: return 0.0;
            case BoundKind::spd: return relaxed_minimum(factors_[k], f);
            case BoundKind::spd_literal: return literal_[k];
            case BoundKind::spd_admissible: return admissible_minimum(spectra_[k], f);
        }
        return 0.0;
    }

 private:
    BoundKind kind_;
    std::vector<ShiftedFactor> factors_;
    std::vector<SubSpectrum> spectra_;
    std::vector<double> literal_;
};

}  // namespace detail

inline BBResult solve_bb(const IsingModel& model, const BBParams& params) {
    params.validate();
    Stopwatch clock;
    const std::size_t n = model.size();
    BBResult result;
    if (n == 0) {
        result.energy = model.offset();
        result.optimal = true;
        return result;
    }
    const std::vector<Index> order = branching_order(model);
    const IsingModel m = permute(model, order);
    const Eigen::MatrixXd A = coupling_matrix(m);
    const Eigen::VectorXd h = Eigen::Map<const Eigen::VectorXd>(m.h().data(), Eigen::Index(n));
    const detail::DepthBounds bounds(A, h, params.bound_kind, params.epsilon);

    struct Node {
        SpinVector prefix;
        double prefix_energy;
    };
    // (bound, insertion sequence, slot): best-first with FIFO tie-break.
    using Key = std::tuple<double, std::uint64_t, std::size_t>;
    std::set<Key> pool;
    std::vector<Node> slots;
    std::vector<std::size_t> free_slots;
    std::uint64_t sequence = 0;

    double incumbent = std::numeric_limits<double>::infinity();
    SpinVector incumbent_state;

    auto insert = [&](Node&& node, double bound) {
        std::size_t slot;
        if (!free_slots.empty()) {
            slot = free_slots.back();
            free_slots.pop_back();
            slots[slot] = std::move(node);
        } else {
            slot = slots.size();
            slots.push_back(std::move(node));
        }
        pool.emplace(bound, sequence++, slot);
        if (pool.size() > params.pool_limit) {
            auto worst = std::prev(pool.end());
            free_slots.push_back(std::get<2>(*worst));
            slots[std::get<2>(*worst)].prefix = {};
            pool.erase(worst);
            ++result.evictions;
        }
    };

    insert({SpinVector{}, m.offset()}, m.offset() + bounds.completion(0, h));
    bool exhausted = false;
    Eigen::VectorXd f(static_cast<Eigen::Index>(n)), child(static_cast<Eigen::Index>(n));
    for (;;) {
        if (pool.empty()) {
            exhausted = true;
            break;
        }
        const auto top = pool.begin();
        if (std::get<0>(*top) >= incumbent) {
            exhausted = true;
            break;
        }
        if (params.node_limit != 0 && result.expanded >= params.node_limit) break;
        if (params.time_limit > 0.0 && (result.expanded & 255) == 0 && clock.seconds() > params.time_limit) break;

        const std::size_t slot = std::get<2>(*top);
        pool.erase(top);
        Node node = std::move(slots[slot]);
        free_slots.push_back(slot);
        ++result.expanded;

        const std::size_t k = node.prefix.size();
        const Eigen::Index free = Eigen::Index(n - k);
        f.head(free) = h.tail(free);
        for (std::size_t i = 0; i < k; ++i) {
            f.head(free) += A.row(Eigen::Index(i)).tail(free).transpose() * double(node.prefix[i]);
        }
        for (Spin s : {Spin{-1}, Spin{1}}) {
            const double energy = node.prefix_energy + s * f(0);
            if (k + 1 == n) {
                if (energy < incumbent) {
                    incumbent = energy;
                    incumbent_state = node.prefix;
                    incumbent_state.push_back(s);
                }
                continue;
            }
            const Eigen::Index rest = free - 1;
            child.head(rest) = f.segment(1, rest) + A.row(Eigen::Index(k)).tail(rest).transpose() * double(s);
            const double bound = energy + bounds.completion(k + 1, child.head(rest));
            if (bound >= incumbent) continue;
            SpinVector prefix = node.prefix;
            prefix.push_back(s);
            insert({std::move(prefix), energy}, bound);
        }
    }
    if (!exhausted && !pool.empty()) {
        // Stopped early: finish the most promising open node greedily.
        const Node& node = slots[std::get<2>(*pool.begin())];
        SpinVector s = node.prefix;
        s.resize(n, Spin{1});
        std::vector<double> field(n);
        for (std::size_t j = node.prefix.size(); j < n; ++j) {
            double acc = m.h(j);
            for (const auto& nb : m.neighbors(j)) {
                if (nb.index < node.prefix.size()) acc += nb.value * s[nb.index];
            }
            field[j] = acc;
        }
        for (std::size_t j = node.prefix.size(); j < n; ++j) {
            s[j] = Spin(-sign_of(field[j]));
            for (const auto& nb : m.neighbors(j)) {
                if (nb.index > j) field[nb.index] += nb.value * s[j];
            }
        }
        const double energy = m.energy(s);
        if (energy < incumbent) {
            incumbent = energy;
            incumbent_state = std::move(s);
        }
    }
    result.hit_limit = !exhausted;
    result.optimal = exhausted && result.evictions == 0 && params.bound_kind == BoundKind::spd_admissible;
    if (!incumbent_state.empty()) {
        result.state.assign(n, Spin{1});
        for (std::size_t k = 0; k < n; ++k) result.state[order[k]] = incumbent_state[k];
        result.energy = model.energy(result.state);
    }
    result.wall_time = clock.seconds();
    return result;
}

}  // namespace qubokit
