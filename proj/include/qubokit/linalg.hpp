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
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "qubokit/model.hpp"
#include "qubokit/rng.hpp"

namespace qubokit {

/// Symmetric coupling matrix with A_ij = A_ji = J_ij and zero diagonal, so
/// that sum_{i<j} J_ij s_i s_j = s^T A s / 2.
inline Eigen::MatrixXd coupling_matrix(const IsingModel& m) {
    const auto n = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (const auto& c : m.couplings()) {
        A(c.i, c.j) += c.value;
        A(c.j, c.i) += c.value;
    }
    return A;
}

enum class Extreme { min, max };

struct EigOptions {
    std::size_t max_iterations = 300;
    double tolerance = 1e-8;
    std::size_t dense_fallback_limit = 512;
    std::uint64_t seed = 0x5eed;
};

/// How eig_extreme produced its value.
enum class EigMethod { lanczos, dense, gershgorin };

struct EigEstimate {
    double value;
    EigMethod method;
    std::size_t iterations;
};

namespace detail {

using MatVec = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

inline double gershgorin(const std::vector<double>& diag, const std::vector<double>& radius, Extreme which) {
    double out = which == Extreme::min ? std::numeric_limits<double>::infinity()
                                       : -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < diag.size(); ++i) {
        out = which == Extreme::min ? std::min(out, diag[i] - radius[i]) : std::max(out, diag[i] + radius[i]);
    }
    return diag.empty() ? 0.0 : out;
}

// Lanczos with full reorthogonalization. Returns the extreme Ritz value moved
// outward by its residual norm, so a `min` result sits at or below the
// eigenvalue it converged to.
inline bool lanczos(std::size_t n, const MatVec& apply, Extreme which, const EigOptions& opt, double scale,
                    EigEstimate& out) {
    const std::size_t kmax = std::min(n, opt.max_iterations);
    std::vector<Eigen::VectorXd> basis;
    basis.reserve(kmax);
    std::vector<double> alpha, beta;
    Eigen::VectorXd v(static_cast<Eigen::Index>(n));
    Rng rng(opt.seed);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.uniform(-1.0, 1.0);
    v.normalize();
    Eigen::VectorXd w(v.size());
    const double tiny = 1e-14 * std::max(1.0, scale);
    for (std::size_t k = 0; k < kmax; ++k) {
        basis.push_back(v);
        apply(v, w);
        const double a = v.dot(w);
        alpha.push_back(a);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : basis) w -= q.dot(w) * q;
        }
        const double b = w.norm();
        const std::size_t m = alpha.size();
        const bool exhausted = b <= tiny || m == n;
        if (!exhausted && m % 4 != 0 && m != kmax) {
            beta.push_back(b);
            v = w / b;
            continue;
        }
        Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), Eigen::Index(m));
        Eigen::VectorXd sub(Eigen::Index(m > 0 ? m - 1 : 0));
        for (std::size_t i = 0; i + 1 < m; ++i) sub(Eigen::Index(i)) = beta[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        const Eigen::Index pick = which == Extreme::min ? 0 : Eigen::Index(m) - 1;
        const double theta = es.eigenvalues()(pick);
        const double residual = b * std::abs(es.eigenvectors()(Eigen::Index(m) - 1, pick));
        if (exhausted || residual <= opt.tolerance * std::max(1.0, std::abs(theta))) {
            out.value = which == Extreme::min ? theta - residual : theta + residual;
            out.method = EigMethod::lanczos;
            out.iterations = m;
            return true;
        }
        beta.push_back(b);
        v = w / b;
    }
    return false;
}

}  // namespace detail

/// Extreme eigenvalue of a symmetric operator given through its action.
/// `diag` and `radius` (row sums of off-diagonal magnitudes) feed the
/// Gershgorin fallback. Never throws on non-convergence.
inline EigEstimate eig_extreme(std::size_t n, const detail::MatVec& apply, const std::vector<double>& diag,
                               const std::vector<double>& radius, Extreme which, const EigOptions& opt = {},
                               const std::function<Eigen::MatrixXd()>& dense = {}) {
    if (n == 0) return {0.0, EigMethod::dense, 0};
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(diag[i]) + radius[i]);
    EigEstimate est{};
    if (detail::lanczos(n, apply, which, opt, scale, est)) return est;
    if (n <= opt.dense_fallback_limit && dense) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(), Eigen::EigenvaluesOnly);
        if (es.info() == Eigen::Success) {
            const auto& ev = es.eigenvalues();
            return {which == Extreme::min ? ev(0) : ev(ev.size() - 1), EigMethod::dense, 0};
        }
    }
    return {detail::gershgorin(diag, radius, which), EigMethod::gershgorin, 0};
}

inline EigEstimate eig_extreme(const Eigen::MatrixXd& A, Extreme which, const EigOptions& opt = {}) {
    const auto n = std::size_t(A.rows());
    std::vector<double> diag(n), radius(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = A(Eigen::Index(i), Eigen::Index(i));
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) radius[i] += std::abs(A(Eigen::Index(i), Eigen::Index(j)));
        }
    }
    return eig_extreme(
        n, [&A](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y.noalias() = A * x; },
        diag, radius, which, opt, [&A] { return A; });
}

/// Sparse path over the model adjacency (the coupling matrix never
/// materializes unless the dense fallback is taken).
inline EigEstimate eig_extreme(const IsingModel& m, Extreme which, const EigOptions& opt = {}) {
    const std::size_t n = m.size();
    std::vector<double> diag(n, 0.0), radius(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& nb : m.neighbors(i)) radius[i] += std::abs(nb.value);
    }
    return eig_extreme(
        n,
        [&m](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
            for (std::size_t i = 0; i < m.size(); ++i) {
                double acc = 0.0;
                for (const auto& nb : m.neighbors(i)) acc += nb.value * x(Eigen::Index(nb.index));
                y(Eigen::Index(i)) = acc;
            }
        },
        diag, radius, which, opt, [&m] { return coupling_matrix(m); });
}

}  // namespace qubokit
