// Copyright 2026 The qaoa-greedy Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Transition states built from a depth-p minimum by inserting identity gates,
 * their index-1 directions and the descent to depth-(p+1) minima.
 *
 * Positions are 1-based. A zero beta at position j and a zero gamma at
 * position i leave the state unchanged when i == j (symmetric, the inserted
 * layer is the identity) or when i == j + 1 (non-symmetric, the zero mixer of
 * layer j and the zero phase of layer j+1 sit next to each other). Together
 * there are 2p+1 such insertions.
 */
#pragma once

#include "angles.hpp"
#include "error.hpp"
#include "optimizer.hpp"
#include "simulator.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace qaoa_greedy {

enum class TsKind { Symmetric, NonSymmetric };

[[nodiscard]] inline std::string_view to_string(TsKind k) {
    return k == TsKind::Symmetric ? "SYMMETRIC" : "NONSYMMETRIC";
}

struct TransitionStateRecord {
    AngleVector angles; ///< depth p+1
    std::size_t parent_id = 0;
    int insert_beta = 1;  ///< j, 1-based
    int insert_gamma = 1; ///< i, 1-based
    TsKind kind = TsKind::Symmetric;
    double energy = 0.0;
};

/// Tolerance on |E(TS) - E(parent)|.
inline constexpr double kTsEnergyTolerance = 1e-12;

[[nodiscard]] inline bool ts_admissible(int p, int insert_gamma, int insert_beta) {
    if (p < 1 || insert_beta < 1 || insert_beta > p + 1) {
        return false;
    }
    return insert_gamma == insert_beta || (insert_gamma == insert_beta + 1 && insert_beta <= p);
}

/// Inserts zeros without any checks on the parent; used by the interpolation
/// identity as well as by construct_ts.
[[nodiscard]] inline AngleVector insert_zeros(const AngleVector &a, int insert_gamma, int insert_beta) {
    require(ts_admissible(static_cast<int>(a.depth()), insert_gamma, insert_beta),
            ErrorKind::ContractViolation, "inadmissible zero-insertion positions");
    AngleVector out = a;
    out.beta.insert(out.beta.begin() + (insert_beta - 1), 0.0);
    out.gamma.insert(out.gamma.begin() + (insert_gamma - 1), 0.0);
    return out;
}

/// Removes the inserted zeros again.
[[nodiscard]] inline AngleVector remove_insertion(const TransitionStateRecord &ts) {
    AngleVector out = ts.angles;
    out.beta.erase(out.beta.begin() + (ts.insert_beta - 1));
    out.gamma.erase(out.gamma.begin() + (ts.insert_gamma - 1));
    return out;
}

/**
 * Builds the transition state with a zero gamma at `insert_gamma` and a zero
 * beta at `insert_beta` from a classified minimum.
 */
[[nodiscard]] inline TransitionStateRecord construct_ts(const Simulator &sim, const StationaryPoint &parent,
                                                        int insert_gamma, int insert_beta,
                                                        std::size_t parent_id = 0) {
    require(parent.classification == Classification::Minimum, ErrorKind::ContractViolation,
            "transition states are built from classified minima only");
    TransitionStateRecord ts;
    ts.angles = insert_zeros(parent.angles, insert_gamma, insert_beta);
    ts.parent_id = parent_id;
    ts.insert_beta = insert_beta;
    ts.insert_gamma = insert_gamma;
    ts.kind = insert_beta == insert_gamma ? TsKind::Symmetric : TsKind::NonSymmetric;
    ts.energy = sim.energy(ts.angles);
    require(std::abs(ts.energy - parent.energy) <= kTsEnergyTolerance * std::max(1.0, std::abs(parent.energy)),
            ErrorKind::ContractViolation, "transition state energy differs from its parent");
    return ts;
}

/// The p+1 symmetric transition states, followed by the p non-symmetric ones
/// when `include_nonsymmetric` is set.
[[nodiscard]] inline std::vector<TransitionStateRecord>
enumerate_ts(const Simulator &sim, const StationaryPoint &parent, bool include_nonsymmetric = true,
             std::size_t parent_id = 0) {
    const int p = static_cast<int>(parent.angles.depth());
    std::vector<TransitionStateRecord> out;
    out.reserve(static_cast<std::size_t>(2 * p + 1));
    for (int l = 1; l <= p + 1; ++l) {
        out.push_back(construct_ts(sim, parent, l, l, parent_id));
    }
    if (include_nonsymmetric) {
        for (int l = 1; l <= p; ++l) {
            out.push_back(construct_ts(sim, parent, l + 1, l, parent_id));
        }
    }
    return out;
}

namespace detail {

/// Unit vector with its largest-magnitude component made positive.
inline void canonical_sign(Eigen::VectorXd &v) {
    v.normalize();
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0.0) {
        v = -v;
    }
}

} // namespace detail

/// Eigenvector of the single negative Hessian eigenvalue.
[[nodiscard]] inline std::vector<double> index1_direction(const HessianMatrix &h) {
    require(h.inertia.negative == 1 && h.inertia.zero == 0, ErrorKind::Classification,
            "Hessian is not that of a regular index-1 saddle");
    Eigen::VectorXd v = h.eigenvectors.col(0);
    detail::canonical_sign(v);
    return {v.data(), v.data() + v.size()};
}

/// Flat indices of the inserted angles and of the gates applied directly
/// before and after them.
[[nodiscard]] inline std::vector<std::size_t> ts_support(const TransitionStateRecord &ts) {
    const auto q = static_cast<int>(ts.angles.depth());
    const auto beta_idx = [](int l) { return static_cast<std::size_t>(l - 1); };
    const auto gamma_idx = [q](int l) { return static_cast<std::size_t>(q + l - 1); };
    std::vector<std::size_t> out{beta_idx(ts.insert_beta), gamma_idx(ts.insert_gamma)};
    if (ts.kind == TsKind::Symmetric) {
        // ... B_{l-1} [C_l B_l] C_{l+1} ...
        const int l = ts.insert_beta;
        if (l > 1) {
            out.push_back(beta_idx(l - 1));
        }
        if (l < q) {
            out.push_back(gamma_idx(l + 1));
        }
    } else {
        // ... C_l [B_l C_{l+1}] B_{l+1} ...
        const int l = ts.insert_beta;
        out.push_back(gamma_idx(l));
        out.push_back(beta_idx(l + 1));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/**
 * Cheap guess of the index-1 direction: the lowest-curvature direction of the
 * Hessian restricted to ts_support (at most 4x4, from finite differences of
 * the gradient along those coordinates only). Zero outside the support.
 */
[[nodiscard]] inline std::vector<double> approx_index1_direction(const Simulator &sim,
                                                                 const TransitionStateRecord &ts,
                                                                 double h_fd = kDefaultHessianStep) {
    const auto support = ts_support(ts);
    const auto k = static_cast<Eigen::Index>(support.size());
    Eigen::MatrixXd sub(k, k);
    std::vector<double> gp(ts.angles.size());
    std::vector<double> gm(ts.angles.size());
    for (Eigen::Index c = 0; c < k; ++c) {
        AngleVector plus = ts.angles;
        AngleVector minus = ts.angles;
        plus[support[static_cast<std::size_t>(c)]] += h_fd;
        minus[support[static_cast<std::size_t>(c)]] -= h_fd;
        sim.energy_and_gradient(plus, gp);
        sim.energy_and_gradient(minus, gm);
        for (Eigen::Index r = 0; r < k; ++r) {
            const std::size_t i = support[static_cast<std::size_t>(r)];
            sub(r, c) = (gp[i] - gm[i]) / (2.0 * h_fd);
        }
    }
    const HessianMatrix h = make_hessian(std::move(sub));
    Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ts.angles.size()));
    for (Eigen::Index r = 0; r < k; ++r) {
        full(static_cast<Eigen::Index>(support[static_cast<std::size_t>(r)])) = h.eigenvectors(r, 0);
    }
    detail::canonical_sign(full);
    return {full.data(), full.data() + full.size()};
}

inline constexpr double kDefaultDescentOffset = 1e-2;

/// Minimizes from ts.angles + eps v and ts.angles - eps v.
[[nodiscard]] inline std::pair<StationaryPoint, StationaryPoint>
descend_from_ts(const Simulator &sim, const TransitionStateRecord &ts, std::span<const double> v,
                double eps = kDefaultDescentOffset, const OptimizerOptions &opts = {}) {
    require(eps > 0.0, ErrorKind::InvalidArgument, "descent offset must be positive");
    require(v.size() == ts.angles.size(), ErrorKind::DimensionMismatch, "direction has wrong length");
    double norm2 = 0.0;
    for (double x : v) {
        norm2 += x * x;
    }
    require(std::abs(std::sqrt(norm2) - 1.0) < 1e-8, ErrorKind::InvalidArgument,
            "descent direction must be normalized");
    OptimizerOptions classified = opts;
    classified.classify = true;
    StationaryPoint plus =
        local_minimize(sim, displaced(ts.angles, v, eps), classified, Provenance::TsDescentPlus);
    StationaryPoint minus =
        local_minimize(sim, displaced(ts.angles, v, -eps), classified, Provenance::TsDescentMinus);
    return {std::move(plus), std::move(minus)};
}

/// Total variation of the angle pattern; 0 for p < 2.
[[nodiscard]] inline double smoothness_score(const AngleVector &a) {
    double tv = 0.0;
    for (std::size_t l = 1; l < a.depth(); ++l) {
        tv += std::abs(a.beta[l] - a.beta[l - 1]) + std::abs(a.gamma[l] - a.gamma[l - 1]);
    }
    return tv;
}

} // namespace qaoa_greedy
