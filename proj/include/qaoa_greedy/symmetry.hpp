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
 * Energy-preserving symmetries of the QAOA landscape and the map into the
 * fundamental region.
 *
 *  (i)   beta_l -> beta_l + pi, and gamma_l -> gamma_l + pi for integer weights
 *  (ii)  beta_l -> beta_l + pi/2 (global bit flip, any graph)
 *  (iii) (beta, gamma) -> (-beta, -gamma)
 *  (iv)  beta_l -> -beta_l with gamma_l, gamma_{l+1} shifted by pi/2
 *        (unit weights, all degrees odd)
 *  (iv') beta_j -> -beta_j for all j >= k, gamma_k -> gamma_k +- pi/2
 *
 * (iv') is (iv) composed over l = k..p; the pi shifts it leaves on
 * gamma_{k+1..p} are removed by (i).
 */
#pragma once

#include "angles.hpp"
#include "problem.hpp"

#include <cmath>
#include <numbers>

namespace qaoa_greedy {

namespace detail {

/// x mapped into [lo, lo + period).
[[nodiscard]] inline double wrap(double x, double period, double lo) {
    double y = x - period * std::floor((x - lo) / period);
    if (y >= lo + period) {
        y -= period;
    }
    return y;
}

inline void negate_all(AngleVector &a) {
    for (auto &b : a.beta) {
        b = -b;
    }
    for (auto &g : a.gamma) {
        g = -g;
    }
}

} // namespace detail

inline void apply_beta_half_period(AngleVector &a, std::size_t l) {
    a.beta.at(l) += std::numbers::pi / 2;
}

inline void apply_tail_flip(AngleVector &a, std::size_t k, double gamma_shift_sign = 1.0) {
    for (std::size_t j = k; j < a.depth(); ++j) {
        a.beta[j] = -a.beta[j];
    }
    a.gamma.at(k) += gamma_shift_sign * std::numbers::pi / 2;
}

/**
 * Maps `a` to its representative in the fundamental region of `symmetry`:
 *
 *   OddDegree:      beta_l in [-pi/4, pi/4), gamma_1 in (0, pi/4], gamma_j in [-pi/4, pi/4]
 *   IntegerWeights: beta_l in [-pi/4, pi/4), gamma in [-pi/2, pi/2] with gamma_1 >= 0
 *   Generic:        beta_l in [-pi/4, pi/4), first non-zero gamma positive
 *
 * Energy-preserving and idempotent (away from measure-zero boundaries).
 */
[[nodiscard]] inline AngleVector fold_to_fundamental(AngleVector a, LandscapeSymmetry symmetry) {
    constexpr double pi = std::numbers::pi;
    const std::size_t p = a.depth();
    for (auto &b : a.beta) {
        b = detail::wrap(b, pi / 2, -pi / 4);
    }
    if (symmetry != LandscapeSymmetry::Generic) {
        for (auto &g : a.gamma) {
            g = detail::wrap(g, pi, -pi / 2);
        }
    }
    if (symmetry == LandscapeSymmetry::OddDegree) {
        for (std::size_t k = 0; k < p; ++k) {
            if (a.gamma[k] > pi / 4) {
                apply_tail_flip(a, k, -1.0);
            } else if (a.gamma[k] < -pi / 4) {
                apply_tail_flip(a, k, +1.0);
            }
        }
    }
    // Sign convention: first non-zero gamma (else beta) positive.
    double key = 0.0;
    for (double g : a.gamma) {
        if (g != 0.0) {
            key = g;
            break;
        }
    }
    if (key == 0.0) {
        for (double b : a.beta) {
            if (b != 0.0) {
                key = b;
                break;
            }
        }
    }
    if (key < 0.0) {
        detail::negate_all(a);
    }
    for (auto &b : a.beta) {
        b = detail::wrap(b, pi / 2, -pi / 4);
    }
    return a;
}

/// Convenience overload: `odd_regular` selects the full (iv') folding,
/// otherwise the integer-weight symmetries (i)-(iii) are used.
[[nodiscard]] inline AngleVector fold_to_fundamental(const AngleVector &a, bool odd_regular) {
    return fold_to_fundamental(a, odd_regular ? LandscapeSymmetry::OddDegree
                                              : LandscapeSymmetry::IntegerWeights);
}

[[nodiscard]] inline bool in_fundamental_region(const AngleVector &a, LandscapeSymmetry symmetry,
                                                double slack = 1e-12) {
    constexpr double pi = std::numbers::pi;
    for (double b : a.beta) {
        if (b < -pi / 4 - slack || b > pi / 4 + slack) {
            return false;
        }
    }
    if (symmetry == LandscapeSymmetry::Generic || a.depth() == 0) {
        return true;
    }
    const double bound = symmetry == LandscapeSymmetry::OddDegree ? pi / 4 : pi / 2;
    for (std::size_t j = 0; j < a.depth(); ++j) {
        if (std::abs(a.gamma[j]) > bound + slack) {
            return false;
        }
    }
    return a.gamma[0] >= -slack;
}

} // namespace qaoa_greedy
