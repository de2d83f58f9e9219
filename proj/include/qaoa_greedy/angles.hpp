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
#pragma once

#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace qaoa_greedy {

/**
 * Depth-p QAOA parameters. Flat layout everywhere (gradients, Hessians,
 * JSON) is [beta_1..beta_p, gamma_1..gamma_p].
 */
struct AngleVector {
    std::vector<double> beta;
    std::vector<double> gamma;

    AngleVector() = default;
    AngleVector(std::vector<double> b, std::vector<double> g)
        : beta(std::move(b)), gamma(std::move(g)) {
        validate();
    }

    [[nodiscard]] static AngleVector zeros(std::size_t p) {
        return {std::vector<double>(p, 0.0), std::vector<double>(p, 0.0)};
    }

    [[nodiscard]] static AngleVector from_flat(std::span<const double> flat) {
        require(flat.size() % 2 == 0, ErrorKind::DimensionMismatch,
                "flat angle vector must have even length");
        const std::size_t p = flat.size() / 2;
        return {std::vector<double>(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(p)),
                std::vector<double>(flat.begin() + static_cast<std::ptrdiff_t>(p), flat.end())};
    }

    [[nodiscard]] std::size_t depth() const noexcept { return beta.size(); }
    [[nodiscard]] std::size_t size() const noexcept { return 2 * beta.size(); }

    [[nodiscard]] std::vector<double> flat() const {
        std::vector<double> out(beta);
        out.insert(out.end(), gamma.begin(), gamma.end());
        return out;
    }

    /// Flat-index accessor.
    [[nodiscard]] double &operator[](std::size_t i) {
        return i < beta.size() ? beta[i] : gamma[i - beta.size()];
    }
    [[nodiscard]] double operator[](std::size_t i) const {
        return i < beta.size() ? beta[i] : gamma[i - beta.size()];
    }

    void validate() const {
        require(beta.size() == gamma.size(), ErrorKind::DimensionMismatch,
                "beta and gamma must have equal length");
        const auto finite = [](double x) { return std::isfinite(x); };
        require(std::all_of(beta.begin(), beta.end(), finite) &&
                    std::all_of(gamma.begin(), gamma.end(), finite),
                ErrorKind::InvalidArgument, "angles must be finite");
    }

    friend bool operator==(const AngleVector &, const AngleVector &) = default;
};

/// a + t * dir, with dir in flat layout.
[[nodiscard]] inline AngleVector displaced(const AngleVector &a, std::span<const double> dir,
                                           double t) {
    require(dir.size() == a.size(), ErrorKind::DimensionMismatch,
            "displacement has wrong dimension");
    AngleVector out = a;
    for (std::size_t i = 0; i < dir.size(); ++i) {
        out[i] += t * dir[i];
    }
    return out;
}

[[nodiscard]] inline double max_abs_difference(const AngleVector &a, const AngleVector &b) {
    require(a.size() == b.size(), ErrorKind::DimensionMismatch, "depth mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

} // namespace qaoa_greedy
