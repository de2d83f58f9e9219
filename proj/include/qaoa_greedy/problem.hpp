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
 * MaxCut problem instances: graph ensembles, the Ising cost diagonal and an
 * exhaustive ground-truth solver.
 *
 * Bit k of a basis index z encodes qubit k (qubit 0 is the least-significant
 * bit); s_k(z) = +1 when that bit is 0 and -1 otherwise.
 */
#pragma once

#include "error.hpp"
#include "rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qaoa_greedy {

/// Largest qubit count accepted by the dense routines (2^24 amplitudes).
inline constexpr int kMaxQubits = 24;

inline constexpr int kRegularRetryBudget = 10'000;

enum class Ensemble {
    RRG3,   ///< random 3-regular, unit weights
    WRRG3,  ///< random 3-regular, weights uniform in [0, 1)
    ER,     ///< Erdos-Renyi G(n, p_E), unit weights
    Custom, ///< hand-built or imported graph
};

[[nodiscard]] inline std::string_view to_string(Ensemble e) {
    switch (e) {
    case Ensemble::RRG3:
        return "RRG3";
    case Ensemble::WRRG3:
        return "WRRG3";
    case Ensemble::ER:
        return "ER";
    case Ensemble::Custom:
        return "CUSTOM";
    }
    return "CUSTOM";
}

[[nodiscard]] inline Ensemble ensemble_from_string(std::string_view s) {
    std::string up(s);
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (up == "RRG3") {
        return Ensemble::RRG3;
    }
    if (up == "WRRG3" || up == "RWRG3") {
        return Ensemble::WRRG3;
    }
    if (up == "ER" || up == "RERG") {
        return Ensemble::ER;
    }
    if (up == "CUSTOM") {
        return Ensemble::Custom;
    }
    fail(ErrorKind::InvalidArgument, "unknown ensemble '" + std::string(s) + "'");
}

struct Edge {
    int u = 0;
    int v = 0;
    double w = 1.0;

    friend bool operator==(const Edge &, const Edge &) = default;
};

struct ProblemGraph {
    int n = 0;
    std::vector<Edge> edges;
    Ensemble ensemble = Ensemble::Custom;
    std::uint64_t seed = 0;
    std::optional<double> p_edge;

    [[nodiscard]] std::vector<int> degrees() const {
        std::vector<int> deg(static_cast<std::size_t>(n), 0);
        for (const auto &e : edges) {
            ++deg[static_cast<std::size_t>(e.u)];
            ++deg[static_cast<std::size_t>(e.v)];
        }
        return deg;
    }

    [[nodiscard]] bool unit_weights() const {
        return std::all_of(edges.begin(), edges.end(),
                           [](const Edge &e) { return e.w == 1.0; });
    }

    [[nodiscard]] bool integer_weights() const {
        return std::all_of(edges.begin(), edges.end(),
                           [](const Edge &e) { return e.w == std::round(e.w); });
    }

    friend bool operator==(const ProblemGraph &, const ProblemGraph &) = default;
};

/// Checks the structural invariants shared by all ensembles; throws on violation.
inline void validate(const ProblemGraph &g) {
    require(g.n >= 1, ErrorKind::InvalidArgument, "graph needs at least one vertex");
    std::vector<std::pair<int, int>> seen;
    seen.reserve(g.edges.size());
    for (const auto &e : g.edges) {
        require(e.u >= 0 && e.v < g.n && e.u < e.v, ErrorKind::InvalidArgument,
                "edge endpoints must satisfy 0 <= u < v < n");
        require(std::isfinite(e.w), ErrorKind::InvalidArgument, "edge weight must be finite");
        seen.emplace_back(e.u, e.v);
    }
    std::sort(seen.begin(), seen.end());
    require(std::adjacent_find(seen.begin(), seen.end()) == seen.end(),
            ErrorKind::InvalidArgument, "duplicate edge");
}

namespace detail {

/// Configuration model with rejection of self-loops and multi-edges.
inline std::optional<std::vector<Edge>> try_regular(int n, int degree, SplitMix64 &rng) {
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n * degree));
    for (int v = 0; v < n; ++v) {
        for (int k = 0; k < degree; ++k) {
            stubs.push_back(v);
        }
    }
    for (std::size_t i = stubs.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform_below(i));
        std::swap(stubs[i - 1], stubs[j]);
    }
    std::vector<Edge> edges;
    edges.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
        int u = stubs[i];
        int v = stubs[i + 1];
        if (u == v) {
            return std::nullopt;
        }
        if (u > v) {
            std::swap(u, v);
        }
        edges.push_back({u, v, 1.0});
    }
    std::sort(edges.begin(), edges.end(), [](const Edge &a, const Edge &b) {
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
            return std::nullopt;
        }
    }
    return edges;
}

} // namespace detail

/**
 * Draws one instance of `ensemble`. Deterministic in (ensemble, n, seed, p_edge).
 *
 * Regular ensembles use the configuration model with up to
 * kRegularRetryBudget rejected pairings. Weights of WRRG3 are drawn after the
 * topology, in sorted edge order.
 */
[[nodiscard]] inline ProblemGraph generate_graph(Ensemble ensemble, int n, std::uint64_t seed,
                                                 std::optional<double> p_edge = std::nullopt) {
    require(n >= 2, ErrorKind::InvalidArgument, "n must be at least 2");
    ProblemGraph g;
    g.n = n;
    g.ensemble = ensemble;
    g.seed = seed;
    SplitMix64 rng(seed);

    switch (ensemble) {
    case Ensemble::RRG3:
    case Ensemble::WRRG3: {
        constexpr int degree = 3;
        require((n * degree) % 2 == 0, ErrorKind::Infeasible,
                "3-regular graph needs n*3 even (n=" + std::to_string(n) + ")");
        require(n > degree, ErrorKind::Infeasible, "3-regular graph needs n >= 4");
        std::optional<std::vector<Edge>> edges;
        for (int attempt = 0; attempt < kRegularRetryBudget && !edges; ++attempt) {
            edges = detail::try_regular(n, degree, rng);
        }
        require(edges.has_value(), ErrorKind::GenerationFailed,
                "configuration model exceeded its retry budget");
        g.edges = std::move(*edges);
        if (ensemble == Ensemble::WRRG3) {
            for (auto &e : g.edges) {
                e.w = rng.uniform01();
            }
        }
        break;
    }
    case Ensemble::ER: {
        const double p = p_edge.value_or(0.5);
        require(p > 0.0 && p < 1.0, ErrorKind::InvalidArgument, "p_E must lie in (0, 1)");
        g.p_edge = p;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                if (rng.uniform01() < p) {
                    g.edges.push_back({u, v, 1.0});
                }
            }
        }
        break;
    }
    case Ensemble::Custom:
        fail(ErrorKind::InvalidArgument, "custom graphs are built, not generated");
    }
    return g;
}

[[nodiscard]] inline bool is_connected(const ProblemGraph &g) {
    if (g.n <= 1) {
        return true;
    }
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.n));
    for (const auto &e : g.edges) {
        adj[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (seen[static_cast<std::size_t>(w)] == 0) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == g.n;
}

/// Sorted spectrum of the weighted adjacency matrix followed by the sorted
/// weighted degrees. Equal for isomorphic graphs; used as a collision check.
[[nodiscard]] inline std::vector<double> spectral_signature(const ProblemGraph &g) {
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(g.n, g.n);
    std::vector<double> wdeg(static_cast<std::size_t>(g.n), 0.0);
    for (const auto &e : g.edges) {
        adj(e.u, e.v) = e.w;
        adj(e.v, e.u) = e.w;
        wdeg[static_cast<std::size_t>(e.u)] += e.w;
        wdeg[static_cast<std::size_t>(e.v)] += e.w;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adj, Eigen::EigenvaluesOnly);
    std::vector<double> sig(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(wdeg.begin(), wdeg.end());
    sig.insert(sig.end(), wdeg.begin(), wdeg.end());
    return sig;
}

/**
 * Draws `count` instances with per-instance seeds derive_seed(base_seed, k),
 * skipping disconnected graphs and graphs whose spectral signature collides
 * with an earlier pick. Full isomorphism testing is not attempted.
 */
[[nodiscard]] inline std::vector<ProblemGraph>
generate_ensemble(Ensemble ensemble, int n, int count, std::uint64_t base_seed,
                  std::optional<double> p_edge = std::nullopt, bool require_connected = true) {
    require(count >= 0, ErrorKind::InvalidArgument, "count must be non-negative");
    std::vector<ProblemGraph> out;
    std::vector<std::vector<double>> signatures;
    const std::uint64_t max_attempts = 1000ULL * static_cast<std::uint64_t>(count) + 1000ULL;
    for (std::uint64_t k = 0; static_cast<int>(out.size()) < count; ++k) {
        require(k < max_attempts, ErrorKind::GenerationFailed,
                "could not find " + std::to_string(count) + " distinct instances");
        ProblemGraph g = generate_graph(ensemble, n, derive_seed(base_seed, k), p_edge);
        if (require_connected && !is_connected(g)) {
            continue;
        }
        auto sig = spectral_signature(g);
        const bool collides =
            std::any_of(signatures.begin(), signatures.end(), [&](const auto &other) {
                for (std::size_t i = 0; i < sig.size(); ++i) {
                    if (std::abs(sig[i] - other[i]) > 1e-8) {
                        return false;
                    }
                }
                return true;
            });
        if (collides) {
            continue;
        }
        signatures.push_back(std::move(sig));
        out.push_back(std::move(g));
    }
    return out;
}

/// Diagonal of H_C = sum_{(u,v,w)} w Z_u Z_v in the computational basis.
struct CostDiagonal {
    int n = 0;
    std::vector<double> values;
    double c_min = 0.0;
    double c_max = 0.0;
};

[[nodiscard]] inline CostDiagonal cost_diagonal(const ProblemGraph &g) {
    validate(g);
    require(g.n <= kMaxQubits, ErrorKind::Capacity,
            "n=" + std::to_string(g.n) + " exceeds the dense limit of " +
                std::to_string(kMaxQubits) + " qubits");
    const std::size_t dim = std::size_t{1} << static_cast<unsigned>(g.n);
    CostDiagonal diag;
    diag.n = g.n;
    diag.values.assign(dim, 0.0);
    for (std::size_t z = 0; z < dim; ++z) {
        double acc = 0.0;
        for (const auto &e : g.edges) {
            const auto differ = ((z >> static_cast<unsigned>(e.u)) ^ (z >> static_cast<unsigned>(e.v))) & 1U;
            acc += differ != 0U ? -e.w : e.w;
        }
        diag.values[z] = acc;
    }
    const auto [lo, hi] = std::minmax_element(diag.values.begin(), diag.values.end());
    diag.c_min = *lo;
    diag.c_max = *hi;
    return diag;
}

struct MaxCutSolution {
    double c_min = 0.0;
    std::vector<std::uint64_t> argmin; ///< ascending basis indices
};

[[nodiscard]] inline MaxCutSolution maxcut_optimum(const ProblemGraph &g) {
    const CostDiagonal diag = cost_diagonal(g);
    MaxCutSolution sol;
    sol.c_min = diag.c_min;
    for (std::size_t z = 0; z < diag.values.size(); ++z) {
        if (diag.values[z] == diag.c_min) {
            sol.argmin.push_back(z);
        }
    }
    return sol;
}

/// Symmetries of the QAOA landscape available for a given cost function.
enum class LandscapeSymmetry {
    Generic,        ///< beta period pi/2 and the global sign flip only
    IntegerWeights, ///< additionally gamma period pi
    OddDegree,      ///< unit weights, every degree odd: full fundamental region
};

[[nodiscard]] inline LandscapeSymmetry landscape_symmetry(const ProblemGraph &g) {
    if (!g.integer_weights()) {
        return LandscapeSymmetry::Generic;
    }
    if (g.unit_weights() && !g.edges.empty()) {
        const auto deg = g.degrees();
        if (std::all_of(deg.begin(), deg.end(), [](int d) { return d % 2 == 1; })) {
            return LandscapeSymmetry::OddDegree;
        }
    }
    return LandscapeSymmetry::IntegerWeights;
}

} // namespace qaoa_greedy
