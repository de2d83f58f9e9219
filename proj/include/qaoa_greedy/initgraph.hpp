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
 * The initialization graph: deduplicated minima per depth, linked by the
 * transition-state descents that produced them.
 */
#pragma once

#include "angles.hpp"
#include "error.hpp"
#include "landscape.hpp"
#include "optimizer.hpp"
#include "parallel.hpp"
#include "simulator.hpp"
#include "strategies.hpp"
#include "symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qaoa_greedy {

inline constexpr double kDefaultDedupTolerance = 1e-5;
inline constexpr int kDefaultExpandCap = 50;

/**
 * Equivalence under the landscape symmetries: fold both points, then require
 * max-norm angle distance < tol and |dE| < 10 tol.
 */
[[nodiscard]] inline bool same_minimum(const StationaryPoint &a, const StationaryPoint &b,
                                       LandscapeSymmetry symmetry, double tol) {
    if (a.angles.depth() != b.angles.depth() || std::abs(a.energy - b.energy) >= 10.0 * tol) {
        return false;
    }
    return max_abs_difference(fold_to_fundamental(a.angles, symmetry),
                              fold_to_fundamental(b.angles, symmetry)) < tol;
}

/// Result of dedup: representatives (folded, lowest energy first) and, for
/// every input, the index of its representative.
struct DedupResult {
    std::vector<StationaryPoint> representatives;
    std::vector<std::size_t> assignment;
};

[[nodiscard]] inline DedupResult dedup_minima_indexed(const std::vector<StationaryPoint> &points,
                                                      LandscapeSymmetry symmetry,
                                                      double tol = kDefaultDedupTolerance) {
    require(tol > 0.0, ErrorKind::InvalidArgument, "dedup tolerance must be positive");
    std::vector<StationaryPoint> foldedpts;
    foldedpts.reserve(points.size());
    for (const auto &pt : points) {
        require(pt.angles.depth() == points.front().angles.depth(), ErrorKind::DimensionMismatch,
                "dedup needs points of equal depth");
        foldedpts.push_back(folded(pt, symmetry));
    }
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return better_point(foldedpts[i], foldedpts[j]); });
    DedupResult out;
    out.assignment.assign(points.size(), 0);
    for (std::size_t i : order) {
        std::optional<std::size_t> match;
        for (std::size_t r = 0; r < out.representatives.size(); ++r) {
            if (same_minimum(foldedpts[i], out.representatives[r], symmetry, tol)) {
                match = r;
                break;
            }
        }
        if (!match) {
            match = out.representatives.size();
            out.representatives.push_back(foldedpts[i]);
        }
        out.assignment[i] = *match;
    }
    return out;
}

/// Representatives of the distinct minima in `points`; idempotent, and the
/// lowest-energy point always survives.
[[nodiscard]] inline std::vector<StationaryPoint> dedup_minima(const std::vector<StationaryPoint> &points,
                                                               LandscapeSymmetry symmetry,
                                                               double tol = kDefaultDedupTolerance) {
    return dedup_minima_indexed(points, symmetry, tol).representatives;
}

struct InitNode {
    std::size_t id = 0;
    int p = 0;
    AngleVector angles;       ///< folded
    AngleVector continuation; ///< unfolded angles the node was reached with
    double energy = 0.0;
    double ratio = 0.0;
    double smoothness = 0.0;
    double grad_norm = 0.0;
    std::optional<Inertia> inertia;
    bool expanded = false;

    friend bool operator==(const InitNode &, const InitNode &) = default;
};

struct InitEdge {
    std::size_t parent = 0;
    std::size_t child = 0;
    int insert_beta = 1;
    int insert_gamma = 1;
    int sign = +1;

    friend bool operator==(const InitEdge &, const InitEdge &) = default;
};

struct InitGraphOptions {
    double dedup_tol = kDefaultDedupTolerance;
    int expand_cap = kDefaultExpandCap; ///< lowest-energy nodes expanded per level
    bool full_expansion = false;        ///< ignore expand_cap
    StrategyOptions strategy;           ///< eps, optimizer, grid resolution, TS options
};

struct InitGraph {
    std::vector<InitNode> nodes; ///< index == id
    std::vector<InitEdge> edges;
    std::map<int, std::vector<std::size_t>> levels; ///< ids sorted by energy
    InitGraphOptions options;
    int singular_ts = 0;
    int failed_branches = 0;

    [[nodiscard]] std::vector<int> level_counts() const {
        std::vector<int> out;
        for (const auto &[p, ids] : levels) {
            out.push_back(static_cast<int>(ids.size()));
        }
        return out;
    }

    friend bool operator==(const InitGraph &a, const InitGraph &b) {
        return a.nodes == b.nodes && a.edges == b.edges && a.levels == b.levels &&
               a.singular_ts == b.singular_ts && a.failed_branches == b.failed_branches;
    }
};

/// 2^{p-1} p!, the count of minima if every descent found a new one.
[[nodiscard]] inline double naive_minima_bound(int p) {
    double f = 1.0;
    for (int k = 2; k <= p; ++k) {
        f *= k;
    }
    return std::ldexp(f, p - 1);
}

/**
 * Expands level by level from the grid-search minimum. Each expanded node
 * spawns its symmetric transition states (non-symmetric too if enabled in the
 * strategy options); both descents of every regular TS become candidate
 * children, which are deduplicated across the whole level.
 */
[[nodiscard]] inline InitGraph build_init_graph(const Simulator &sim, int p_max, const InitGraphOptions &opts = {}) {
    require(p_max >= 1, ErrorKind::InvalidArgument, "p_max must be at least 1");
    require(opts.dedup_tol > 0.0, ErrorKind::InvalidArgument, "dedup tolerance must be positive");
    require(opts.full_expansion || opts.expand_cap >= 1, ErrorKind::InvalidArgument, "expand cap must be positive");
    const LandscapeSymmetry sym = sim.symmetry();
    const double c_min = sim.cost().c_min;
    OptimizerOptions classified = opts.strategy.optimizer;
    classified.classify = true;

    InitGraph gr;
    gr.options = opts;
    const auto add_node = [&](const StationaryPoint &raw) {
        InitNode node;
        node.id = gr.nodes.size();
        node.p = static_cast<int>(raw.angles.depth());
        node.angles = fold_to_fundamental(raw.angles, sym);
        node.continuation = raw.angles;
        node.energy = raw.energy;
        node.ratio = approximation_ratio(raw.energy, c_min);
        node.smoothness = smoothness_score(raw.angles);
        node.grad_norm = raw.grad_norm;
        node.inertia = raw.inertia;
        gr.nodes.push_back(node);
        gr.levels[node.p].push_back(node.id);
        return node.id;
    };
    const auto as_point = [](const InitNode &n) {
        StationaryPoint pt;
        pt.angles = n.continuation;
        pt.energy = n.energy;
        pt.grad_norm = n.grad_norm;
        pt.inertia = n.inertia;
        pt.classification = Classification::Minimum;
        pt.converged = true;
        return pt;
    };

    add_node(grid_search_p1(sim, opts.strategy.grid_resolution, classified));

    for (int p = 1; p < p_max; ++p) {
        std::vector<std::size_t> parents = gr.levels[p];
        if (!opts.full_expansion && parents.size() > static_cast<std::size_t>(opts.expand_cap)) {
            parents.resize(static_cast<std::size_t>(opts.expand_cap));
        }
        const auto expansions = parallel_map<Expansion>(parents.size(), [&](std::size_t k) {
            return expand_minimum(sim, as_point(gr.nodes[parents[k]]), opts.strategy, parents[k]);
        });

        std::vector<StationaryPoint> cands;
        std::vector<InitEdge> pending;
        for (std::size_t k = 0; k < parents.size(); ++k) {
            const Expansion &ex = expansions[k];
            gr.nodes[parents[k]].expanded = true;
            gr.singular_ts += ex.singular_ts;
            gr.failed_branches += ex.failed_branches;
            for (const auto &b : ex.branches) {
                const auto &ts = ex.ts[b.ts_index];
                pending.push_back({parents[k], 0, ts.insert_beta, ts.insert_gamma, b.sign});
                cands.push_back(b.point);
            }
        }
        if (cands.empty()) {
            break;
        }
        // Representatives keep their unfolded continuation from the best member.
        const DedupResult dd = dedup_minima_indexed(cands, sym, opts.dedup_tol);
        std::vector<std::optional<std::size_t>> source(dd.representatives.size());
        for (std::size_t i = 0; i < cands.size(); ++i) {
            auto &s = source[dd.assignment[i]];
            if (!s || better_point(cands[i], cands[*s])) {
                s = i;
            }
        }
        std::vector<std::size_t> ids(dd.representatives.size());
        for (std::size_t r = 0; r < dd.representatives.size(); ++r) {
            ids[r] = add_node(cands[*source[r]]);
        }
        for (std::size_t i = 0; i < cands.size(); ++i) {
            InitEdge e = pending[i];
            e.child = ids[dd.assignment[i]];
            gr.edges.push_back(e);
        }
    }
    return gr;
}

/// N(p) ~ A exp(kappa p), least squares on log N.
struct ExponentialFit {
    double amplitude = 0.0;
    double rate = 0.0;
    int points = 0;
};

[[nodiscard]] inline ExponentialFit fit_exponential(const std::vector<int> &ps, const std::vector<int> &counts) {
    require(ps.size() == counts.size(), ErrorKind::DimensionMismatch, "fit inputs differ in length");
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    int m = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (counts[i] <= 0) {
            continue;
        }
        const double x = ps[i];
        const double y = std::log(static_cast<double>(counts[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    require(m >= 2, ErrorKind::InvalidArgument, "exponential fit needs two positive counts");
    const double denom = m * sxx - sx * sx;
    require(denom > 0.0, ErrorKind::InvalidArgument, "exponential fit needs two distinct depths");
    ExponentialFit fit;
    fit.rate = (m * sxy - sx * sy) / denom;
    fit.amplitude = std::exp((sy - fit.rate * sx) / m);
    fit.points = m;
    return fit;
}

[[nodiscard]] inline ExponentialFit fit_level_counts(const InitGraph &gr) {
    std::vector<int> ps;
    std::vector<int> counts;
    for (const auto &[p, ids] : gr.levels) {
        ps.push_back(p);
        counts.push_back(static_cast<int>(ids.size()));
    }
    return fit_exponential(ps, counts);
}

/// Graphviz rendering: nodes labeled with depth and ratio, one rank per depth.
[[nodiscard]] inline std::string export_dot(const InitGraph &gr) {
    std::ostringstream os;
    os.precision(6);
    os << "digraph init_graph {\n  rankdir=TB;\n  node [shape=box];\n";
    for (const auto &[p, ids] : gr.levels) {
        os << "  { rank=same;";
        for (auto id : ids) {
            os << " m" << id << ";";
        }
        os << " }\n";
    }
    for (const auto &n : gr.nodes) {
        os << "  m" << n.id << " [label=\"p=" << n.p << "\\nr=" << std::fixed << n.ratio << std::defaultfloat
           << "\"];\n";
    }
    for (const auto &e : gr.edges) {
        os << "  m" << e.parent << " -> m" << e.child << " [label=\"(" << e.insert_gamma << "," << e.insert_beta
           << ")" << (e.sign > 0 ? "+" : "-") << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace qaoa_greedy
