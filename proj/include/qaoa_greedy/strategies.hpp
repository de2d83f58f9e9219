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
 * Depth-by-depth initialization strategies: GREEDY (descent from the
 * transition states of the best minimum), INTERP, TQA and a quasi-random
 * multistart used as a global-minimum estimate.
 *
 * Every strategy starts from the depth-1 grid search except the multistart.
 * Strategies continue from the unfolded optimizer output; the per-depth
 * records carry folded angles.
 */
#pragma once

#include "angles.hpp"
#include "error.hpp"
#include "landscape.hpp"
#include "optimizer.hpp"
#include "rng.hpp"
#include "simulator.hpp"
#include "symmetry.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qaoa_greedy {

enum class Strategy { Greedy, Interp, Tqa, RandomMultistart };

[[nodiscard]] inline std::string_view to_string(Strategy s) {
    switch (s) {
    case Strategy::Greedy:
        return "GREEDY";
    case Strategy::Interp:
        return "INTERP";
    case Strategy::Tqa:
        return "TQA";
    case Strategy::RandomMultistart:
        return "RANDOM_MULTISTART";
    }
    return "GREEDY";
}

[[nodiscard]] inline Strategy strategy_from_string(std::string_view s) {
    std::string up(s);
    for (auto &c : up) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    if (up == "GREEDY") {
        return Strategy::Greedy;
    }
    if (up == "INTERP") {
        return Strategy::Interp;
    }
    if (up == "TQA") {
        return Strategy::Tqa;
    }
    if (up == "GLOBAL" || up == "RANDOM_MULTISTART" || up == "RANDOM") {
        return Strategy::RandomMultistart;
    }
    fail(ErrorKind::InvalidArgument, "unknown strategy: " + std::string(s));
}

/// 0.1, 0.15, ..., 1.0
[[nodiscard]] inline std::vector<double> default_dt_grid() {
    std::vector<double> out;
    for (int k = 0; k <= 18; ++k) {
        out.push_back(0.1 + 0.05 * k);
    }
    return out;
}

struct StrategyOptions {
    OptimizerOptions optimizer;
    int grid_resolution = 32;
    double eps = kDefaultDescentOffset;
    bool use_nonsymmetric = false;
    bool approx_direction = false;
    std::vector<double> dt_grid = default_dt_grid();
    bool tqa_swap = false;
    std::uint64_t seed = 0;
    int max_starts = 4096;
    double tie_tol = 1e-10; ///< energies closer than this tie; broken by smoothness
};

struct DepthRecord {
    int p = 0;
    StationaryPoint best;     ///< folded
    AngleVector continuation; ///< unfolded angles used to seed depth p+1
    double ratio = 0.0;
    double wall_ms = 0.0;
    std::optional<double> dt; ///< TQA only
    int descents = 0;         ///< GREEDY: local minimizations started from TS
    int singular_ts = 0;      ///< GREEDY: TS skipped because their Hessian was singular
    int failed_branches = 0;  ///< GREEDY: descents that did not end at a minimum
    int starts = 0;           ///< multistart only
};

struct StrategyRun {
    Strategy strategy = Strategy::Greedy;
    std::vector<DepthRecord> per_depth;
    StrategyOptions config;
    bool complete = true;
    std::string error; ///< set when the run stopped early
};

// ---------------------------------------------------------------------------
// Shared pieces

namespace detail {

inline double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline DepthRecord make_record(const Simulator &sim, const StationaryPoint &raw, double wall_ms) {
    DepthRecord r;
    r.p = static_cast<int>(raw.angles.depth());
    r.best = folded(raw, sim.symmetry());
    r.continuation = raw.angles;
    r.ratio = approximation_ratio(raw.energy, sim.cost().c_min);
    r.wall_ms = wall_ms;
    return r;
}

} // namespace detail

/**
 * Deterministic winner among candidate minima: lowest energy; energies within
 * `tie_tol` are ranked by smoothness score and then by folded angles.
 */
[[nodiscard]] inline std::optional<std::size_t> select_best(const std::vector<StationaryPoint> &cands,
                                                            LandscapeSymmetry symmetry,
                                                            double tie_tol = 1e-10) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (!best) {
            best = i;
            continue;
        }
        const auto &a = cands[i];
        const auto &b = cands[*best];
        if (a.energy < b.energy - tie_tol) {
            best = i;
        } else if (std::abs(a.energy - b.energy) <= tie_tol) {
            const double sa = smoothness_score(a.angles);
            const double sb = smoothness_score(b.angles);
            if (sa < sb || (sa == sb && fold_to_fundamental(a.angles, symmetry).flat() <
                                            fold_to_fundamental(b.angles, symmetry).flat())) {
                best = i;
            }
        }
    }
    return best;
}

/// One descent out of a transition state.
struct Branch {
    std::size_t ts_index = 0; ///< into Expansion::ts
    int sign = +1;
    StationaryPoint point; ///< unfolded
};

struct Expansion {
    std::vector<TransitionStateRecord> ts;
    std::vector<Branch> branches; ///< only converged minima
    int descents = 0;
    int singular_ts = 0;
    int failed_branches = 0;
};

/**
 * Builds the transition states of `parent`, classifies each, and descends
 * both ways along the index-1 direction of every regular TS. Singular TS are
 * skipped and counted.
 */
[[nodiscard]] inline Expansion expand_minimum(const Simulator &sim, const StationaryPoint &parent,
                                              const StrategyOptions &opts, std::size_t parent_id = 0) {
    Expansion ex;
    ex.ts = enumerate_ts(sim, parent, opts.use_nonsymmetric, parent_id);
    for (std::size_t k = 0; k < ex.ts.size(); ++k) {
        const auto &ts = ex.ts[k];
        std::vector<double> dir;
        if (opts.approx_direction) {
            dir = approx_index1_direction(sim, ts, opts.optimizer.h_fd);
        } else {
            const HessianMatrix h = sim.hessian(ts.angles, opts.optimizer.h_fd, opts.optimizer.tol_eig);
            if (h.inertia.zero > 0 || h.inertia.negative != 1) {
                ++ex.singular_ts;
                continue;
            }
            dir = index1_direction(h);
        }
        auto [plus, minus] = descend_from_ts(sim, ts, dir, opts.eps, opts.optimizer);
        ex.descents += 2;
        for (auto *pt : {&plus, &minus}) {
            if (pt->converged && pt->classification == Classification::Minimum) {
                ex.branches.push_back({k, pt == &plus ? +1 : -1, std::move(*pt)});
            } else {
                ++ex.failed_branches;
            }
        }
    }
    return ex;
}

// ---------------------------------------------------------------------------
// GREEDY

/// Seeds p = 1 from the grid search, then repeatedly keeps the best minimum
/// reached from the transition states of the previous best.
[[nodiscard]] inline StrategyRun greedy_run(const Simulator &sim, int p_max, const StrategyOptions &opts = {}) {
    require(p_max >= 1, ErrorKind::InvalidArgument, "p_max must be at least 1");
    StrategyRun run;
    run.strategy = Strategy::Greedy;
    run.config = opts;
    OptimizerOptions classified = opts.optimizer;
    classified.classify = true;

    auto t0 = std::chrono::steady_clock::now();
    StationaryPoint current = grid_search_p1(sim, opts.grid_resolution, classified);
    run.per_depth.push_back(detail::make_record(sim, current, detail::elapsed_ms(t0)));

    for (int p = 1; p < p_max; ++p) {
        t0 = std::chrono::steady_clock::now();
        try {
            require(current.classification == Classification::Minimum, ErrorKind::Classification,
                    "depth-" + std::to_string(p) + " point is not a regular minimum");
            Expansion ex = expand_minimum(sim, current, opts);
            std::vector<StationaryPoint> cands;
            cands.reserve(ex.branches.size());
            for (auto &b : ex.branches) {
                cands.push_back(std::move(b.point));
            }
            const auto pick = select_best(cands, sim.symmetry(), opts.tie_tol);
            require(pick.has_value(), ErrorKind::NonConvergence,
                    "no descent reached a minimum at depth " + std::to_string(p + 1));
            current = std::move(cands[*pick]);
            DepthRecord rec = detail::make_record(sim, current, detail::elapsed_ms(t0));
            rec.descents = ex.descents;
            rec.singular_ts = ex.singular_ts;
            rec.failed_branches = ex.failed_branches;
            run.per_depth.push_back(std::move(rec));
        } catch (const Error &e) {
            run.complete = false;
            run.error = e.what();
            break;
        }
    }
    return run;
}

// ---------------------------------------------------------------------------
// INTERP

/**
 * Depth-(p+1) interpolation of a depth-p pattern:
 *   out_i = ((i-1) a_{i-1} + (p+1-i) a_i) / p,  i = 1..p+1,
 * applied to beta and gamma separately.
 */
[[nodiscard]] inline AngleVector interp_init(const AngleVector &parent) {
    parent.validate();
    const std::size_t p = parent.depth();
    require(p >= 1, ErrorKind::InvalidArgument, "interpolation needs p >= 1");
    const auto lift = [p](const std::vector<double> &x) {
        std::vector<double> out(p + 1, 0.0);
        const auto pd = static_cast<double>(p);
        for (std::size_t i = 1; i <= p + 1; ++i) {
            const double left = i >= 2 ? static_cast<double>(i - 1) * x[i - 2] : 0.0;
            const double right = i <= p ? static_cast<double>(p + 1 - i) * x[i - 1] : 0.0;
            out[i - 1] = (left + right) / pd;
        }
        return out;
    };
    return {lift(parent.beta), lift(parent.gamma)};
}

/// Same point as interp_init, computed as (1/p) times the sum of the p+1
/// symmetric transition states.
[[nodiscard]] inline AngleVector interp_init_from_ts(const AngleVector &parent) {
    const std::size_t p = parent.depth();
    require(p >= 1, ErrorKind::InvalidArgument, "interpolation needs p >= 1");
    AngleVector acc = AngleVector::zeros(p + 1);
    for (int l = 1; l <= static_cast<int>(p) + 1; ++l) {
        const AngleVector ts = insert_zeros(parent, l, l);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            acc[i] += ts[i];
        }
    }
    for (std::size_t i = 0; i < acc.size(); ++i) {
        acc[i] /= static_cast<double>(p);
    }
    return acc;
}

[[nodiscard]] inline StrategyRun interp_run(const Simulator &sim, int p_max, const StrategyOptions &opts = {}) {
    require(p_max >= 1, ErrorKind::InvalidArgument, "p_max must be at least 1");
    StrategyRun run;
    run.strategy = Strategy::Interp;
    run.config = opts;
    OptimizerOptions classified = opts.optimizer;
    classified.classify = true;

    auto t0 = std::chrono::steady_clock::now();
    StationaryPoint current = grid_search_p1(sim, opts.grid_resolution, classified);
    run.per_depth.push_back(detail::make_record(sim, current, detail::elapsed_ms(t0)));
    for (int p = 1; p < p_max; ++p) {
        t0 = std::chrono::steady_clock::now();
        current = local_minimize(sim, interp_init(current.angles), classified, Provenance::Interp);
        run.per_depth.push_back(detail::make_record(sim, current, detail::elapsed_ms(t0)));
    }
    return run;
}

// ---------------------------------------------------------------------------
// TQA

/// gamma_j = (1 - j/p) dt, beta_j = (j/p) dt; `swap` exchanges the two ramps.
[[nodiscard]] inline AngleVector tqa_init(int p, double dt, bool swap = false) {
    require(p >= 1, ErrorKind::InvalidArgument, "TQA needs p >= 1");
    require(dt > 0.0 && std::isfinite(dt), ErrorKind::InvalidArgument, "TQA step must be positive");
    std::vector<double> beta(static_cast<std::size_t>(p));
    std::vector<double> gamma(static_cast<std::size_t>(p));
    for (int j = 1; j <= p; ++j) {
        const double s = static_cast<double>(j) / p;
        gamma[static_cast<std::size_t>(j - 1)] = (1.0 - s) * dt;
        beta[static_cast<std::size_t>(j - 1)] = s * dt;
    }
    if (swap) {
        std::swap(beta, gamma);
    }
    return {std::move(beta), std::move(gamma)};
}

/// Grid element minimizing the un-optimized TQA energy; ties go to the smaller step.
[[nodiscard]] inline double select_tqa_dt(const Simulator &sim, int p, std::vector<double> grid, bool swap) {
    require(!grid.empty(), ErrorKind::InvalidArgument, "TQA step grid is empty");
    std::sort(grid.begin(), grid.end());
    double best_dt = grid.front();
    double best_e = sim.energy(tqa_init(p, best_dt, swap));
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const double e = sim.energy(tqa_init(p, grid[k], swap));
        if (e < best_e) {
            best_e = e;
            best_dt = grid[k];
        }
    }
    return best_dt;
}

/// p = 1 from the grid search; every deeper p picks its own step and
/// minimizes once from the ramp.
[[nodiscard]] inline StrategyRun tqa_run(const Simulator &sim, int p_max, const StrategyOptions &opts = {}) {
    require(p_max >= 1, ErrorKind::InvalidArgument, "p_max must be at least 1");
    StrategyRun run;
    run.strategy = Strategy::Tqa;
    run.config = opts;
    OptimizerOptions classified = opts.optimizer;
    classified.classify = true;

    auto t0 = std::chrono::steady_clock::now();
    run.per_depth.push_back(
        detail::make_record(sim, grid_search_p1(sim, opts.grid_resolution, classified), detail::elapsed_ms(t0)));
    for (int p = 2; p <= p_max; ++p) {
        t0 = std::chrono::steady_clock::now();
        const double dt = select_tqa_dt(sim, p, opts.dt_grid, opts.tqa_swap);
        const StationaryPoint pt = local_minimize(sim, tqa_init(p, dt, opts.tqa_swap), classified, Provenance::Tqa);
        DepthRecord rec = detail::make_record(sim, pt, detail::elapsed_ms(t0));
        rec.dt = dt;
        run.per_depth.push_back(std::move(rec));
    }
    return run;
}

// ---------------------------------------------------------------------------
// Quasi-random multistart

namespace detail {

inline constexpr std::array<int, 32> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                                 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
                                                 83, 89, 97, 101, 103, 107, 109, 113, 127, 131};

inline double radical_inverse(std::uint64_t i, int base) {
    double inv = 1.0 / base;
    double f = inv;
    double out = 0.0;
    while (i > 0) {
        out += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
        i /= static_cast<std::uint64_t>(base);
        f *= inv;
    }
    return out;
}

} // namespace detail

/**
 * Start `index` of a Halton sequence with a seeded Cranley-Patterson shift,
 * mapped into the box beta in [-pi/4, pi/4), gamma_1 in [0, g), gamma_j in
 * [-g, g) with g = pi/4 for odd-degree graphs and pi/2 otherwise.
 */
[[nodiscard]] inline AngleVector multistart_point(int p, std::uint64_t index, std::uint64_t seed,
                                                  LandscapeSymmetry symmetry) {
    require(p >= 1 && 2 * p <= static_cast<int>(detail::kPrimes.size()), ErrorKind::InvalidArgument,
            "multistart depth out of range");
    constexpr double pi = std::numbers::pi;
    const double g = gamma_grid_extent(symmetry);
    SplitMix64 rng(seed);
    AngleVector a = AngleVector::zeros(static_cast<std::size_t>(p));
    for (std::size_t d = 0; d < a.size(); ++d) {
        double x = detail::radical_inverse(index + 1, detail::kPrimes[d]) + rng.uniform01();
        x -= std::floor(x);
        if (d < static_cast<std::size_t>(p)) {
            a[d] = -pi / 4 + x * pi / 2;
        } else if (d == static_cast<std::size_t>(p)) {
            a[d] = x * g;
        } else {
            a[d] = -g + 2.0 * g * x;
        }
    }
    return a;
}

/// Best minimum out of `n_starts` quasi-random starts (folded, classified).
[[nodiscard]] inline StationaryPoint random_multistart(const Simulator &sim, int p, int n_starts,
                                                       std::uint64_t seed, const OptimizerOptions &opts = {}) {
    require(n_starts >= 1, ErrorKind::InvalidArgument, "need at least one start");
    OptimizerOptions inner = opts;
    inner.classify = false;
    std::optional<StationaryPoint> best;
    for (int k = 0; k < n_starts; ++k) {
        StationaryPoint pt = local_minimize(sim, multistart_point(p, static_cast<std::uint64_t>(k), seed, sim.symmetry()),
                                            inner, Provenance::Random);
        if (!pt.converged) {
            continue;
        }
        if (!best || better_point(pt, *best)) {
            best = std::move(pt);
        }
    }
    require(best.has_value(), ErrorKind::NonConvergence, "no multistart run converged");
    if (opts.classify) {
        classify(sim, *best, opts);
    }
    return *best;
}

/// Default start count 2^p, capped.
[[nodiscard]] inline int default_start_count(int p, int cap = 4096) {
    return p >= 30 ? cap : std::min(cap, 1 << p);
}

/// Global estimate per depth from independent quasi-random multistarts.
[[nodiscard]] inline StrategyRun random_multistart_run(const Simulator &sim, int p_max,
                                                       const StrategyOptions &opts = {}) {
    require(p_max >= 1, ErrorKind::InvalidArgument, "p_max must be at least 1");
    StrategyRun run;
    run.strategy = Strategy::RandomMultistart;
    run.config = opts;
    OptimizerOptions classified = opts.optimizer;
    classified.classify = true;
    for (int p = 1; p <= p_max; ++p) {
        const auto t0 = std::chrono::steady_clock::now();
        const int starts = default_start_count(p, opts.max_starts);
        try {
            const StationaryPoint pt =
                random_multistart(sim, p, starts, derive_seed(opts.seed, static_cast<std::uint64_t>(p)), classified);
            DepthRecord rec = detail::make_record(sim, pt, detail::elapsed_ms(t0));
            rec.starts = starts;
            run.per_depth.push_back(std::move(rec));
        } catch (const Error &e) {
            run.complete = false;
            run.error = e.what();
            break;
        }
    }
    return run;
}

[[nodiscard]] inline StrategyRun run_strategy(const Simulator &sim, Strategy s, int p_max,
                                              const StrategyOptions &opts = {}) {
    switch (s) {
    case Strategy::Greedy:
        return greedy_run(sim, p_max, opts);
    case Strategy::Interp:
        return interp_run(sim, p_max, opts);
    case Strategy::Tqa:
        return tqa_run(sim, p_max, opts);
    case Strategy::RandomMultistart:
        return random_multistart_run(sim, p_max, opts);
    }
    fail(ErrorKind::InvalidArgument, "unknown strategy");
}

} // namespace qaoa_greedy
