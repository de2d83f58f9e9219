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
 * Local minimization of the QAOA energy (BFGS with a Wolfe line search) and
 * the depth-1 grid search.
 *
 * Angles are optimized unconstrained; folding into the fundamental region is
 * applied to reported results only.
 */
#pragma once

#include "angles.hpp"
#include "error.hpp"
#include "simulator.hpp"
#include "symmetry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace qaoa_greedy {

enum class Classification { Minimum, TransitionState, Singular, Other, Unclassified };

enum class Provenance { Grid, TsDescentPlus, TsDescentMinus, Interp, Tqa, Random, Initial };

[[nodiscard]] inline std::string_view to_string(Classification c) {
    switch (c) {
    case Classification::Minimum:
        return "MINIMUM";
    case Classification::TransitionState:
        return "TRANSITION_STATE";
    case Classification::Singular:
        return "SINGULAR";
    case Classification::Other:
        return "OTHER";
    case Classification::Unclassified:
        return "UNCLASSIFIED";
    }
    return "UNCLASSIFIED";
}

[[nodiscard]] inline std::string_view to_string(Provenance p) {
    switch (p) {
    case Provenance::Grid:
        return "GRID";
    case Provenance::TsDescentPlus:
        return "TS_DESCENT_PLUS";
    case Provenance::TsDescentMinus:
        return "TS_DESCENT_MINUS";
    case Provenance::Interp:
        return "INTERP";
    case Provenance::Tqa:
        return "TQA";
    case Provenance::Random:
        return "RANDOM";
    case Provenance::Initial:
        return "INITIAL";
    }
    return "INITIAL";
}

struct StationaryPoint {
    AngleVector angles;
    double energy = 0.0;
    double grad_norm = 0.0; ///< infinity norm
    std::optional<Inertia> inertia;
    Classification classification = Classification::Unclassified;
    int iterations = 0;
    Provenance provenance = Provenance::Initial;
    bool converged = false;
};

struct OptimizerOptions {
    double tol_grad = 1e-8; ///< convergence: gradient infinity norm below this
    int max_iter = 1000;
    bool classify = true; ///< compute the Hessian of converged points
    double h_fd = kDefaultHessianStep;
    double tol_eig = kEigenTolerance;
    int newton_polish_steps = 10; ///< used only when the line search stalls
};

/// Classification from inertia alone.
[[nodiscard]] inline Classification classify_inertia(const Inertia &in) {
    if (in.zero > 0) {
        return Classification::Singular;
    }
    if (in.negative == 0) {
        return Classification::Minimum;
    }
    if (in.negative == 1) {
        return Classification::TransitionState;
    }
    return Classification::Other;
}

/// Fills inertia and classification. Non-stationary points stay UNCLASSIFIED.
inline void classify(const Simulator &sim, StationaryPoint &pt, const OptimizerOptions &opts = {}) {
    if (pt.grad_norm >= opts.tol_grad || pt.angles.depth() == 0) {
        pt.classification = Classification::Unclassified;
        return;
    }
    const HessianMatrix h = sim.hessian(pt.angles, opts.h_fd, opts.tol_eig);
    pt.inertia = h.inertia;
    pt.classification = classify_inertia(h.inertia);
}

namespace detail {

struct Probe {
    double alpha = 0.0;
    double f = 0.0;
    double dphi = 0.0;
    AngleVector x;
    std::vector<double> g;
};

[[nodiscard]] inline double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

/**
 * Line search for the strong Wolfe conditions (bracketing + zoom with
 * safeguarded cubic interpolation). The sufficient-decrease test carries a
 * rounding slack of ~1e-14 |f| so that the final iterations, where energy
 * differences fall below machine precision, are steered by the exact
 * directional derivative instead of stalling.
 */
class WolfeLineSearch {
  public:
    static constexpr double c1 = 1e-4;
    static constexpr double c2 = 0.9;
    static constexpr int max_evals = 40;

    WolfeLineSearch(const Simulator &sim, const AngleVector &x0, double f0,
                    std::span<const double> d, double dphi0)
        : sim_(sim), x0_(x0), f0_(f0), d_(d.begin(), d.end()), dphi0_(dphi0),
          slack_(1e-14 * (1.0 + std::abs(f0))) {}

    /// Accepted probe, or the best strictly-decreasing probe if Wolfe failed.
    std::optional<Probe> run(double alpha0) {
        Probe prev{0.0, f0_, dphi0_, x0_, {}};
        double alpha = alpha0;
        for (int i = 0; i < max_evals; ++i) {
            Probe cur = eval(alpha);
            if (!sufficient(cur) || (i > 0 && cur.f >= prev.f)) {
                return zoom(std::move(prev), std::move(cur));
            }
            if (std::abs(cur.dphi) <= -c2 * dphi0_) {
                return cur;
            }
            if (cur.dphi >= 0.0) {
                return zoom(std::move(cur), std::move(prev));
            }
            prev = std::move(cur);
            alpha = std::min(2.0 * alpha, 1e4);
        }
        return best_;
    }

    [[nodiscard]] int evaluations() const noexcept { return evals_; }

  private:
    Probe eval(double alpha) {
        ++evals_;
        Probe p;
        p.alpha = alpha;
        p.x = displaced(x0_, d_, alpha);
        p.g.resize(p.x.size());
        p.f = sim_.energy_and_gradient(p.x, p.g);
        p.dphi = dot(p.g, d_);
        if (p.f < f0_ && (!best_ || p.f < best_->f)) {
            best_ = p;
        }
        return p;
    }

    [[nodiscard]] bool sufficient(const Probe &p) const {
        return std::isfinite(p.f) && p.f <= f0_ + c1 * p.alpha * dphi0_ + slack_;
    }

    std::optional<Probe> zoom(Probe lo, Probe hi) {
        for (int j = 0; j < max_evals && evals_ < 2 * max_evals; ++j) {
            const double a = lo.alpha;
            const double b = hi.alpha;
            const double width = std::abs(b - a);
            if (width <= 1e-16 * std::max(1.0, std::abs(a))) {
                break;
            }
            double alpha = cubic_min(lo, hi);
            const double left = std::min(a, b) + 0.1 * width;
            const double right = std::max(a, b) - 0.1 * width;
            if (!std::isfinite(alpha) || alpha < left || alpha > right) {
                alpha = 0.5 * (a + b);
            }
            Probe cur = eval(alpha);
            if (!sufficient(cur) || cur.f >= lo.f) {
                hi = std::move(cur);
            } else {
                if (std::abs(cur.dphi) <= -c2 * dphi0_) {
                    return cur;
                }
                if (cur.dphi * (hi.alpha - lo.alpha) >= 0.0) {
                    hi = std::move(lo);
                }
                lo = std::move(cur);
            }
        }
        if (lo.alpha > 0.0) {
            return lo;
        }
        return best_;
    }

    static double cubic_min(const Probe &p, const Probe &q) {
        const double d1 = p.dphi + q.dphi - 3.0 * (p.f - q.f) / (p.alpha - q.alpha);
        const double disc = d1 * d1 - p.dphi * q.dphi;
        if (disc < 0.0) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        const double d2 = std::copysign(std::sqrt(disc), q.alpha - p.alpha);
        return q.alpha - (q.alpha - p.alpha) * (q.dphi + d2 - d1) / (q.dphi - p.dphi + 2.0 * d2);
    }

    const Simulator &sim_;
    const AngleVector &x0_;
    double f0_;
    std::vector<double> d_;
    double dphi0_;
    double slack_;
    int evals_ = 0;
    std::optional<Probe> best_;
};

} // namespace detail

/**
 * BFGS from `init`. Returns the final iterate; `converged` is set when the
 * gradient infinity norm dropped below opts.tol_grad, otherwise the point is
 * UNCLASSIFIED. Deterministic: no randomized components.
 */
[[nodiscard]] inline StationaryPoint local_minimize(const Simulator &sim, const AngleVector &init,
                                                    const OptimizerOptions &opts = {},
                                                    Provenance provenance = Provenance::Initial) {
    init.validate();
    require(opts.tol_grad > 0.0 && opts.max_iter >= 0, ErrorKind::InvalidArgument,
            "optimizer options out of range");
    const std::size_t dim = init.size();
    StationaryPoint out;
    out.provenance = provenance;
    if (dim == 0) {
        out.angles = init;
        out.energy = sim.energy(init);
        out.converged = true;
        return out;
    }

    AngleVector x = init;
    std::vector<double> g(dim);
    double f = sim.energy_and_gradient(x, g);
    using Mat = Eigen::MatrixXd;
    using Vec = Eigen::VectorXd;
    const auto n = static_cast<Eigen::Index>(dim);
    Mat hinv = Mat::Identity(n, n);
    bool fresh = true;
    bool scaled = false;
    int iter = 0;

    while (max_abs(g) >= opts.tol_grad && iter < opts.max_iter) {
        ++iter;
        const Eigen::Map<const Vec> gv(g.data(), n);
        Vec d = -hinv * gv;
        if (gv.dot(d) >= 0.0) {
            hinv.setIdentity();
            fresh = true;
            d = -gv;
        }
        const double dphi0 = gv.dot(d);
        const double alpha0 = fresh && !scaled ? std::min(1.0, 1.0 / gv.norm()) : 1.0;
        detail::WolfeLineSearch ls(sim, x, f, std::span<const double>(d.data(), dim), dphi0);
        auto step = ls.run(alpha0);
        if (!step) {
            if (!fresh) {
                hinv.setIdentity();
                fresh = true;
                continue;
            }
            break;
        }
        const Vec s = Eigen::Map<const Vec>(step->x.flat().data(), n) -
                      Eigen::Map<const Vec>(x.flat().data(), n);
        const Vec y = Eigen::Map<const Vec>(step->g.data(), n) - gv;
        const double sy = s.dot(y);
        if (sy > 1e-14 * s.norm() * y.norm()) {
            if (!scaled) {
                hinv *= sy / y.dot(y);
                scaled = true;
            }
            const double rho = 1.0 / sy;
            const Mat left = Mat::Identity(n, n) - rho * s * y.transpose();
            hinv = left * hinv * left.transpose() + rho * s * s.transpose();
            fresh = false;
        }
        x = std::move(step->x);
        f = step->f;
        g = std::move(step->g);
    }

    // The line search can stall within a few ulps of a minimum; finish with
    // Newton steps on the finite-difference Hessian, accepted only if they
    // shrink the gradient without raising the energy.
    for (int k = 0; k < opts.newton_polish_steps && max_abs(g) >= opts.tol_grad; ++k) {
        const HessianMatrix h = sim.hessian(x, opts.h_fd, opts.tol_eig);
        if (h.inertia.negative > 0 || h.inertia.zero > 0) {
            break;
        }
        const Eigen::Map<const Vec> gv(g.data(), n);
        const Vec step = -h.eigenvectors *
                         (h.eigenvalues.cwiseInverse().asDiagonal() * (h.eigenvectors.transpose() * gv));
        AngleVector trial = displaced(x, std::span<const double>(step.data(), dim), 1.0);
        std::vector<double> gt(dim);
        const double ft = sim.energy_and_gradient(trial, gt);
        if (!(max_abs(gt) < max_abs(g)) || ft > f + 1e-14 * (1.0 + std::abs(f))) {
            break;
        }
        ++iter;
        x = std::move(trial);
        f = ft;
        g = std::move(gt);
    }

    out.angles = std::move(x);
    out.energy = f;
    out.grad_norm = max_abs(g);
    out.iterations = iter;
    out.converged = out.grad_norm < opts.tol_grad;
    if (out.converged && opts.classify) {
        classify(sim, out, opts);
    }
    return out;
}

/// Folds a point's angles into the fundamental region; energy, gradient norm
/// and inertia are invariant under the symmetry maps.
[[nodiscard]] inline StationaryPoint folded(StationaryPoint pt, LandscapeSymmetry symmetry) {
    pt.angles = fold_to_fundamental(std::move(pt.angles), symmetry);
    return pt;
}

/// Strict weak order: energy, then lexicographic flat angles.
[[nodiscard]] inline bool better_point(const StationaryPoint &a, const StationaryPoint &b) {
    if (a.energy != b.energy) {
        return a.energy < b.energy;
    }
    return a.angles.flat() < b.angles.flat();
}

/// Upper end of the gamma_1 grid for each symmetry class.
[[nodiscard]] inline double gamma_grid_extent(LandscapeSymmetry symmetry) {
    return symmetry == LandscapeSymmetry::OddDegree ? std::numbers::pi / 4 : std::numbers::pi / 2;
}

/**
 * Depth-1 grid search: local minimization from every point of a
 * resolution x resolution grid with beta_1 in [-pi/4, pi/4] and gamma_1 in
 * (0, pi/4) (or (0, pi/2) without the odd-degree symmetry). Returns the best
 * converged minimum, folded.
 */
[[nodiscard]] inline StationaryPoint grid_search_p1(const Simulator &sim, int resolution = 32,
                                                    const OptimizerOptions &opts = {}) {
    require(resolution >= 8, ErrorKind::InvalidArgument, "grid resolution must be at least 8");
    constexpr double pi = std::numbers::pi;
    const double gmax = gamma_grid_extent(sim.symmetry());
    OptimizerOptions inner = opts;
    inner.classify = false;
    std::optional<StationaryPoint> best;
    for (int i = 0; i < resolution; ++i) {
        const double beta = -pi / 4 + (pi / 2) * i / (resolution - 1);
        for (int k = 0; k < resolution; ++k) {
            const double gamma = gmax * (k + 1) / (resolution + 1);
            StationaryPoint pt = local_minimize(sim, AngleVector({beta}, {gamma}), inner, Provenance::Grid);
            if (!pt.converged) {
                continue;
            }
            pt = folded(std::move(pt), sim.symmetry());
            if (!best || better_point(pt, *best)) {
                best = std::move(pt);
            }
        }
    }
    require(best.has_value(), ErrorKind::NonConvergence, "no grid start converged");
    if (opts.classify) {
        classify(sim, *best, opts);
    }
    return *best;
}

} // namespace qaoa_greedy
