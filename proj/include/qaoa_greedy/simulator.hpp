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
 * Exact statevector simulation of the QAOA ansatz
 *
 *   |beta, gamma> = prod_l exp(-i beta_l H_B) exp(-i gamma_l H_C) |+>^n,
 *
 * with layer 1 applied first, H_C the cost diagonal and H_B = -sum_k X_k, so
 * the mixer is the per-qubit rotation exp(+i beta X).
 *
 * Gradients use the adjoint (reverse) sweep: one forward pass, then the
 * state and the cost-applied co-state are walked back layer by layer.
 */
#pragma once

#include "angles.hpp"
#include "error.hpp"
#include "problem.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qaoa_greedy {

using Complex = std::complex<double>;

struct StateVector {
    int n = 0;
    std::vector<Complex> amplitudes;

    [[nodiscard]] static StateVector plus(int n) {
        const std::size_t dim = std::size_t{1} << static_cast<unsigned>(n);
        return {n, std::vector<Complex>(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0))};
    }

    [[nodiscard]] std::size_t dim() const noexcept { return amplitudes.size(); }

    [[nodiscard]] double norm() const {
        double acc = 0.0;
        for (const auto &a : amplitudes) {
            acc += std::norm(a);
        }
        return std::sqrt(acc);
    }
};

[[nodiscard]] inline Complex inner(const StateVector &a, const StateVector &b) {
    Complex acc{0.0, 0.0};
    for (std::size_t z = 0; z < a.dim(); ++z) {
        acc += std::conj(a.amplitudes[z]) * b.amplitudes[z];
    }
    return acc;
}

/// Eigenvalue counts under a relative tolerance.
struct Inertia {
    int negative = 0;
    int zero = 0;
    int positive = 0;

    friend bool operator==(const Inertia &, const Inertia &) = default;
};

inline constexpr double kDefaultHessianStep = 1e-4;
inline constexpr double kEigenTolerance = 1e-7;

struct HessianMatrix {
    Eigen::MatrixXd entries;      ///< symmetric, flat angle order
    Eigen::VectorXd eigenvalues;  ///< ascending
    Eigen::MatrixXd eigenvectors; ///< columns match eigenvalues
    Inertia inertia;

    [[nodiscard]] double determinant() const { return eigenvalues.prod(); }
};

/// Eigen-decomposes a symmetric matrix and counts inertia with
/// |lambda| < tol * max|lambda| treated as zero.
[[nodiscard]] inline HessianMatrix make_hessian(Eigen::MatrixXd entries,
                                                double tol = kEigenTolerance) {
    require(entries.allFinite(), ErrorKind::NumericalFailure, "Hessian has non-finite entries");
    HessianMatrix h;
    h.entries = 0.5 * (entries + entries.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.entries);
    require(solver.info() == Eigen::Success, ErrorKind::NumericalFailure,
            "symmetric eigensolver failed");
    h.eigenvalues = solver.eigenvalues();
    h.eigenvectors = solver.eigenvectors();
    const double scale = h.eigenvalues.size() > 0 ? h.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    for (Eigen::Index i = 0; i < h.eigenvalues.size(); ++i) {
        const double lambda = h.eigenvalues(i);
        if (std::abs(lambda) <= tol * scale) {
            ++h.inertia.zero;
        } else if (lambda < 0.0) {
            ++h.inertia.negative;
        } else {
            ++h.inertia.positive;
        }
    }
    return h;
}

/// Which zero-insertion boundary the commutator scalar b refers to.
enum class BoundaryCase {
    LastLayer,  ///< zeros appended as layer p+1: b = <G|[[H_B,H_C],H_C]|G>
    FirstLayer, ///< zeros prepended as layer 1: b = <+|[H_C,[U^dag H_C U,H_B]]|+>
};

/// Deliberate defects for mutation testing of the verification suite.
struct FaultInjection {
    bool flip_mixer_generator_sign = false; ///< gradient uses +sum X instead of H_B
};

namespace detail {

[[nodiscard]] inline Complex mul(Complex a, Complex b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

/// conj(a) * b
[[nodiscard]] inline Complex conj_mul(Complex a, Complex b) {
    return {a.real() * b.real() + a.imag() * b.imag(), a.real() * b.imag() - a.imag() * b.real()};
}

inline void apply_phase(std::vector<Complex> &psi, const std::vector<double> &diag, double gamma) {
    if (gamma == 0.0) {
        return;
    }
    for (std::size_t z = 0; z < psi.size(); ++z) {
        const double phi = -gamma * diag[z];
        psi[z] = mul(psi[z], Complex(std::cos(phi), std::sin(phi)));
    }
}

/// exp(-i beta H_B) = prod_k (cos beta + i sin beta X_k).
inline void apply_mixer(std::vector<Complex> &psi, int n, double beta) {
    if (beta == 0.0) {
        return;
    }
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    const std::size_t dim = psi.size();
    for (int k = 0; k < n; ++k) {
        const std::size_t bit = std::size_t{1} << static_cast<unsigned>(k);
        for (std::size_t base = 0; base < dim; base += 2 * bit) {
            for (std::size_t z = base; z < base + bit; ++z) {
                const Complex a = psi[z];
                const Complex b = psi[z + bit];
                // (c a + i s b, i s a + c b), written out to avoid the
                // library's NaN-safe complex multiply.
                psi[z] = {c * a.real() - s * b.imag(), c * a.imag() + s * b.real()};
                psi[z + bit] = {c * b.real() - s * a.imag(), c * b.imag() + s * a.real()};
            }
        }
    }
}

/// out = H_B in = -sum_k X_k in.
inline void apply_mixer_generator(const std::vector<Complex> &in, std::vector<Complex> &out, int n) {
    out.assign(in.size(), Complex{0.0, 0.0});
    for (int k = 0; k < n; ++k) {
        const std::size_t bit = std::size_t{1} << static_cast<unsigned>(k);
        for (std::size_t z = 0; z < in.size(); ++z) {
            out[z] -= in[z ^ bit];
        }
    }
}

inline void apply_cost(const std::vector<Complex> &in, std::vector<Complex> &out,
                       const std::vector<double> &diag) {
    out.resize(in.size());
    for (std::size_t z = 0; z < in.size(); ++z) {
        out[z] = diag[z] * in[z];
    }
}

inline Complex inner(const std::vector<Complex> &a, const std::vector<Complex> &b) {
    Complex acc{0.0, 0.0};
    for (std::size_t z = 0; z < a.size(); ++z) {
        acc += conj_mul(a[z], b[z]);
    }
    return acc;
}

} // namespace detail

class Simulator {
  public:
    explicit Simulator(const ProblemGraph &g)
        : Simulator(cost_diagonal(g), landscape_symmetry(g)) {}

    explicit Simulator(CostDiagonal diag,
                       LandscapeSymmetry symmetry = LandscapeSymmetry::Generic)
        : diag_(std::move(diag)), symmetry_(symmetry) {
        require(diag_.values.size() == (std::size_t{1} << static_cast<unsigned>(diag_.n)),
                ErrorKind::DimensionMismatch, "cost diagonal length is not 2^n");
        // Integer spectra (unweighted graphs) have few distinct cost values;
        // phases are then looked up instead of recomputed per amplitude.
        const bool integral = std::all_of(diag_.values.begin(), diag_.values.end(), [](double v) {
            return v == std::round(v) && std::abs(v) <= 65536.0;
        });
        if (integral && !diag_.values.empty()) {
            level_offset_ = static_cast<int>(diag_.c_min);
            level_count_ = static_cast<int>(diag_.c_max) - level_offset_ + 1;
            levels_.resize(diag_.values.size());
            for (std::size_t z = 0; z < levels_.size(); ++z) {
                levels_[z] = static_cast<int>(diag_.values[z]) - level_offset_;
            }
        }
    }

    [[nodiscard]] int num_qubits() const noexcept { return diag_.n; }
    [[nodiscard]] const CostDiagonal &cost() const noexcept { return diag_; }
    [[nodiscard]] LandscapeSymmetry symmetry() const noexcept { return symmetry_; }

    void inject_fault(FaultInjection fault) noexcept { fault_ = fault; }

    /// Applies the ansatz circuit (layer 1 first) to an arbitrary state.
    void apply_circuit(std::vector<Complex> &psi, const AngleVector &a) const {
        for (std::size_t l = 0; l < a.depth(); ++l) {
            phase(psi, a.gamma[l]);
            detail::apply_mixer(psi, diag_.n, a.beta[l]);
        }
    }

    /// Applies the inverse of the ansatz circuit.
    void apply_circuit_adjoint(std::vector<Complex> &psi, const AngleVector &a) const {
        for (std::size_t l = a.depth(); l-- > 0;) {
            detail::apply_mixer(psi, diag_.n, -a.beta[l]);
            phase(psi, -a.gamma[l]);
        }
    }

    [[nodiscard]] StateVector evolve(const AngleVector &a) const {
        a.validate();
        StateVector psi = StateVector::plus(diag_.n);
        apply_circuit(psi.amplitudes, a);
        return psi;
    }

    [[nodiscard]] double expectation(const StateVector &psi) const {
        require(psi.dim() == diag_.values.size(), ErrorKind::DimensionMismatch,
                "state dimension does not match the cost diagonal");
        double acc = 0.0;
        for (std::size_t z = 0; z < psi.dim(); ++z) {
            acc += diag_.values[z] * std::norm(psi.amplitudes[z]);
        }
        return acc;
    }

    [[nodiscard]] double energy(const AngleVector &a) const { return expectation(evolve(a)); }

    /// Energy and the analytic gradient in flat order; `grad` must have size 2p.
    double energy_and_gradient(const AngleVector &a, std::span<double> grad) const {
        a.validate();
        const std::size_t p = a.depth();
        require(grad.size() == 2 * p, ErrorKind::DimensionMismatch, "gradient buffer size");
        StateVector state = evolve(a);
        std::vector<Complex> &psi = state.amplitudes;
        std::vector<Complex> lambda;
        detail::apply_cost(psi, lambda, diag_.values);
        const double e = detail::inner(psi, lambda).real();
        std::vector<Complex> scratch;
        const double mixer_sign = fault_.flip_mixer_generator_sign ? -1.0 : 1.0;

        for (std::size_t l = p; l-- > 0;) {
            // psi = state after layer l, lambda = U_{>l}^dag H_C |final>.
            detail::apply_mixer_generator(psi, scratch, diag_.n);
            grad[l] = mixer_sign * 2.0 * detail::inner(lambda, scratch).imag();
            detail::apply_mixer(psi, diag_.n, -a.beta[l]);
            detail::apply_mixer(lambda, diag_.n, -a.beta[l]);
            Complex acc{0.0, 0.0};
            for (std::size_t z = 0; z < psi.size(); ++z) {
                acc += detail::conj_mul(lambda[z], diag_.values[z] * psi[z]);
            }
            grad[p + l] = 2.0 * acc.imag();
            phase(psi, -a.gamma[l]);
            phase(lambda, -a.gamma[l]);
        }
        return e;
    }

    [[nodiscard]] std::vector<double> gradient(const AngleVector &a) const {
        std::vector<double> g(a.size());
        energy_and_gradient(a, g);
        return g;
    }

    /// Central differences of the analytic gradient, symmetrized.
    [[nodiscard]] HessianMatrix hessian(const AngleVector &a, double h_fd = kDefaultHessianStep,
                                        double tol_eig = kEigenTolerance) const {
        require(a.depth() >= 1, ErrorKind::InvalidArgument, "Hessian needs p >= 1");
        require(h_fd > 0.0, ErrorKind::InvalidArgument, "finite-difference step must be positive");
        const auto dim = static_cast<Eigen::Index>(a.size());
        Eigen::MatrixXd entries(dim, dim);
        std::vector<double> gp(a.size());
        std::vector<double> gm(a.size());
        for (std::size_t j = 0; j < a.size(); ++j) {
            AngleVector plus = a;
            AngleVector minus = a;
            plus[j] += h_fd;
            minus[j] -= h_fd;
            energy_and_gradient(plus, gp);
            energy_and_gradient(minus, gm);
            for (std::size_t i = 0; i < a.size(); ++i) {
                entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    (gp[i] - gm[i]) / (2.0 * h_fd);
            }
        }
        return make_hessian(std::move(entries), tol_eig);
    }

    /**
     * Scalar b governing the determinant of the Hessian at the boundary
     * transition states built from the stationary point `a`. Evaluated by
     * applying the nested commutators to statevectors.
     */
    [[nodiscard]] double commutator_expectation_b(const AngleVector &a, BoundaryCase which) const {
        const auto g = gradient(a);
        double gmax = 0.0;
        for (double x : g) {
            gmax = std::max(gmax, std::abs(x));
        }
        require(gmax < 1e-6, ErrorKind::ContractViolation,
                "commutator_expectation_b needs a stationary point");

        using Vec = std::vector<Complex>;
        const int n = diag_.n;
        const auto hb = [n](const Vec &v) {
            Vec out;
            detail::apply_mixer_generator(v, out, n);
            return out;
        };
        const auto hc = [this](const Vec &v) {
            Vec out;
            detail::apply_cost(v, out, diag_.values);
            return out;
        };
        const auto minus = [](Vec x, const Vec &y) {
            for (std::size_t z = 0; z < x.size(); ++z) {
                x[z] -= y[z];
            }
            return x;
        };

        Complex value;
        if (which == BoundaryCase::LastLayer) {
            const Vec psi = evolve(a).amplitudes;
            // [H_B, H_C] v
            const auto comm_bc = [&](const Vec &v) { return minus(hb(hc(v)), hc(hb(v))); };
            // [[H_B, H_C], H_C] psi
            const Vec out = minus(comm_bc(hc(psi)), hc(comm_bc(psi)));
            value = detail::inner(psi, out);
        } else {
            const Vec plus = StateVector::plus(n).amplitudes;
            // O = U^dag H_C U
            const auto heis = [&](const Vec &v) {
                Vec w = v;
                apply_circuit(w, a);
                w = hc(w);
                apply_circuit_adjoint(w, a);
                return w;
            };
            // [O, H_B] v
            const auto comm_ob = [&](const Vec &v) { return minus(heis(hb(v)), hb(heis(v))); };
            // [H_C, [O, H_B]] |+>
            const Vec out = minus(hc(comm_ob(plus)), comm_ob(hc(plus)));
            value = detail::inner(plus, out);
        }
        const double scale = std::max(1.0, std::abs(value.real()));
        require(std::abs(value.imag()) < 1e-10 * scale, ErrorKind::NumericalFailure,
                "commutator expectation has a non-negligible imaginary part");
        return value.real();
    }

  private:
    /// psi <- exp(-i gamma H_C) psi
    void phase(std::vector<Complex> &psi, double gamma) const {
        if (levels_.empty() || gamma == 0.0) {
            detail::apply_phase(psi, diag_.values, gamma);
            return;
        }
        std::vector<Complex> table(static_cast<std::size_t>(level_count_));
        for (int k = 0; k < level_count_; ++k) {
            const double phi = -gamma * static_cast<double>(k + level_offset_);
            table[static_cast<std::size_t>(k)] = Complex(std::cos(phi), std::sin(phi));
        }
        for (std::size_t z = 0; z < psi.size(); ++z) {
            psi[z] = detail::mul(psi[z], table[static_cast<std::size_t>(levels_[z])]);
        }
    }

    CostDiagonal diag_;
    std::vector<int> levels_; ///< empty unless the spectrum is integral
    int level_offset_ = 0;
    int level_count_ = 0;
    LandscapeSymmetry symmetry_ = LandscapeSymmetry::Generic;
    FaultInjection fault_{};
};

/// r = E / C_min.
[[nodiscard]] inline double approximation_ratio(double energy, double c_min) {
    require(c_min < 0.0, ErrorKind::InvalidProblem,
            "approximation ratio needs a negative optimal cost");
    return energy / c_min;
}

[[nodiscard]] inline double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

} // namespace qaoa_greedy
