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
#include "catch_amalgamated.hpp"
#include "support/oracles.hpp"

using namespace qaoa_greedy;

TEST_CASE("depth zero and all-zero angles give the uniform superposition", "[simulator]") {
    const auto g = generate_graph(Ensemble::RRG3, 6, 1);
    const Simulator sim(g);
    for (const auto &a : {AngleVector{}, AngleVector::zeros(3)}) {
        const auto psi = sim.evolve(a);
        for (const auto &amp : psi.amplitudes) {
            REQUIRE(std::abs(amp - Complex(0.125, 0.0)) < 1e-15);
        }
        REQUIRE(std::abs(sim.energy(a)) < 1e-14);
    }
}

TEST_CASE("single edge state matches the dense exponential", "[simulator]") {
    const auto g = oracle::single_edge();
    const Simulator sim(g);
    const AngleVector a({0.3}, {0.5});
    const auto psi = sim.evolve(a);
    const auto ref = oracle::state(g, a);
    for (Eigen::Index z = 0; z < ref.size(); ++z) {
        REQUIRE(std::abs(psi.amplitudes[static_cast<std::size_t>(z)] - ref(z)) < 1e-12);
    }
    REQUIRE(std::abs(sim.energy(a) - oracle::energy(g, a)) < 1e-12);
}

TEST_CASE("multi-layer states match the dense exponential", "[simulator]") {
    SplitMix64 rng(4);
    for (int k = 0; k < 6; ++k) {
        const auto g = k % 2 == 0 ? generate_graph(Ensemble::WRRG3, 4, static_cast<std::uint64_t>(k))
                                  : generate_graph(Ensemble::ER, 5, static_cast<std::uint64_t>(k));
        const Simulator sim(g);
        const auto a = oracle::random_angles(rng, 1 + k % 3);
        const auto psi = sim.evolve(a);
        const auto ref = oracle::state(g, a);
        for (Eigen::Index z = 0; z < ref.size(); ++z) {
            REQUIRE(std::abs(psi.amplitudes[static_cast<std::size_t>(z)] - ref(z)) < 1e-12);
        }
    }
}

TEST_CASE("evolution is unitary and energies are bounded", "[simulator]") {
    SplitMix64 rng(8);
    const auto g = generate_graph(Ensemble::RRG3, 8, 2);
    const Simulator sim(g);
    for (int k = 0; k < 20; ++k) {
        const auto a = oracle::random_angles(rng, 1 + k % 5, 3.0);
        const auto psi = sim.evolve(a);
        REQUIRE(std::abs(psi.norm() - 1.0) < 1e-12);
        const double e = sim.expectation(psi);
        REQUIRE(e >= sim.cost().c_min - 1e-12);
        REQUIRE(e <= sim.cost().c_max + 1e-12);
    }
}

TEST_CASE("adjoint gradient matches finite differences of the dense energy", "[simulator]") {
    SplitMix64 rng(12);
    for (int k = 0; k < 8; ++k) {
        const auto g = generate_graph(k % 2 == 0 ? Ensemble::RRG3 : Ensemble::WRRG3, 4, static_cast<std::uint64_t>(k));
        const Simulator sim(g);
        const auto a = oracle::random_angles(rng, 1 + k % 4);
        const auto grad = sim.gradient(a);
        const auto fd = oracle::fd_gradient([&](const AngleVector &x) { return oracle::energy(g, x); }, a, 1e-5);
        for (std::size_t i = 0; i < grad.size(); ++i) {
            REQUIRE(std::abs(grad[i] - fd[i]) < 1e-7);
        }
    }
}

TEST_CASE("gradient vanishes at the all-zero point", "[simulator]") {
    const Simulator sim(generate_graph(Ensemble::RRG3, 8, 3));
    for (double v : sim.gradient(AngleVector::zeros(3))) {
        REQUIRE(std::abs(v) < 1e-13);
    }
}

TEST_CASE("Hessian matches second differences of the dense energy", "[simulator]") {
    const auto g = oracle::single_edge();
    const Simulator sim(g);
    const AngleVector a({0.37}, {-0.81});
    const auto h = sim.hessian(a);
    const auto ref = oracle::fd_hessian([&](const AngleVector &x) { return oracle::energy(g, x); }, a, 1e-3);
    REQUIRE((h.entries - ref).cwiseAbs().maxCoeff() < 1e-4);
    REQUIRE((h.entries - h.entries.transpose()).cwiseAbs().maxCoeff() < 1e-8);
    REQUIRE(h.inertia.negative + h.inertia.zero + h.inertia.positive == 2);
}

TEST_CASE("commutator scalar matches dense commutators", "[simulator]") {
    for (const auto &g : {oracle::single_edge(), oracle::complete_graph(4)}) {
        const Simulator sim(g);
        const auto m = grid_search_p1(sim, 16);
        REQUIRE(m.grad_norm < 1e-8);
        const double last = sim.commutator_expectation_b(m.angles, BoundaryCase::LastLayer);
        const double first = sim.commutator_expectation_b(m.angles, BoundaryCase::FirstLayer);
        const auto ref_last = oracle::b_last_layer(g, m.angles);
        const auto ref_first = oracle::b_first_layer(g, m.angles);
        REQUIRE(std::abs(ref_last.imag()) < 1e-10);
        REQUIRE(std::abs(last - ref_last.real()) < 1e-10);
        REQUIRE(std::abs(first - ref_first.real()) < 1e-10);
    }
}

TEST_CASE("commutator scalar needs a stationary point", "[simulator]") {
    const Simulator sim(oracle::complete_graph(4));
    try {
        (void)sim.commutator_expectation_b(AngleVector({0.3}, {0.2}), BoundaryCase::LastLayer);
        FAIL("expected a contract violation");
    } catch (const Error &e) {
        REQUIRE(e.kind() == ErrorKind::ContractViolation);
    }
}

TEST_CASE("approximation ratio", "[simulator]") {
    REQUIRE(approximation_ratio(-3.0, -3.0) == 1.0);
    REQUIRE(approximation_ratio(0.0, -1.0) == 0.0);
    REQUIRE_THROWS_AS(approximation_ratio(-1.0, 0.0), Error);
}

TEST_CASE("mixer fault flips the beta gradient", "[simulator]") {
    Simulator sim(generate_graph(Ensemble::RRG3, 6, 1));
    const AngleVector a({0.2, -0.4}, {0.3, 0.5});
    const auto clean = sim.gradient(a);
    sim.inject_fault({true});
    const auto broken = sim.gradient(a);
    REQUIRE(broken[0] == -clean[0]);
    REQUIRE(broken[2] == clean[2]);
}
