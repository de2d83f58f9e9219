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

#include <numbers>

using namespace qaoa_greedy;

TEST_CASE("single edge depth-1 optimum from a nearby start", "[optimizer]") {
    const auto g = oracle::single_edge();
    const Simulator sim(g);
    const auto pt = local_minimize(sim, AngleVector({0.1}, {0.1}));
    REQUIRE(pt.converged);
    REQUIRE(pt.grad_norm < 1e-8);
    REQUIRE(pt.classification == Classification::Minimum);
    // Fine scan of the dense energy locates the global depth-1 value.
    double best = 1e9;
    constexpr int m = 400;
    for (int i = 0; i <= m; ++i) {
        for (int k = 0; k <= m; ++k) {
            const double b = -std::numbers::pi / 4 + std::numbers::pi / 2 * i / m;
            const double c = std::numbers::pi * k / m - std::numbers::pi / 2;
            best = std::min(best, oracle::energy(g, AngleVector({b}, {c})));
        }
    }
    REQUIRE(pt.energy <= best + 1e-9);
    REQUIRE(std::abs(pt.energy - (-1.0)) < 1e-9); // one edge can be cut exactly at p = 1
}

TEST_CASE("starting at a minimum is a fixed point", "[optimizer]") {
    const Simulator sim(generate_graph(Ensemble::RRG3, 8, 1));
    const auto m = grid_search_p1(sim, 12);
    const auto again = local_minimize(sim, m.angles);
    REQUIRE(again.iterations <= 1);
    REQUIRE(std::abs(again.energy - m.energy) < 1e-12);
}

TEST_CASE("descent never raises the energy and classification is reproducible", "[optimizer]") {
    SplitMix64 rng(17);
    const Simulator sim(generate_graph(Ensemble::RRG3, 8, 4));
    for (int k = 0; k < 10; ++k) {
        const auto a = oracle::random_angles(rng, 1 + k % 4);
        const auto pt = local_minimize(sim, a);
        REQUIRE(pt.energy <= sim.energy(a) + 1e-12);
        REQUIRE(pt.converged);
        if (pt.classification == Classification::Minimum) {
            REQUIRE(sim.hessian(pt.angles).inertia == Inertia{0, 0, static_cast<int>(pt.angles.size())});
        }
    }
}

TEST_CASE("optimizer is deterministic", "[optimizer]") {
    const Simulator sim(generate_graph(Ensemble::WRRG3, 8, 2));
    const AngleVector a({0.2, 0.1, -0.3}, {0.5, 0.2, 0.4});
    const auto x = local_minimize(sim, a);
    const auto y = local_minimize(sim, a);
    REQUIRE(x.angles == y.angles);
    REQUIRE(x.energy == y.energy);
    REQUIRE(x.iterations == y.iterations);
}

TEST_CASE("iteration limit yields an unclassified result", "[optimizer]") {
    const Simulator sim(generate_graph(Ensemble::RRG3, 8, 4));
    OptimizerOptions o;
    o.max_iter = 1;
    o.newton_polish_steps = 0;
    const auto pt = local_minimize(sim, AngleVector({0.3, 0.1, 0.2}, {0.2, 0.6, 0.1}), o);
    REQUIRE_FALSE(pt.converged);
    REQUIRE(pt.classification == Classification::Unclassified);
    REQUIRE_FALSE(pt.inertia.has_value());
}

TEST_CASE("grid search finds the multistart optimum", "[optimizer]") {
    const auto g = oracle::single_edge();
    const Simulator sim(g);
    const auto grid = grid_search_p1(sim);
    REQUIRE(grid.grad_norm < 1e-8);
    REQUIRE(in_fundamental_region(grid.angles, sim.symmetry()));
    const auto ms = random_multistart(sim, 1, 1000, 99);
    REQUIRE(std::abs(grid.energy - ms.energy) < 1e-9);
}

TEST_CASE("grid search on K4 is resolution independent", "[optimizer]") {
    const Simulator sim(oracle::complete_graph(4));
    const auto a = grid_search_p1(sim, 32);
    const auto b = grid_search_p1(sim, 64);
    REQUIRE(std::abs(a.energy - b.energy) < 1e-9);
    REQUIRE(a.classification == Classification::Minimum);
}

TEST_CASE("grid search rejects tiny resolutions", "[optimizer]") {
    const Simulator sim(oracle::complete_graph(4));
    REQUIRE_THROWS_AS(grid_search_p1(sim, 4), Error);
}

TEST_CASE("inertia classification", "[optimizer]") {
    REQUIRE(classify_inertia({0, 0, 4}) == Classification::Minimum);
    REQUIRE(classify_inertia({1, 0, 3}) == Classification::TransitionState);
    REQUIRE(classify_inertia({1, 1, 2}) == Classification::Singular);
    REQUIRE(classify_inertia({2, 0, 2}) == Classification::Other);
}

TEST_CASE("zero eigenvalues under the relative tolerance are singular", "[optimizer]") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m(0, 0) = 2.0;
    m(1, 1) = -1.0;
    m(2, 2) = 1e-9;
    const auto h = make_hessian(m);
    REQUIRE(h.inertia == Inertia{1, 1, 1});
}
