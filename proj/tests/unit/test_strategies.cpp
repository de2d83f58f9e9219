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

namespace {

StrategyOptions fast() {
    StrategyOptions o;
    o.grid_resolution = 12;
    return o;
}

} // namespace

TEST_CASE("GREEDY is monotone and counts its descents", "[strategies]") {
    const Simulator sim(generate_graph(Ensemble::RRG3, 8, 1));
    const auto run = greedy_run(sim, 5, fast());
    REQUIRE(run.complete);
    REQUIRE(run.per_depth.size() == 5);
    for (std::size_t i = 1; i < run.per_depth.size(); ++i) {
        const auto &r = run.per_depth[i];
        REQUIRE(r.p == static_cast<int>(i) + 1);
        REQUIRE(r.best.energy <= run.per_depth[i - 1].best.energy + 1e-9);
        REQUIRE(r.descents + 2 * r.singular_ts == 2 * r.p);
        REQUIRE(r.ratio > 0.0);
        REQUIRE(r.ratio <= 1.0);
    }
}

TEST_CASE("all strategies share the depth-1 grid result", "[strategies]") {
    const Simulator sim(generate_graph(Ensemble::RRG3, 6, 3));
    const auto grid = grid_search_p1(sim, 12);
    for (auto s : {Strategy::Greedy, Strategy::Interp, Strategy::Tqa}) {
        const auto run = run_strategy(sim, s, 2, fast());
        REQUIRE(run.per_depth.front().best.angles == grid.angles);
        REQUIRE(run.per_depth.front().best.energy == grid.energy);
    }
}

TEST_CASE("interp_init closed form", "[strategies]") {
    const AngleVector one({0.3}, {0.7});
    REQUIRE(interp_init(one) == AngleVector({0.3, 0.3}, {0.7, 0.7}));
    const AngleVector two({0.2, 0.4}, {0.6, 0.2});
    const auto three = interp_init(two);
    // ((i-1) a_{i-1} + (p+1-i) a_i) / p with p = 2
    REQUIRE(three.beta[0] == Catch::Approx(0.2));
    REQUIRE(three.beta[1] == Catch::Approx(0.3));
    REQUIRE(three.beta[2] == Catch::Approx(0.4));
    REQUIRE(three.gamma[1] == Catch::Approx(0.4));
}

TEST_CASE("interp_init equals the rescaled sum of symmetric transition states", "[strategies]") {
    SplitMix64 rng(9);
    for (int p = 1; p <= 8; ++p) {
        const auto a = oracle::random_angles(rng, p);
        REQUIRE(max_abs_difference(interp_init(a), interp_init_from_ts(a)) < 1e-14);
    }
}

TEST_CASE("interpolated total time grows by (p+1)/p for same-sign patterns", "[strategies]") {
    const AngleVector a({0.1, 0.2, 0.25}, {0.5, 0.4, 0.3});
    const auto t = [](const AngleVector &x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            s += std::abs(x[i]);
        }
        return s;
    };
    REQUIRE(t(interp_init(a)) == Catch::Approx(t(a) * 4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("tqa_init ramps", "[strategies]") {
    const auto a = tqa_init(4, 0.5);
    REQUIRE(a.gamma == std::vector<double>{0.375, 0.25, 0.125, 0.0});
    REQUIRE(a.beta == std::vector<double>{0.125, 0.25, 0.375, 0.5});
    const auto one = tqa_init(1, 0.3);
    REQUIRE(one.gamma == std::vector<double>{0.0});
    REQUIRE(one.beta == std::vector<double>{0.3});
    const auto sw = tqa_init(4, 0.5, true);
    REQUIRE(sw.beta == a.gamma);
    REQUIRE(sw.gamma == a.beta);
    REQUIRE_THROWS_AS(tqa_init(0, 0.5), Error);
    REQUIRE_THROWS_AS(tqa_init(2, -0.5), Error);
}

TEST_CASE("TQA step is the grid argmin of the ramp energy", "[strategies]") {
    const Simulator sim(generate_graph(Ensemble::RRG3, 8, 2));
    const auto grid = default_dt_grid();
    REQUIRE(grid.size() == 19);
    for (int p : {2, 5}) {
        const double dt = select_tqa_dt(sim, p, grid, false);
        const double e = sim.energy(tqa_init(p, dt));
        bool seen = false;
        for (double x : grid) {
            const double ex = sim.energy(tqa_init(p, x));
            REQUIRE(e <= ex);
            if (ex == e && !seen) {
                REQUIRE(x == dt); // smallest minimizer
                seen = true;
            }
        }
    }
}

TEST_CASE("TQA records a step per depth", "[strategies]") {
    const Simulator sim(generate_graph(Ensemble::RRG3, 6, 2));
    const auto run = tqa_run(sim, 3, fast());
    REQUIRE_FALSE(run.per_depth[0].dt.has_value());
    REQUIRE(run.per_depth[1].dt.has_value());
    REQUIRE(run.per_depth[2].dt.has_value());
}

TEST_CASE("multistart with one start is a single minimization", "[strategies]") {
    const Simulator sim(generate_graph(Ensemble::RRG3, 6, 4));
    const auto start = multistart_point(3, 0, 42, sim.symmetry());
    OptimizerOptions o;
    const auto single = local_minimize(sim, start, o);
    const auto ms = random_multistart(sim, 3, 1, 42, o);
    REQUIRE(ms.energy == single.energy);
}

TEST_CASE("multistart is deterministic and in range", "[strategies]") {
    const Simulator sim(generate_graph(Ensemble::RRG3, 6, 4));
    for (std::uint64_t k = 0; k < 50; ++k) {
        const auto a = multistart_point(4, k, 5, sim.symmetry());
        REQUIRE(a == multistart_point(4, k, 5, sim.symmetry()));
        REQUIRE(in_fundamental_region(a, sim.symmetry()));
    }
    const auto x = random_multistart_run(sim, 3, fast());
    const auto y = random_multistart_run(sim, 3, fast());
    for (std::size_t i = 0; i < x.per_depth.size(); ++i) {
        REQUIRE(x.per_depth[i].best.energy == y.per_depth[i].best.energy);
        REQUIRE(x.per_depth[i].starts == (1 << (i + 1)));
    }
}

TEST_CASE("strategy names", "[strategies]") {
    REQUIRE(strategy_from_string("global") == Strategy::RandomMultistart);
    REQUIRE(strategy_from_string("Greedy") == Strategy::Greedy);
    REQUIRE_THROWS_AS(strategy_from_string("annealing"), Error);
}

TEST_CASE("tie-break prefers the smoother pattern", "[strategies]") {
    StationaryPoint rough;
    rough.angles = AngleVector({0.1, -0.3}, {0.2, 0.6});
    rough.energy = -3.0;
    StationaryPoint smooth = rough;
    smooth.angles = AngleVector({0.1, 0.12}, {0.2, 0.25});
    smooth.energy = -3.0 + 1e-12;
    const auto pick = select_best({rough, smooth}, LandscapeSymmetry::OddDegree);
    REQUIRE(pick == 1);
    smooth.energy = -3.0 + 1e-6;
    REQUIRE(select_best({rough, smooth}, LandscapeSymmetry::OddDegree) == 0);
}
