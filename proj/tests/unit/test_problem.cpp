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

ErrorKind kind_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::Io;
}

} // namespace

TEST_CASE("RRG3 on four vertices is K4", "[problem]") {
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
        const auto g = generate_graph(Ensemble::RRG3, 4, seed);
        REQUIRE(g.edges.size() == 6);
        REQUIRE(g.edges == oracle::complete_graph(4).edges);
    }
}

TEST_CASE("regular ensembles are 3-regular and simple", "[problem]") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (auto ens : {Ensemble::RRG3, Ensemble::WRRG3}) {
            const auto g = generate_graph(ens, 10, seed);
            REQUIRE(g.edges.size() == 15);
            for (int d : g.degrees()) {
                REQUIRE(d == 3);
            }
            REQUIRE_NOTHROW(validate(g));
            for (const auto &e : g.edges) {
                if (ens == Ensemble::WRRG3) {
                    REQUIRE(e.w >= 0.0);
                    REQUIRE(e.w < 1.0);
                } else {
                    REQUIRE(e.w == 1.0);
                }
            }
        }
    }
}

TEST_CASE("generation is deterministic in the seed", "[problem]") {
    REQUIRE(generate_graph(Ensemble::RRG3, 12, 5) == generate_graph(Ensemble::RRG3, 12, 5));
    REQUIRE(generate_graph(Ensemble::ER, 10, 5) == generate_graph(Ensemble::ER, 10, 5));
    REQUIRE_FALSE(generate_graph(Ensemble::RRG3, 12, 5) == generate_graph(Ensemble::RRG3, 12, 6));
}

TEST_CASE("odd vertex count cannot be 3-regular", "[problem]") {
    REQUIRE(kind_of([] { (void)generate_graph(Ensemble::RRG3, 7, 0); }) == ErrorKind::Infeasible);
    REQUIRE(kind_of([] { (void)generate_graph(Ensemble::ER, 6, 0, 1.5); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("ER edge density is near p_E on average", "[problem]") {
    double edges = 0.0;
    constexpr int trials = 200;
    for (int s = 0; s < trials; ++s) {
        const auto g = generate_graph(Ensemble::ER, 10, static_cast<std::uint64_t>(s), 0.5);
        REQUIRE(g.p_edge == 0.5);
        edges += static_cast<double>(g.edges.size());
    }
    // 45 pairs, p = 0.5: mean 22.5, std of the mean ~ 3.35 / sqrt(200)
    REQUIRE(std::abs(edges / trials - 22.5) < 1.0);
}

TEST_CASE("cost diagonal of small graphs", "[problem]") {
    const auto d = cost_diagonal(oracle::single_edge());
    REQUIRE(d.values == std::vector<double>{1, -1, -1, 1});
    REQUIRE(d.c_min == -1.0);
    REQUIRE(cost_diagonal(oracle::complete_graph(3)).c_min == -1.0);
    REQUIRE(maxcut_optimum(oracle::complete_graph(4)).c_min == -2.0);
    const auto sol = maxcut_optimum(oracle::single_edge());
    REQUIRE(sol.argmin == std::vector<std::uint64_t>{1, 2});
}

TEST_CASE("cost diagonal matches the Pauli-Z operator sum", "[problem]") {
    const auto g = generate_graph(Ensemble::WRRG3, 6, 3);
    const auto d = cost_diagonal(g);
    const auto h = oracle::cost_matrix(g);
    for (std::size_t z = 0; z < d.values.size(); ++z) {
        REQUIRE(std::abs(h(static_cast<Eigen::Index>(z), static_cast<Eigen::Index>(z)).real() - d.values[z]) < 1e-12);
    }
}

TEST_CASE("optimum equals exhaustive partition scan", "[problem]") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        for (auto ens : {Ensemble::RRG3, Ensemble::ER, Ensemble::WRRG3}) {
            const auto g = generate_graph(ens, 10, seed);
            const auto sol = maxcut_optimum(g);
            REQUIRE(std::abs(sol.c_min - oracle::brute_force_min_cost(g)) < 1e-12);
            // argmin closed under the global bit flip
            const std::uint64_t mask = (std::uint64_t{1} << g.n) - 1;
            for (auto z : sol.argmin) {
                REQUIRE(std::binary_search(sol.argmin.begin(), sol.argmin.end(), z ^ mask));
            }
        }
    }
}

TEST_CASE("unweighted spectrum is integral and flip-symmetric", "[problem]") {
    const auto g = generate_graph(Ensemble::RRG3, 8, 1);
    const auto d = cost_diagonal(g);
    const std::size_t mask = d.values.size() - 1;
    for (std::size_t z = 0; z < d.values.size(); ++z) {
        REQUIRE(d.values[z] == std::round(d.values[z]));
        REQUIRE(std::abs(d.values[z]) <= 15.0);
        REQUIRE(d.values[z] == d.values[z ^ mask]);
    }
}

TEST_CASE("capacity limit is enforced", "[problem]") {
    ProblemGraph g;
    g.n = kMaxQubits + 1;
    g.edges = {{0, 1, 1.0}};
    REQUIRE(kind_of([&] { (void)cost_diagonal(g); }) == ErrorKind::Capacity);
}

TEST_CASE("invalid graphs are rejected", "[problem]") {
    ProblemGraph g;
    g.n = 3;
    g.edges = {{0, 1, 1.0}, {0, 1, 1.0}};
    REQUIRE(kind_of([&] { validate(g); }) == ErrorKind::InvalidArgument);
    g.edges = {{1, 1, 1.0}};
    REQUIRE(kind_of([&] { validate(g); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("ensemble of 19 distinct connected cubic graphs on ten vertices", "[problem]") {
    const auto gs = generate_ensemble(Ensemble::RRG3, 10, 19, 2024);
    REQUIRE(gs.size() == 19);
    for (std::size_t i = 0; i < gs.size(); ++i) {
        REQUIRE(is_connected(gs[i]));
        for (std::size_t j = 0; j < i; ++j) {
            const auto a = spectral_signature(gs[i]);
            const auto b = spectral_signature(gs[j]);
            double diff = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) {
                diff = std::max(diff, std::abs(a[k] - b[k]));
            }
            REQUIRE(diff > 1e-8);
        }
    }
}

TEST_CASE("landscape symmetry class", "[problem]") {
    REQUIRE(landscape_symmetry(oracle::complete_graph(4)) == LandscapeSymmetry::OddDegree);
    REQUIRE(landscape_symmetry(oracle::complete_graph(3)) == LandscapeSymmetry::IntegerWeights);
    REQUIRE(landscape_symmetry(generate_graph(Ensemble::WRRG3, 6, 0)) == LandscapeSymmetry::Generic);
}

TEST_CASE("graph JSON round trip", "[problem]") {
    for (auto ens : {Ensemble::RRG3, Ensemble::WRRG3, Ensemble::ER}) {
        const auto g = generate_graph(ens, 8, 11);
        REQUIRE(graph_from_document(Json::parse(graph_document(g).dump())) == g);
    }
}
