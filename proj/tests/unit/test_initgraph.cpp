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

namespace {

InitGraphOptions fast() {
    InitGraphOptions o;
    o.strategy.grid_resolution = 12;
    o.full_expansion = true;
    return o;
}

StationaryPoint point(AngleVector a, double e) {
    StationaryPoint pt;
    pt.angles = std::move(a);
    pt.energy = e;
    return pt;
}

} // namespace

TEST_CASE("dedup merges duplicates and symmetry images", "[initgraph]") {
    const auto sym = LandscapeSymmetry::OddDegree;
    const AngleVector a({0.1, -0.2}, {0.3, 0.1});
    REQUIRE(dedup_minima({point(a, -2.0), point(a, -2.0)}, sym).size() == 1);
    AngleVector img = a;
    apply_tail_flip(img, 1, 1.0);
    apply_beta_half_period(img, 0);
    REQUIRE(dedup_minima({point(a, -2.0), point(img, -2.0)}, sym).size() == 1);
    const AngleVector other({0.2, -0.2}, {0.3, 0.1});
    REQUIRE(dedup_minima({point(a, -2.0), point(other, -1.5)}, sym).size() == 2);
}

TEST_CASE("dedup is idempotent and keeps the lowest energy", "[initgraph]") {
    SplitMix64 rng(2);
    std::vector<StationaryPoint> pts;
    for (int k = 0; k < 40; ++k) {
        pts.push_back(point(oracle::random_angles(rng, 3), -static_cast<double>(k % 7)));
        pts.push_back(pts.back()); // exact copy
    }
    const auto once = dedup_minima(pts, LandscapeSymmetry::OddDegree);
    const auto twice = dedup_minima(once, LandscapeSymmetry::OddDegree);
    REQUIRE(once.size() == twice.size());
    for (std::size_t i = 0; i < once.size(); ++i) {
        REQUIRE(once[i].angles == twice[i].angles);
    }
    REQUIRE(once.front().energy == -6.0);
}

TEST_CASE("naive minima bound", "[initgraph]") {
    REQUIRE(naive_minima_bound(1) == 1.0);
    REQUIRE(naive_minima_bound(2) == 4.0);
    REQUIRE(naive_minima_bound(3) == 24.0);
    REQUIRE(naive_minima_bound(4) == 192.0);
}

TEST_CASE("exponential fit recovers an exact exponential", "[initgraph]") {
    std::vector<int> ps{1, 2, 3, 4, 5};
    std::vector<int> counts;
    for (int p : ps) {
        counts.push_back(static_cast<int>(std::lround(3.0 * std::exp(0.9 * p) * 1000.0)));
    }
    const auto fit = fit_exponential(ps, counts);
    REQUIRE(fit.rate == Catch::Approx(0.9).epsilon(1e-4));
    REQUIRE(fit.amplitude == Catch::Approx(3000.0).epsilon(1e-3));
    REQUIRE_THROWS_AS(fit_exponential({1}, {3}), Error);
}

TEST_CASE("initialization graph structure", "[initgraph]") {
    const Simulator sim(generate_graph(Ensemble::RRG3, 8, 1));
    const auto gr = build_init_graph(sim, 4, fast());
    REQUIRE(gr.levels.size() == 4);
    REQUIRE(gr.levels.at(1).size() == 1);
    REQUIRE(gr.levels.at(2).size() <= 4);
    double prev_best = 0.0;
    for (const auto &[p, ids] : gr.levels) {
        REQUIRE(static_cast<double>(ids.size()) <= naive_minima_bound(p));
        double best = 1e9;
        for (auto id : ids) {
            REQUIRE(gr.nodes[id].p == p);
            REQUIRE(in_fundamental_region(gr.nodes[id].angles, sim.symmetry()));
            best = std::min(best, gr.nodes[id].energy);
        }
        if (p > 1) {
            REQUIRE(best <= prev_best + 1e-9);
        }
        prev_best = best;
    }
    std::map<int, int> per_level_edges;
    for (const auto &e : gr.edges) {
        const auto &par = gr.nodes[e.parent];
        const auto &ch = gr.nodes[e.child];
        REQUIRE(ch.p == par.p + 1);
        REQUIRE(ch.energy <= par.energy + 1e-9);
        ++per_level_edges[par.p];
    }
    for (const auto &[p, count] : per_level_edges) {
        REQUIRE(count <= 2 * (p + 1) * static_cast<int>(gr.levels.at(p).size()));
    }
}

TEST_CASE("initialization graph exports", "[initgraph]") {
    const auto g = generate_graph(Ensemble::RRG3, 6, 1);
    const Simulator sim(g);
    const auto gr = build_init_graph(sim, 3, fast());
    const Json doc = init_graph_document(g, gr);
    REQUIRE_NOTHROW(validate_document(doc, "init_graph"));
    REQUIRE(doc["nodes"].size() == gr.nodes.size());
    REQUIRE(doc["edges"].size() == gr.edges.size());
    const auto back = init_graph_from_document(Json::parse(doc.dump()));
    REQUIRE(back == gr);

    const auto dot = export_dot(gr);
    REQUIRE(dot.rfind("digraph", 0) == 0);
    std::size_t labels = 0;
    std::size_t arrows = 0;
    for (std::size_t pos = 0; (pos = dot.find("[label=\"p=", pos)) != std::string::npos; ++pos) {
        ++labels;
    }
    for (std::size_t pos = 0; (pos = dot.find(" -> ", pos)) != std::string::npos; ++pos) {
        ++arrows;
    }
    REQUIRE(labels == gr.nodes.size());
    REQUIRE(arrows == gr.edges.size());
}

TEST_CASE("single-level graph exports one DOT node", "[initgraph]") {
    const Simulator sim(oracle::complete_graph(4));
    const auto gr = build_init_graph(sim, 1, fast());
    REQUIRE(gr.nodes.size() == 1);
    REQUIRE(gr.edges.empty());
    const auto dot = export_dot(gr);
    REQUIRE(dot.find(" -> ") == std::string::npos);
    REQUIRE(dot.find("m0 [label=") != std::string::npos);
}

TEST_CASE("expansion cap limits the expanded nodes", "[initgraph]") {
    const Simulator sim(generate_graph(Ensemble::RRG3, 8, 1));
    InitGraphOptions o = fast();
    o.full_expansion = false;
    o.expand_cap = 1;
    const auto gr = build_init_graph(sim, 3, o);
    int expanded_at_2 = 0;
    for (auto id : gr.levels.at(2)) {
        expanded_at_2 += gr.nodes[id].expanded ? 1 : 0;
    }
    REQUIRE(expanded_at_2 == 1);
    REQUIRE(gr.nodes[gr.levels.at(2).front()].expanded);
}
