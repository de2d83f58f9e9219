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
 * JSON forms of the library types. Every top-level document carries
 * "schema_version" and "kind"; validate_document checks both plus the
 * required keys of that kind. Doubles round-trip exactly.
 */
#pragma once

#include "angles.hpp"
#include "error.hpp"
#include "initgraph.hpp"
#include "landscape.hpp"
#include "optimizer.hpp"
#include "problem.hpp"
#include "strategies.hpp"

#include "json.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace qaoa_greedy {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Enum names

[[nodiscard]] inline Classification classification_from_string(std::string_view s) {
    for (auto c : {Classification::Minimum, Classification::TransitionState, Classification::Singular,
                   Classification::Other, Classification::Unclassified}) {
        if (to_string(c) == s) {
            return c;
        }
    }
    fail(ErrorKind::UnknownFormat, "unknown classification: " + std::string(s));
}

[[nodiscard]] inline Provenance provenance_from_string(std::string_view s) {
    for (auto p : {Provenance::Grid, Provenance::TsDescentPlus, Provenance::TsDescentMinus, Provenance::Interp,
                   Provenance::Tqa, Provenance::Random, Provenance::Initial}) {
        if (to_string(p) == s) {
            return p;
        }
    }
    fail(ErrorKind::UnknownFormat, "unknown provenance: " + std::string(s));
}

// ---------------------------------------------------------------------------
// Value types

/// Flat array [beta..., gamma...].
[[nodiscard]] inline Json to_json(const AngleVector &a) { return a.flat(); }

[[nodiscard]] inline AngleVector angles_from_json(const Json &j) {
    return AngleVector::from_flat(j.get<std::vector<double>>());
}

[[nodiscard]] inline Json to_json(const Inertia &in) { return Json::array({in.negative, in.zero, in.positive}); }

[[nodiscard]] inline Inertia inertia_from_json(const Json &j) {
    require(j.is_array() && j.size() == 3, ErrorKind::UnknownFormat, "inertia must be a triple");
    return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

[[nodiscard]] inline Json to_json(const ProblemGraph &g) {
    Json edges = Json::array();
    for (const auto &e : g.edges) {
        edges.push_back(Json::array({e.u, e.v, e.w}));
    }
    Json j{{"n", g.n}, {"edges", edges}, {"ensemble", std::string(to_string(g.ensemble))}, {"seed", g.seed}};
    j["p_edge"] = g.p_edge ? Json(*g.p_edge) : Json(nullptr);
    return j;
}

[[nodiscard]] inline ProblemGraph graph_from_json(const Json &j) {
    ProblemGraph g;
    g.n = j.at("n").get<int>();
    for (const auto &e : j.at("edges")) {
        require(e.is_array() && (e.size() == 2 || e.size() == 3), ErrorKind::UnknownFormat,
                "edges must be [u, v] or [u, v, w]");
        g.edges.push_back({e[0].get<int>(), e[1].get<int>(), e.size() == 3 ? e[2].get<double>() : 1.0});
    }
    g.ensemble = j.contains("ensemble") ? ensemble_from_string(j["ensemble"].get<std::string>()) : Ensemble::Custom;
    g.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("p_edge") && !j["p_edge"].is_null()) {
        g.p_edge = j["p_edge"].get<double>();
    }
    validate(g);
    return g;
}

[[nodiscard]] inline Json to_json(const StationaryPoint &pt) {
    Json j{{"angles", to_json(pt.angles)},
           {"energy", pt.energy},
           {"grad_norm", pt.grad_norm},
           {"classification", std::string(to_string(pt.classification))},
           {"iterations", pt.iterations},
           {"provenance", std::string(to_string(pt.provenance))},
           {"converged", pt.converged}};
    j["inertia"] = pt.inertia ? to_json(*pt.inertia) : Json(nullptr);
    return j;
}

[[nodiscard]] inline StationaryPoint stationary_point_from_json(const Json &j) {
    StationaryPoint pt;
    pt.angles = angles_from_json(j.at("angles"));
    pt.energy = j.at("energy").get<double>();
    pt.grad_norm = j.at("grad_norm").get<double>();
    pt.classification = classification_from_string(j.at("classification").get<std::string>());
    pt.iterations = j.value("iterations", 0);
    pt.provenance = provenance_from_string(j.value("provenance", std::string("INITIAL")));
    pt.converged = j.value("converged", false);
    if (j.contains("inertia") && !j["inertia"].is_null()) {
        pt.inertia = inertia_from_json(j["inertia"]);
    }
    return pt;
}

[[nodiscard]] inline Json to_json(const TransitionStateRecord &ts) {
    return {{"angles", to_json(ts.angles)},       {"parent_id", ts.parent_id},
            {"insert_beta", ts.insert_beta},      {"insert_gamma", ts.insert_gamma},
            {"kind", std::string(to_string(ts.kind))}, {"energy", ts.energy}};
}

[[nodiscard]] inline Json to_json(const OptimizerOptions &o) {
    return {{"tol_grad", o.tol_grad}, {"max_iter", o.max_iter}, {"h_fd", o.h_fd}, {"tol_eig", o.tol_eig}};
}

[[nodiscard]] inline OptimizerOptions optimizer_options_from_json(const Json &j) {
    OptimizerOptions o;
    o.tol_grad = j.value("tol_grad", o.tol_grad);
    o.max_iter = j.value("max_iter", o.max_iter);
    o.h_fd = j.value("h_fd", o.h_fd);
    o.tol_eig = j.value("tol_eig", o.tol_eig);
    return o;
}

[[nodiscard]] inline Json to_json(const StrategyOptions &o) {
    return {{"optimizer", to_json(o.optimizer)},
            {"grid_resolution", o.grid_resolution},
            {"eps", o.eps},
            {"use_nonsymmetric", o.use_nonsymmetric},
            {"approx_direction", o.approx_direction},
            {"dt_grid", o.dt_grid},
            {"tqa_swap", o.tqa_swap},
            {"seed", o.seed},
            {"max_starts", o.max_starts},
            {"tie_tol", o.tie_tol},
            {"tie_break", "energy, then smoothness score, then folded angles"},
            {"multistart", "Halton sequence with seeded Cranley-Patterson shift"}};
}

[[nodiscard]] inline StrategyOptions strategy_options_from_json(const Json &j) {
    StrategyOptions o;
    if (j.contains("optimizer")) {
        o.optimizer = optimizer_options_from_json(j["optimizer"]);
    }
    o.grid_resolution = j.value("grid_resolution", o.grid_resolution);
    o.eps = j.value("eps", o.eps);
    o.use_nonsymmetric = j.value("use_nonsymmetric", o.use_nonsymmetric);
    o.approx_direction = j.value("approx_direction", o.approx_direction);
    o.dt_grid = j.value("dt_grid", o.dt_grid);
    o.tqa_swap = j.value("tqa_swap", o.tqa_swap);
    o.seed = j.value("seed", o.seed);
    o.max_starts = j.value("max_starts", o.max_starts);
    o.tie_tol = j.value("tie_tol", o.tie_tol);
    return o;
}

[[nodiscard]] inline Json to_json(const DepthRecord &r) {
    Json j{{"p", r.p},
           {"energy", r.best.energy},
           {"ratio", r.ratio},
           {"angles", to_json(r.best.angles)},
           {"grad_norm", r.best.grad_norm},
           {"classification", std::string(to_string(r.best.classification))},
           {"converged", r.best.converged},
           {"iterations", r.best.iterations},
           {"wall_ms", r.wall_ms}};
    j["inertia"] = r.best.inertia ? to_json(*r.best.inertia) : Json(nullptr);
    if (r.dt) {
        j["dt"] = *r.dt;
    }
    if (r.descents > 0) {
        j["descents"] = r.descents;
        j["singular_ts"] = r.singular_ts;
        j["failed_branches"] = r.failed_branches;
    }
    if (r.starts > 0) {
        j["starts"] = r.starts;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Documents

[[nodiscard]] inline Json make_document(std::string_view kind) {
    return {{"schema_version", kSchemaVersion}, {"kind", std::string(kind)}};
}

/// Throws UnknownFormat unless `j` is a version-1 document of `kind` with its
/// required keys.
inline void validate_document(const Json &j, std::string_view kind) {
    require(j.is_object(), ErrorKind::UnknownFormat, "document must be a JSON object");
    require(j.contains("schema_version") && j["schema_version"] == kSchemaVersion, ErrorKind::UnknownFormat,
            "unsupported or missing schema_version");
    require(j.contains("kind") && j["kind"] == kind, ErrorKind::UnknownFormat,
            "expected a document of kind " + std::string(kind));
    static const std::map<std::string, std::vector<std::string>, std::less<>> required = {
        {"graph", {"graph"}},
        {"graphs", {"graphs"}},
        {"run", {"graph", "strategy", "config", "per_depth", "complete"}},
        {"init_graph", {"graph", "options", "nodes", "edges", "levels", "fit"}},
        {"experiment_config", {"config"}},
        {"experiment_results", {"config", "records", "aggregates"}},
        {"verify_report", {"properties", "passed"}},
    };
    const auto it = required.find(kind);
    require(it != required.end(), ErrorKind::UnknownFormat, "unknown document kind " + std::string(kind));
    for (const auto &key : it->second) {
        require(j.contains(key), ErrorKind::UnknownFormat, "document is missing key '" + key + "'");
    }
}

[[nodiscard]] inline Json graph_document(const ProblemGraph &g) {
    Json j = make_document("graph");
    j["graph"] = to_json(g);
    return j;
}

/// Accepts a "graph" document, a "graphs" document (first entry) or a bare
/// graph object.
[[nodiscard]] inline ProblemGraph graph_from_document(const Json &j) {
    if (j.contains("kind") && j["kind"] == "graphs") {
        validate_document(j, "graphs");
        require(!j["graphs"].empty(), ErrorKind::UnknownFormat, "graph list is empty");
        return graph_from_json(j["graphs"][0]);
    }
    if (j.contains("schema_version")) {
        validate_document(j, "graph");
        return graph_from_json(j["graph"]);
    }
    return graph_from_json(j);
}

[[nodiscard]] inline Json run_document(const ProblemGraph &g, const StrategyRun &run) {
    Json j = make_document("run");
    j["graph"] = to_json(g);
    j["strategy"] = std::string(to_string(run.strategy));
    j["config"] = to_json(run.config);
    Json rows = Json::array();
    for (const auto &r : run.per_depth) {
        rows.push_back(to_json(r));
    }
    j["per_depth"] = rows;
    j["complete"] = run.complete;
    if (!run.error.empty()) {
        j["error"] = run.error;
    }
    return j;
}

[[nodiscard]] inline Json to_json(const InitGraphOptions &o) {
    return {{"dedup_tol", o.dedup_tol},
            {"expand_cap", o.expand_cap},
            {"full_expansion", o.full_expansion},
            {"strategy", to_json(o.strategy)}};
}

[[nodiscard]] inline InitGraphOptions init_graph_options_from_json(const Json &j) {
    InitGraphOptions o;
    o.dedup_tol = j.value("dedup_tol", o.dedup_tol);
    o.expand_cap = j.value("expand_cap", o.expand_cap);
    o.full_expansion = j.value("full_expansion", o.full_expansion);
    if (j.contains("strategy")) {
        o.strategy = strategy_options_from_json(j["strategy"]);
    }
    return o;
}

[[nodiscard]] inline Json init_graph_document(const ProblemGraph &g, const InitGraph &gr) {
    Json j = make_document("init_graph");
    j["graph"] = to_json(g);
    j["options"] = to_json(gr.options);
    Json nodes = Json::array();
    for (const auto &n : gr.nodes) {
        Json node{{"id", n.id},
                  {"p", n.p},
                  {"angles", to_json(n.angles)},
                  {"continuation", to_json(n.continuation)},
                  {"energy", n.energy},
                  {"ratio", n.ratio},
                  {"smoothness", n.smoothness},
                  {"grad_norm", n.grad_norm},
                  {"expanded", n.expanded}};
        node["inertia"] = n.inertia ? to_json(*n.inertia) : Json(nullptr);
        nodes.push_back(std::move(node));
    }
    j["nodes"] = nodes;
    Json edges = Json::array();
    for (const auto &e : gr.edges) {
        edges.push_back({{"parent", e.parent},
                         {"child", e.child},
                         {"insert_beta", e.insert_beta},
                         {"insert_gamma", e.insert_gamma},
                         {"sign", e.sign}});
    }
    j["edges"] = edges;
    Json levels = Json::object();
    for (const auto &[p, ids] : gr.levels) {
        levels[std::to_string(p)] = ids;
    }
    j["levels"] = levels;
    j["singular_ts"] = gr.singular_ts;
    j["failed_branches"] = gr.failed_branches;
    if (gr.levels.size() >= 2) {
        const auto fit = fit_level_counts(gr);
        j["fit"] = {{"amplitude", fit.amplitude}, {"rate", fit.rate}, {"points", fit.points}};
    } else {
        j["fit"] = nullptr;
    }
    return j;
}

[[nodiscard]] inline InitGraph init_graph_from_document(const Json &j) {
    validate_document(j, "init_graph");
    InitGraph gr;
    gr.options = init_graph_options_from_json(j["options"]);
    for (const auto &node : j["nodes"]) {
        InitNode n;
        n.id = node.at("id").get<std::size_t>();
        n.p = node.at("p").get<int>();
        n.angles = angles_from_json(node.at("angles"));
        n.continuation = angles_from_json(node.at("continuation"));
        n.energy = node.at("energy").get<double>();
        n.ratio = node.at("ratio").get<double>();
        n.smoothness = node.at("smoothness").get<double>();
        n.grad_norm = node.at("grad_norm").get<double>();
        n.expanded = node.at("expanded").get<bool>();
        if (!node.at("inertia").is_null()) {
            n.inertia = inertia_from_json(node["inertia"]);
        }
        require(n.id == gr.nodes.size(), ErrorKind::UnknownFormat, "node ids must be consecutive");
        gr.nodes.push_back(std::move(n));
    }
    for (const auto &e : j["edges"]) {
        InitEdge edge{e.at("parent").get<std::size_t>(), e.at("child").get<std::size_t>(),
                      e.at("insert_beta").get<int>(), e.at("insert_gamma").get<int>(), e.at("sign").get<int>()};
        require(edge.parent < gr.nodes.size() && edge.child < gr.nodes.size(), ErrorKind::UnknownFormat,
                "edge refers to a missing node");
        gr.edges.push_back(edge);
    }
    for (const auto &[key, ids] : j["levels"].items()) {
        gr.levels[std::stoi(key)] = ids.get<std::vector<std::size_t>>();
    }
    gr.singular_ts = j.value("singular_ts", 0);
    gr.failed_branches = j.value("failed_branches", 0);
    return gr;
}

// ---------------------------------------------------------------------------
// Files

[[nodiscard]] inline std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorKind::Io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(out.good(), ErrorKind::Io, "cannot write " + path);
    out << text;
    require(out.good(), ErrorKind::Io, "write failed for " + path);
}

[[nodiscard]] inline Json read_json_file(const std::string &path) {
    try {
        return Json::parse(read_text_file(path));
    } catch (const Json::parse_error &e) {
        fail(ErrorKind::UnknownFormat, path + ": " + e.what());
    }
}

inline void write_json_file(const std::string &path, const Json &j) { write_text_file(path, j.dump(2) + "\n"); }

} // namespace qaoa_greedy
