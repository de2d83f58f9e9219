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

// qaoa-greedy command-line front end.
//
// Exit codes: 0 ok, 1 partial failure, 2 total failure or bad input.

#include "qaoa_greedy/qaoa_greedy.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace qg = qaoa_greedy;

namespace {

constexpr int kOk = 0;
constexpr int kPartial = 1;
constexpr int kFailure = 2;

void emit(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        qg::write_text_file(path, text);
    }
}

void add_optimizer_flags(CLI::App *cmd, qg::StrategyOptions &o) {
    cmd->add_option("--tol-grad", o.optimizer.tol_grad, "Gradient infinity-norm tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", o.optimizer.max_iter, "Optimizer iteration limit")->check(CLI::NonNegativeNumber);
    cmd->add_option("--grid-resolution", o.grid_resolution, "Points per axis of the depth-1 grid")
        ->check(CLI::Range(8, 4096));
    cmd->add_option("--eps", o.eps, "Offset along the index-1 direction")->check(CLI::PositiveNumber);
    cmd->add_flag("--nonsymmetric", o.use_nonsymmetric, "Also descend from non-symmetric transition states");
    cmd->add_flag("--approx-direction", o.approx_direction, "Use the localized index-1 direction guess");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Recursive transition-state initialization of QAOA for MaxCut"};
    app.require_subcommand(1);

    // gen-graph
    auto *gen = app.add_subcommand("gen-graph", "Generate graph instances");
    std::string ens_name = "RRG3";
    int gen_n = 10;
    std::uint64_t gen_seed = 0;
    std::optional<double> p_edge;
    int gen_count = 1;
    std::string gen_out;
    gen->add_option("--ensemble", ens_name, "RRG3, WRRG3 or ER");
    gen->add_option("--n", gen_n, "Vertex count")->check(CLI::Range(2, qg::kMaxQubits));
    gen->add_option("--seed", gen_seed, "Seed");
    gen->add_option("--p-edge", p_edge, "Edge probability for ER");
    gen->add_option("--count", gen_count, "Number of distinct connected instances")->check(CLI::PositiveNumber);
    gen->add_option("--out", gen_out, "Output JSON (stdout if omitted)");

    // run
    auto *run = app.add_subcommand("run", "Run one strategy on one graph");
    std::string strategy_name = "greedy";
    std::string run_graph;
    int run_pmax = 4;
    std::string run_out;
    qg::StrategyOptions run_opts;
    run->add_option("--strategy", strategy_name, "greedy, interp, tqa or global");
    run->add_option("--graph", run_graph, "Graph JSON")->required();
    run->add_option("--p-max", run_pmax, "Maximum depth")->check(CLI::Range(1, 12));
    run->add_option("--seed", run_opts.seed, "Seed for the multistart baseline");
    run->add_option("--out", run_out, "Results JSON (stdout if omitted)");
    run->add_flag("--tqa-swap", run_opts.tqa_swap, "Exchange the beta and gamma ramps of TQA");
    add_optimizer_flags(run, run_opts);

    // initgraph
    auto *ig = app.add_subcommand("initgraph", "Build the initialization graph of minima");
    std::string ig_graph;
    int ig_pmax = 4;
    std::string ig_out;
    std::string ig_dot;
    qg::InitGraphOptions ig_opts;
    ig->add_option("--graph", ig_graph, "Graph JSON")->required();
    ig->add_option("--p-max", ig_pmax, "Maximum depth")->check(CLI::Range(1, 12));
    ig->add_option("--out", ig_out, "Graph JSON (stdout if omitted)");
    ig->add_option("--dot", ig_dot, "Also write Graphviz DOT");
    ig->add_option("--expand-cap", ig_opts.expand_cap, "Nodes expanded per level")->check(CLI::PositiveNumber);
    ig->add_flag("--full", ig_opts.full_expansion, "Expand every node");
    ig->add_option("--dedup-tol", ig_opts.dedup_tol, "Deduplication tolerance")->check(CLI::PositiveNumber);
    add_optimizer_flags(ig, ig_opts.strategy);

    // verify
    auto *ver = app.add_subcommand("verify", "Run the property verification suite");
    std::string ver_config;
    std::string ver_report;
    bool inject_fault = false;
    ver->add_option("--config", ver_config, "JSON with seed and case counts");
    ver->add_option("--report", ver_report, "Report JSON (stdout if omitted)");
    ver->add_flag("--inject-mixer-fault", inject_fault, "Flip the mixer generator sign in the gradient");

    // experiment
    auto *exp = app.add_subcommand("experiment", "Run an ensemble sweep from a config file");
    std::string exp_config;
    std::string exp_out;
    std::string exp_csv;
    exp->add_option("--config", exp_config, "Experiment config JSON")->required();
    exp->add_option("--out", exp_out, "Results JSON (overrides the config)");
    exp->add_option("--csv", exp_csv, "Aggregate CSV (overrides the config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kFailure;
    }

    try {
        if (*gen) {
            const auto ensemble = qg::ensemble_from_string(ens_name);
            if (gen_count == 1) {
                emit(gen_out, qg::graph_document(qg::generate_graph(ensemble, gen_n, gen_seed, p_edge)).dump(2) + "\n");
            } else {
                auto doc = qg::make_document("graphs");
                doc["graphs"] = qg::Json::array();
                for (const auto &g : qg::generate_ensemble(ensemble, gen_n, gen_count, gen_seed, p_edge)) {
                    doc["graphs"].push_back(qg::to_json(g));
                }
                emit(gen_out, doc.dump(2) + "\n");
            }
            return kOk;
        }
        if (*run) {
            const auto g = qg::graph_from_document(qg::read_json_file(run_graph));
            const qg::Simulator sim(g);
            const auto result = qg::run_strategy(sim, qg::strategy_from_string(strategy_name), run_pmax, run_opts);
            emit(run_out, qg::run_document(g, result).dump(2) + "\n");
            if (!result.complete) {
                std::cerr << "run stopped early: " << result.error << "\n";
                return result.per_depth.empty() ? kFailure : kPartial;
            }
            return kOk;
        }
        if (*ig) {
            const auto g = qg::graph_from_document(qg::read_json_file(ig_graph));
            const qg::Simulator sim(g);
            const auto gr = qg::build_init_graph(sim, ig_pmax, ig_opts);
            emit(ig_out, qg::init_graph_document(g, gr).dump(2) + "\n");
            if (!ig_dot.empty()) {
                qg::write_text_file(ig_dot, qg::export_dot(gr));
            }
            return static_cast<int>(gr.levels.size()) == ig_pmax ? kOk : kPartial;
        }
        if (*ver) {
            qg::VerifyConfig vc;
            if (!ver_config.empty()) {
                const auto j = qg::read_json_file(ver_config);
                vc.seed = j.value("seed", vc.seed);
                vc.gradient_cases = j.value("gradient_cases", vc.gradient_cases);
                vc.symmetry_cases = j.value("symmetry_cases", vc.symmetry_cases);
                vc.ts_instances = j.value("ts_instances", vc.ts_instances);
                vc.ts_p_max = j.value("ts_p_max", vc.ts_p_max);
                vc.greedy_n = j.value("greedy_n", vc.greedy_n);
                vc.greedy_p_max = j.value("greedy_p_max", vc.greedy_p_max);
            }
            vc.fault.flip_mixer_generator_sign = inject_fault;
            const auto rep = qg::verify_suite(vc);
            emit(ver_report, qg::verify_document(rep).dump(2) + "\n");
            for (const auto &p : rep.properties) {
                std::cerr << (p.passed ? "PASS " : "FAIL ") << p.name << " residual=" << p.residual
                          << " threshold=" << p.threshold << "\n";
            }
            return rep.passed() ? kOk : kPartial;
        }
        if (*exp) {
            auto cfg = qg::experiment_config_from_document(qg::read_json_file(exp_config));
            if (!exp_out.empty()) {
                cfg.json_out = exp_out;
            }
            if (!exp_csv.empty()) {
                cfg.csv_out = exp_csv;
            }
            const auto res = qg::run_experiment(cfg);
            const std::string csv = qg::aggregates_csv(res.aggregates);
            if (!cfg.json_out.empty()) {
                qg::write_json_file(cfg.json_out, qg::results_document(res));
            }
            emit(cfg.csv_out, csv);
            const int failed = res.failed_instances();
            if (failed == 0) {
                return kOk;
            }
            return failed == static_cast<int>(res.instances.size()) ? kFailure : kPartial;
        }
    } catch (const qg::Error &e) {
        std::cerr << "error (" << qg::to_string(e.kind()) << "): " << e.what() << "\n";
        return kFailure;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
