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
 * Ensemble sweeps (config, run, aggregate, CSV) and the built-in property
 * verification suite.
 */
#pragma once

#include "error.hpp"
#include "landscape.hpp"
#include "parallel.hpp"
#include "problem.hpp"
#include "rng.hpp"
#include "serialization.hpp"
#include "simulator.hpp"
#include "strategies.hpp"
#include "symmetry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qaoa_greedy {

// ---------------------------------------------------------------------------
// Configuration

struct ExperimentConfig {
    Ensemble ensemble = Ensemble::RRG3;
    int n = 10;
    int count = 19;
    std::uint64_t seed = 2024; ///< global seed; instance k uses derive_seed(seed, k)
    std::optional<double> p_edge;
    std::vector<Strategy> strategies{Strategy::Greedy, Strategy::Interp, Strategy::Tqa};
    int p_max = 8;
    StrategyOptions options;
    double dedup_tol = kDefaultDedupTolerance;
    std::string json_out;
    std::string csv_out;

    friend bool operator==(const ExperimentConfig &a, const ExperimentConfig &b) {
        return to_json(a) == to_json(b);
    }

    friend Json to_json(const ExperimentConfig &c) {
        Json strategies = Json::array();
        for (auto s : c.strategies) {
            strategies.push_back(std::string(to_string(s)));
        }
        Json j{{"ensemble", std::string(to_string(c.ensemble))},
               {"n", c.n},
               {"count", c.count},
               {"seed", c.seed},
               {"strategies", strategies},
               {"p_max", c.p_max},
               {"options", to_json(c.options)},
               {"dedup_tol", c.dedup_tol},
               {"json_out", c.json_out},
               {"csv_out", c.csv_out}};
        j["p_edge"] = c.p_edge ? Json(*c.p_edge) : Json(nullptr);
        return j;
    }
};

[[nodiscard]] inline ExperimentConfig experiment_config_from_json(const Json &j) {
    ExperimentConfig c;
    c.ensemble = ensemble_from_string(j.value("ensemble", std::string("RRG3")));
    c.n = j.value("n", c.n);
    c.count = j.value("count", c.count);
    c.seed = j.value("seed", c.seed);
    if (j.contains("p_edge") && !j["p_edge"].is_null()) {
        c.p_edge = j["p_edge"].get<double>();
    }
    if (j.contains("strategies")) {
        c.strategies.clear();
        for (const auto &s : j["strategies"]) {
            c.strategies.push_back(strategy_from_string(s.get<std::string>()));
        }
    }
    c.p_max = j.value("p_max", c.p_max);
    if (j.contains("options")) {
        c.options = strategy_options_from_json(j["options"]);
    }
    c.dedup_tol = j.value("dedup_tol", c.dedup_tol);
    c.json_out = j.value("json_out", std::string{});
    c.csv_out = j.value("csv_out", std::string{});
    require(c.n >= 2 && c.count >= 1 && c.p_max >= 1 && !c.strategies.empty(), ErrorKind::InvalidArgument,
            "experiment config out of range");
    return c;
}

[[nodiscard]] inline Json experiment_config_document(const ExperimentConfig &c) {
    Json j = make_document("experiment_config");
    j["config"] = to_json(c);
    return j;
}

/// Accepts an "experiment_config" document or a bare config object.
[[nodiscard]] inline ExperimentConfig experiment_config_from_document(const Json &j) {
    if (j.contains("schema_version")) {
        validate_document(j, "experiment_config");
        return experiment_config_from_json(j["config"]);
    }
    return experiment_config_from_json(j);
}

// ---------------------------------------------------------------------------
// Running

struct InstanceResult {
    std::size_t index = 0;
    ProblemGraph graph;
    std::vector<StrategyRun> runs;
    std::string error; ///< set if the instance failed outright
};

struct Aggregate {
    Strategy strategy = Strategy::Greedy;
    int p = 0;
    double mean_ratio = 0.0;
    double std_ratio = 0.0; ///< sample standard deviation (n-1)
    int n_instances = 0;
};

struct ExperimentResults {
    ExperimentConfig config;
    std::vector<InstanceResult> instances;
    std::vector<Aggregate> aggregates;

    [[nodiscard]] int failed_instances() const {
        return static_cast<int>(std::count_if(instances.begin(), instances.end(), [](const InstanceResult &r) {
            return !r.error.empty() ||
                   std::any_of(r.runs.begin(), r.runs.end(), [](const StrategyRun &s) { return !s.complete; });
        }));
    }

    [[nodiscard]] const Aggregate *find(Strategy s, int p) const {
        for (const auto &a : aggregates) {
            if (a.strategy == s && a.p == p) {
                return &a;
            }
        }
        return nullptr;
    }
};

/// Mean and sample standard deviation per (strategy, p), in config order.
[[nodiscard]] inline std::vector<Aggregate> aggregate(const ExperimentConfig &cfg,
                                                      const std::vector<InstanceResult> &instances) {
    std::vector<Aggregate> out;
    for (std::size_t s = 0; s < cfg.strategies.size(); ++s) {
        for (int p = 1; p <= cfg.p_max; ++p) {
            std::vector<double> ratios;
            for (const auto &inst : instances) {
                if (s >= inst.runs.size()) {
                    continue;
                }
                for (const auto &rec : inst.runs[s].per_depth) {
                    if (rec.p == p) {
                        ratios.push_back(rec.ratio);
                    }
                }
            }
            Aggregate a;
            a.strategy = cfg.strategies[s];
            a.p = p;
            a.n_instances = static_cast<int>(ratios.size());
            if (!ratios.empty()) {
                double sum = 0.0;
                for (double r : ratios) {
                    sum += r;
                }
                a.mean_ratio = sum / static_cast<double>(ratios.size());
                if (ratios.size() > 1) {
                    double ss = 0.0;
                    for (double r : ratios) {
                        ss += (r - a.mean_ratio) * (r - a.mean_ratio);
                    }
                    a.std_ratio = std::sqrt(ss / static_cast<double>(ratios.size() - 1));
                }
            }
            out.push_back(a);
        }
    }
    return out;
}

[[nodiscard]] inline std::vector<ProblemGraph> experiment_instances(const ExperimentConfig &cfg) {
    return generate_ensemble(cfg.ensemble, cfg.n, cfg.count, cfg.seed, cfg.p_edge);
}

/// Runs every configured strategy on every instance; the instance loop is
/// parallel with results merged by index.
[[nodiscard]] inline ExperimentResults run_experiment(const ExperimentConfig &cfg) {
    ExperimentResults res;
    res.config = cfg;
    const auto graphs = experiment_instances(cfg);
    res.instances = parallel_map<InstanceResult>(graphs.size(), [&](std::size_t k) {
        InstanceResult r;
        r.index = k;
        r.graph = graphs[k];
        try {
            const Simulator sim(graphs[k]);
            for (auto s : cfg.strategies) {
                r.runs.push_back(run_strategy(sim, s, cfg.p_max, cfg.options));
            }
        } catch (const Error &e) {
            r.error = e.what();
        }
        return r;
    });
    res.aggregates = aggregate(cfg, res.instances);
    return res;
}

/// CSV: strategy,p,mean_ratio,std_ratio,n_instances (17 significant digits).
[[nodiscard]] inline std::string aggregates_csv(const std::vector<Aggregate> &aggs) {
    std::ostringstream os;
    os.precision(17);
    os << "strategy,p,mean_ratio,std_ratio,n_instances\n";
    for (const auto &a : aggs) {
        os << to_string(a.strategy) << ',' << a.p << ',' << a.mean_ratio << ',' << a.std_ratio << ','
           << a.n_instances << '\n';
    }
    return os.str();
}

[[nodiscard]] inline Json results_document(const ExperimentResults &res) {
    Json j = make_document("experiment_results");
    j["config"] = to_json(res.config);
    Json records = Json::array();
    for (const auto &inst : res.instances) {
        Json runs = Json::array();
        for (const auto &run : inst.runs) {
            Json r = run_document(inst.graph, run);
            r.erase("graph");
            r.erase("config");
            r.erase("schema_version");
            r.erase("kind");
            runs.push_back(std::move(r));
        }
        Json rec{{"index", inst.index}, {"graph", to_json(inst.graph)}, {"runs", runs}};
        if (!inst.error.empty()) {
            rec["error"] = inst.error;
        }
        records.push_back(std::move(rec));
    }
    j["records"] = records;
    Json aggs = Json::array();
    for (const auto &a : res.aggregates) {
        aggs.push_back({{"strategy", std::string(to_string(a.strategy))},
                        {"p", a.p},
                        {"mean_ratio", a.mean_ratio},
                        {"std_ratio", a.std_ratio},
                        {"n_instances", a.n_instances}});
    }
    j["aggregates"] = aggs;
    j["failed_instances"] = res.failed_instances();
    return j;
}

// ---------------------------------------------------------------------------
// Verification suite

struct VerifyConfig {
    std::uint64_t seed = 7;
    int gradient_cases = 50;
    int symmetry_cases = 20;
    int ts_instances = 2;
    int ts_p_max = 3;
    int greedy_n = 8;
    int greedy_p_max = 4;
    FaultInjection fault;
};

struct PropertyResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;  ///< worst measured value
    double threshold = 0.0; ///< pass iff residual < threshold (or the stated rule)
    std::string detail;
};

struct VerifyReport {
    std::vector<PropertyResult> properties;
    int singular_ts = 0;

    [[nodiscard]] bool passed() const {
        return std::all_of(properties.begin(), properties.end(), [](const auto &p) { return p.passed; });
    }
};

namespace detail {

inline AngleVector random_angles(SplitMix64 &rng, int p, double scale = std::numbers::pi) {
    AngleVector a = AngleVector::zeros(static_cast<std::size_t>(p));
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = scale * (2.0 * rng.uniform01() - 1.0);
    }
    return a;
}

inline double fd_gradient_error(const Simulator &sim, const AngleVector &a, double h) {
    const auto g = sim.gradient(a);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        AngleVector plus = a;
        AngleVector minus = a;
        plus[i] += h;
        minus[i] -= h;
        const double fd = (sim.energy(plus) - sim.energy(minus)) / (2.0 * h);
        worst = std::max(worst, std::abs(fd - g[i]));
    }
    return worst;
}

inline PropertyResult threshold_result(std::string name, double residual, double threshold, std::string detail = {}) {
    return {std::move(name), residual < threshold, residual, threshold, std::move(detail)};
}

} // namespace detail

/**
 * Small-instance property checks: gradient vs finite differences, landscape
 * symmetries, TS stationarity/energy/inertia, determinant identity at the
 * boundary TS, GREEDY monotonicity and the interpolation identity.
 */
[[nodiscard]] inline VerifyReport verify_suite(const VerifyConfig &cfg = {}) {
    VerifyReport rep;
    SplitMix64 rng(cfg.seed);
    constexpr double pi = std::numbers::pi;
    const auto rrg3 = [&](int n, std::uint64_t k) {
        return generate_ensemble(Ensemble::RRG3, n, 1, derive_seed(cfg.seed, k)).front();
    };
    const auto with_fault = [&](Simulator sim) {
        sim.inject_fault(cfg.fault);
        return sim;
    };

    // Gradient against central differences.
    {
        double worst = 0.0;
        const std::array<int, 3> ns{4, 6, 8};
        for (int c = 0; c < cfg.gradient_cases; ++c) {
            const int n = ns[static_cast<std::size_t>(c) % ns.size()];
            const int p = 1 + c % 4;
            const Simulator sim = with_fault(Simulator(rrg3(n, 100 + static_cast<std::uint64_t>(c))));
            worst = std::max(worst, detail::fd_gradient_error(sim, detail::random_angles(rng, p), 1e-5));
        }
        rep.properties.push_back(detail::threshold_result("gradient_fd", worst, 1e-6));
    }

    // Landscape symmetries on odd-degree graphs.
    {
        double w1 = 0.0;
        double w2 = 0.0;
        double w3 = 0.0;
        double w4 = 0.0;
        for (int c = 0; c < cfg.symmetry_cases; ++c) {
            const Simulator sim(rrg3(c % 2 == 0 ? 6 : 8, 200 + static_cast<std::uint64_t>(c)));
            const int p = 1 + c % 4;
            const AngleVector a = detail::random_angles(rng, p);
            const double e = sim.energy(a);
            AngleVector b = a;
            for (std::size_t i = 0; i < b.size(); ++i) {
                b[i] += pi;
            }
            w1 = std::max(w1, std::abs(sim.energy(b) - e));
            b = a;
            apply_beta_half_period(b, static_cast<std::size_t>(c % p));
            w2 = std::max(w2, std::abs(sim.energy(b) - e));
            b = a;
            for (std::size_t i = 0; i < b.size(); ++i) {
                b[i] = -b[i];
            }
            w3 = std::max(w3, std::abs(sim.energy(b) - e));
            b = a;
            apply_tail_flip(b, static_cast<std::size_t>(c % p), c % 3 == 0 ? -1.0 : 1.0);
            w4 = std::max(w4, std::abs(sim.energy(b) - e));
        }
        rep.properties.push_back(detail::threshold_result("symmetry_shift_pi", w1, 1e-10));
        rep.properties.push_back(detail::threshold_result("symmetry_beta_half_pi", w2, 1e-10));
        rep.properties.push_back(detail::threshold_result("symmetry_sign_flip", w3, 1e-10));
        rep.properties.push_back(detail::threshold_result("symmetry_tail_flip", w4, 1e-10));
    }

    // Transition states and determinant identity.
    {
        double stat = 0.0;
        double en = 0.0;
        int bad_inertia = 0;
        int checked = 0;
        double det_err = 0.0;
        for (int k = 0; k < cfg.ts_instances; ++k) {
            const Simulator sim(rrg3(8, 300 + static_cast<std::uint64_t>(k)));
            StrategyOptions so;
            so.use_nonsymmetric = true;
            so.grid_resolution = 12;
            const StrategyRun run = greedy_run(sim, cfg.ts_p_max, so);
            for (const auto &rec : run.per_depth) {
                StationaryPoint parent = rec.best;
                parent.angles = rec.continuation;
                if (parent.classification != Classification::Minimum) {
                    continue;
                }
                const HessianMatrix hp = sim.hessian(parent.angles);
                for (const auto &ts : enumerate_ts(sim, parent, true)) {
                    stat = std::max(stat, max_abs(sim.gradient(ts.angles)));
                    en = std::max(en, std::abs(ts.energy - parent.energy));
                    const HessianMatrix h = sim.hessian(ts.angles);
                    ++checked;
                    if (h.inertia.zero > 0) {
                        ++rep.singular_ts;
                    } else if (h.inertia.negative != 1) {
                        ++bad_inertia;
                    }
                    const int q = static_cast<int>(ts.angles.depth());
                    std::optional<BoundaryCase> bc;
                    if (ts.insert_beta == q && ts.insert_gamma == q) {
                        bc = BoundaryCase::LastLayer;
                    } else if (ts.insert_beta == 1 && ts.insert_gamma == 1) {
                        bc = BoundaryCase::FirstLayer;
                    }
                    if (bc) {
                        const double b = sim.commutator_expectation_b(parent.angles, *bc);
                        const double ratio = h.determinant() / hp.determinant();
                        det_err = std::max(det_err, std::abs(ratio + b * b) / (b * b));
                    }
                }
            }
        }
        rep.properties.push_back(detail::threshold_result("ts_stationarity", stat, 1e-6));
        rep.properties.push_back(detail::threshold_result("ts_energy", en, 1e-12));
        rep.properties.push_back({"ts_inertia", bad_inertia == 0, static_cast<double>(bad_inertia), 1.0,
                                  std::to_string(checked) + " TS checked, " + std::to_string(rep.singular_ts) +
                                      " singular"});
        rep.properties.push_back(detail::threshold_result("determinant_identity", det_err, 1e-3));
    }

    // GREEDY monotonicity.
    {
        const Simulator sim(rrg3(cfg.greedy_n, 400));
        StrategyOptions so;
        so.grid_resolution = 12;
        const StrategyRun run = greedy_run(sim, cfg.greedy_p_max, so);
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < run.per_depth.size(); ++i) {
            worst = std::max(worst, run.per_depth[i].best.energy - run.per_depth[i - 1].best.energy);
        }
        const bool ok = run.complete && static_cast<int>(run.per_depth.size()) == cfg.greedy_p_max && worst <= 1e-9;
        rep.properties.push_back({"greedy_monotonicity", ok, worst, 1e-9, run.error});
    }

    // Interpolation identity.
    {
        double worst = 0.0;
        for (int p = 1; p <= 8; ++p) {
            const AngleVector a = detail::random_angles(rng, p);
            worst = std::max(worst, max_abs_difference(interp_init(a), interp_init_from_ts(a)));
        }
        rep.properties.push_back(detail::threshold_result("interp_identity", worst, 1e-13));
    }
    return rep;
}

[[nodiscard]] inline Json verify_document(const VerifyReport &rep) {
    Json j = make_document("verify_report");
    Json props = Json::array();
    for (const auto &p : rep.properties) {
        props.push_back({{"name", p.name},
                         {"passed", p.passed},
                         {"residual", p.residual},
                         {"threshold", p.threshold},
                         {"detail", p.detail}});
    }
    j["properties"] = props;
    j["singular_ts"] = rep.singular_ts;
    j["passed"] = rep.passed();
    return j;
}

} // namespace qaoa_greedy
