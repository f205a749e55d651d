/*
Copyright 2026 The isegen Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "isegen/dfg_io.hpp"
#include "isegen/driver.hpp"
#include "isegen/generator.hpp"
#include "isegen/oracle.hpp"
#include "isegen/report_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;

struct RunOptions {
    std::string app_path;
    std::string lat_path;
    int n_in = 4;
    int n_out = 2;
    int n_ise = 4;
    int passes = 5;
    std::vector<double> weights;
    std::string mode = "isegen";
    std::string format = "text";
    std::string report_path;
    std::string export_path;
    int oracle_max_nodes = 18;
    long long oracle_max_enum = 10'000'000;
    bool delta_mrt = false;
};

isegen::SearchConfig make_config(const RunOptions &opt) {
    isegen::SearchConfig cfg;
    cfg.constraints = {opt.n_in, opt.n_out, opt.n_ise};
    cfg.max_passes = opt.passes;
    cfg.delta_mrt = opt.delta_mrt;
    if (!opt.weights.empty()) {
        if (opt.weights.size() != 5)
            throw CLI::ValidationError("--weights", "expected five comma-separated values");
        cfg.weights = {opt.weights[0], opt.weights[1], opt.weights[2], opt.weights[3],
                       opt.weights[4]};
    }
    return cfg;
}

void emit(const std::string &path, const std::string &what, const std::string &content) {
    if (path.empty())
        return;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw isegen::Error("cannot write " + what + " to " + path);
    out << content;
}

int run_compare(const isegen::Application &app, const isegen::SearchConfig &cfg,
                const isegen::OracleBudget &budget) {
    using clock = std::chrono::steady_clock;
    std::cout << "block        merit_isegen  merit_exact   ratio    t_isegen_ms  t_exact_ms\n";
    for (const isegen::Dfg &blk : app.blocks) {
        auto t0 = clock::now();
        isegen::Cut kl = isegen::bipartition(blk, cfg);
        auto t1 = clock::now();
        double kl_merit = merit(kl);
        double kl_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

        std::string exact_merit = "skipped";
        std::string ratio = "-";
        std::string exact_ms = "-";
        try {
            auto t2 = clock::now();
            isegen::OracleResult ex = isegen::enumerate_optimal_cut(blk, cfg.constraints, budget);
            auto t3 = clock::now();
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6f", ex.merit_value);
            exact_merit = buf;
            std::snprintf(buf, sizeof(buf), "%.4f",
                          ex.merit_value > 0.0 ? kl_merit / ex.merit_value : 1.0);
            ratio = buf;
            std::snprintf(buf, sizeof(buf), "%.3f",
                          std::chrono::duration<double, std::milli>(t3 - t2).count());
            exact_ms = buf;
        } catch (const isegen::BudgetExceeded &) {
            // Too large for exhaustive search; report the heuristic only.
        }
        char line[256];
        std::snprintf(line, sizeof(line), "%-12s %-13.6f %-13s %-8s %-12.3f %s\n",
                      blk.name().c_str(), kl_merit, exact_merit.c_str(), ratio.c_str(), kl_ms,
                      exact_ms.c_str());
        std::cout << line;
    }
    return kExitOk;
}

int do_run(const RunOptions &opt) {
    isegen::Application app = isegen::load_application(opt.app_path, opt.lat_path);
    isegen::SearchConfig cfg = make_config(opt);
    isegen::OracleBudget budget{opt.oracle_max_nodes, opt.oracle_max_enum};

    if (opt.mode == "compare")
        return run_compare(app, cfg, budget);

    isegen::IseReport report;
    if (opt.mode == "isegen")
        report = isegen::select_ises(app, cfg, isegen::Engine::Isegen);
    else
        report = isegen::iterative_exact(app, cfg, budget);

    std::ostringstream body;
    if (opt.format == "structured")
        isegen::write_report_structured(body, app, report);
    else
        isegen::write_report_text(body, app, report);

    if (opt.report_path.empty())
        std::cout << body.str();
    else
        emit(opt.report_path, "report", body.str());

    if (!opt.export_path.empty()) {
        std::ostringstream dot;
        isegen::write_dot(dot, app, report);
        emit(opt.export_path, "graph export", dot.str());
    }
    return kExitOk;
}

struct GenerateOptions {
    std::string out_prefix = "corpus";
    std::uint64_t seed = 1;
    int count = 1;
    int min_nodes = 5;
    int max_nodes = 40;
    double mem_ratio = 0.15;
    double edge_factor = 2.0;
    bool regular = false;
    int copies = 8;
    int motif_size = 4;
};

int do_generate(const GenerateOptions &opt) {
    std::vector<isegen::RawDfg> blocks;
    if (opt.regular) {
        for (int i = 0; i < opt.count; ++i)
            blocks.push_back(isegen::generate_regular_block(opt.seed + static_cast<std::uint64_t>(i),
                                                            opt.copies, opt.motif_size));
        for (std::size_t i = 0; i < blocks.size(); ++i)
            blocks[i].name += "_" + std::to_string(i);
    } else {
        isegen::GenParams params;
        params.seed = opt.seed;
        params.count = opt.count;
        params.min_nodes = opt.min_nodes;
        params.max_nodes = opt.max_nodes;
        params.mem_ratio = opt.mem_ratio;
        params.edge_factor = opt.edge_factor;
        blocks = isegen::generate_corpus(params);
    }

    isegen::LatencyTable lat = isegen::default_latency_table();
    for (const isegen::RawDfg &raw : blocks)
        isegen::validate_dfg(raw, lat); // generator output must load cleanly

    std::ostringstream app_text;
    isegen::write_app_text(app_text, blocks);
    emit(opt.out_prefix + ".dfg", "blocks", app_text.str());

    std::ostringstream lat_text;
    isegen::write_latency_text(lat_text, lat);
    emit(opt.out_prefix + ".lat", "latency table", lat_text.str());

    std::cout << "wrote " << opt.out_prefix << ".dfg (" << blocks.size() << " block"
              << (blocks.size() == 1 ? "" : "s") << ") and " << opt.out_prefix << ".lat\n";
    return kExitOk;
}

struct CalibrateOptions {
    std::uint64_t seed = isegen::calibration_corpus_seed();
    int count = 200;
    int nodes = 12;
    int top = 5;
};

int do_calibrate(const CalibrateOptions &opt) {
    isegen::GenParams params;
    params.seed = opt.seed;
    params.count = opt.count;
    params.min_nodes = opt.nodes;
    params.max_nodes = opt.nodes;

    isegen::LatencyTable lat = isegen::default_latency_table();
    std::vector<isegen::Dfg> corpus;
    std::vector<double> oracle_merit;
    isegen::Constraints constraints{4, 2, 4};
    for (const isegen::RawDfg &raw : isegen::generate_corpus(params)) {
        isegen::Dfg blk = isegen::validate_dfg(raw, lat);
        oracle_merit.push_back(
            isegen::enumerate_optimal_cut(blk, constraints).merit_value);
        corpus.push_back(std::move(blk));
    }

    // Side diagnostic, never used for selection: exact hits on chain and
    // tree families (seeds distinct from any evaluation corpus).
    std::vector<isegen::Dfg> family;
    std::vector<double> family_merit;
    for (int len = 2; len <= 15; ++len)
        family.push_back(isegen::validate_dfg(
            isegen::generate_chain_block(62000 + static_cast<std::uint64_t>(len), len), lat));
    for (int size = 3; size <= 15; ++size)
        for (std::uint64_t s = 1; s <= 3; ++s)
            family.push_back(isegen::validate_dfg(
                isegen::generate_tree_block(72000 + s * 100 + static_cast<std::uint64_t>(size), size),
                lat));
    for (const isegen::Dfg &g : family)
        family_merit.push_back(isegen::enumerate_optimal_cut(g, constraints).merit_value);

    const double a2_grid[] = {10.0, 20.0, 40.0};
    const double a3_grid[] = {0.0, 0.05, 0.1, 0.25, 0.5};
    const double a4_grid[] = {0.0, 0.05, 0.1, 0.25};
    const double a5_grid[] = {0.0, 0.25, 0.5, 1.0};

    struct Scored {
        isegen::GainWeights w;
        double mean = 0.0;
        double median = 0.0;
        int exact = 0;
        int family_exact = 0;
    };
    std::vector<Scored> scored;
    for (double a2 : a2_grid)
        for (double a3 : a3_grid)
            for (double a4 : a4_grid)
                for (double a5 : a5_grid) {
                    isegen::SearchConfig cfg;
                    cfg.weights = {1.0, a2, a3, a4, a5};
                    cfg.constraints = constraints;
                    std::vector<double> ratios;
                    int exact = 0;
                    for (std::size_t i = 0; i < corpus.size(); ++i) {
                        double kl = merit(isegen::bipartition(corpus[i], cfg));
                        double ratio =
                            oracle_merit[i] > 0.0 ? kl / oracle_merit[i] : 1.0;
                        if (ratio > 1.0 - 1e-9)
                            ++exact;
                        ratios.push_back(ratio);
                    }
                    double mean = 0.0;
                    for (double r : ratios)
                        mean += r;
                    mean /= static_cast<double>(ratios.size());
                    std::sort(ratios.begin(), ratios.end());
                    double median = ratios[ratios.size() / 2];
                    int fam = 0;
                    for (std::size_t i = 0; i < family.size(); ++i) {
                        double kl = merit(isegen::bipartition(family[i], cfg));
                        if (std::abs(kl - family_merit[i]) <=
                            1e-9 * std::max(1.0, family_merit[i]))
                            ++fam;
                    }
                    scored.push_back({cfg.weights, mean, median, exact, fam});
                }

    // Selection: mean merit-ratio on the random corpus; deterministic
    // tie-breaks on exact hits, then the grid order.
    std::stable_sort(scored.begin(), scored.end(), [](const Scored &a, const Scored &b) {
        if (a.mean != b.mean)
            return a.mean > b.mean;
        return a.exact > b.exact;
    });
    std::cout << "corpus: seed=" << opt.seed << " count=" << opt.count << " nodes=" << opt.nodes
              << "\n";
    std::cout << "rank  a1    a2    a3    a4    a5    mean     median   exact    chains+trees\n";
    for (int i = 0; i < opt.top && i < static_cast<int>(scored.size()); ++i) {
        const Scored &s = scored[static_cast<std::size_t>(i)];
        char line[192];
        std::snprintf(line, sizeof(line),
                      "%-5d %-5.2f %-5.1f %-5.2f %-5.2f %-5.2f %-8.5f %-8.5f %-3d/%-4d %d/%zu\n",
                      i + 1, s.w.a1, s.w.a2, s.w.a3, s.w.a4, s.w.a5, s.mean, s.median, s.exact,
                      opt.count, s.family_exact, family.size());
        std::cout << line;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App cli{"Instruction-set-extension identification in basic-block data-flow graphs"};
    cli.require_subcommand(1);

    RunOptions run_opt;
    CLI::App *run = cli.add_subcommand("run", "Select ISEs for an application");
    run->add_option("app", run_opt.app_path, "application block file")->required();
    run->add_option("--lat", run_opt.lat_path, "latency table file")->required();
    run->add_option("--nin", run_opt.n_in, "max ISE inputs");
    run->add_option("--nout", run_opt.n_out, "max ISE outputs");
    run->add_option("--max-ises", run_opt.n_ise, "max ISEs per application");
    run->add_option("--passes", run_opt.passes, "max improvement passes");
    run->add_option("--weights", run_opt.weights, "gain weights a1,a2,a3,a4,a5")->delimiter(',');
    run->add_option("--mode", run_opt.mode, "isegen | oracle | compare")
        ->check(CLI::IsMember({"isegen", "oracle", "compare"}));
    run->add_option("--format", run_opt.format, "text | structured")
        ->check(CLI::IsMember({"text", "structured"}));
    run->add_option("--report", run_opt.report_path, "write the report here instead of stdout");
    run->add_option("--export", run_opt.export_path, "write a Graphviz export here");
    run->add_option("--oracle-max-nodes", run_opt.oracle_max_nodes,
                    "exhaustive engine node budget");
    run->add_option("--oracle-max-enum", run_opt.oracle_max_enum,
                    "exhaustive engine state budget");
    run->add_flag("--delta-mrt", run_opt.delta_mrt, "gain uses merit change, not absolute merit");

    GenerateOptions gen_opt;
    CLI::App *gen = cli.add_subcommand("generate", "Emit a deterministic block corpus");
    gen->add_option("--out", gen_opt.out_prefix, "output path prefix");
    gen->add_option("--seed", gen_opt.seed, "corpus seed");
    gen->add_option("--count", gen_opt.count, "number of blocks");
    gen->add_option("--min-nodes", gen_opt.min_nodes, "min nodes per block");
    gen->add_option("--max-nodes", gen_opt.max_nodes, "max nodes per block");
    gen->add_option("--mem-ratio", gen_opt.mem_ratio, "memory operation ratio");
    gen->add_option("--edge-factor", gen_opt.edge_factor, "target edges per node");
    gen->add_flag("--regular", gen_opt.regular, "disjoint motif copies instead of random DAGs");
    gen->add_option("--copies", gen_opt.copies, "motif copies per regular block");
    gen->add_option("--motif-size", gen_opt.motif_size, "nodes per motif");

    CalibrateOptions cal_opt;
    CLI::App *cal = cli.add_subcommand("calibrate", "Grid-search gain weights against the exhaustive engine");
    cal->add_option("--seed", cal_opt.seed, "calibration corpus seed");
    cal->add_option("--count", cal_opt.count, "corpus size");
    cal->add_option("--nodes", cal_opt.nodes, "nodes per block");
    cal->add_option("--top", cal_opt.top, "print the best N grid points");

    CLI11_PARSE(cli, argc, argv);

    try {
        if (run->parsed())
            return do_run(run_opt);
        if (gen->parsed())
            return do_generate(gen_opt);
        if (cal->parsed())
            return do_calibrate(cal_opt);
    } catch (const isegen::ParseError &e) {
        std::cerr << e.what() << "\n";
        return kExitBadInput;
    } catch (const isegen::DfgError &e) {
        std::cerr << e.what() << "\n";
        return kExitBadInput;
    } catch (const isegen::BudgetExceeded &e) {
        std::cerr << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception &e) {
        std::cerr << e.what() << "\n";
        return kExitError;
    }
    return kExitOk;
}
