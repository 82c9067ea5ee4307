// Copyright 2026 the kdmc authors
// SPDX-License-Identifier: Apache-2.0
//
// Experiment harness for the kinetic-diffusion Monte Carlo library.
// Subcommands reproduce the benchmark experiments at desk scale and emit
// machine-readable CSV files. Exit codes: 0 success, 1 invalid
// configuration, 2 consistency-check failure (check-rn only).

#include <exception>
#include <fstream>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kdmc/kdmc.hpp"

namespace {

std::string g_config_path;

void add_common_options(CLI::App* cmd, kdmc::RunConfig& cfg) {
    cmd->add_option("--background", cfg.background, "Background family (B1 or B2)")
        ->check(CLI::IsMember({"B1", "B2"}));
    cmd->add_option("--a", cfg.a, "Collision-rate slope parameter");
    cmd->add_option("--b", cfg.b, "Collision-rate base parameter");
    cmd->add_option("--T", cfg.T, "Simulation end time");
    cmd->add_option("--max-level", cfg.max_level, "Finest level L (dt_L = T / 2^L)");
    cmd->add_option("--seed", cfg.seed, "Root seed for all random streams");
    cmd->add_option("--workers", cfg.workers, "Worker threads for sampling");
    cmd->add_option("--out", cfg.out_dir, "Output directory for CSV files");
    cmd->add_option("--n-warmup", cfg.n_warmup, "Warm-up samples per pilot level");
    cmd->add_option("--cost-model", cfg.cost_model, "Cost accounting: steps or seconds")
        ->check(CLI::IsMember({"steps", "seconds"}));
    cmd->add_option("--config", g_config_path, "Flat key=value configuration file");
}

// Config-file keys and the command-line flags that shadow them.
const std::vector<std::pair<std::string, std::string>> kKeyFlagPairs = {
    {"background", "--background"}, {"a", "--a"}, {"b", "--b"}, {"T", "--T"},
    {"max_level", "--max-level"}, {"seed", "--seed"}, {"workers", "--workers"},
    {"out", "--out"}, {"n_warmup", "--n-warmup"}, {"cost_model", "--cost-model"},
    {"eps_list", "--eps"}, {"eps0", "--eps0"}, {"r_min", "--r-min"}, {"r_max", "--r-max"},
    {"mode", "--mode"}, {"selection", "--selection"}, {"levels", "--levels"},
    {"factors", "--factors"}, {"n_samples", "--n-samples"}, {"b_reps", "--b-reps"},
    {"reps", "--reps"},
};

void apply_config_file(CLI::App* active, kdmc::RunConfig& cfg) {
    if (g_config_path.empty()) return;
    std::ifstream is(g_config_path);
    if (!is) throw kdmc::ConfigError("cannot read config file " + g_config_path);
    kdmc::load_config(cfg, is, [&](const std::string& key) {
        for (const auto& [k, flag] : kKeyFlagPairs) {
            if (k == key) {
                const auto* opt = active->get_option_no_throw(flag);
                return opt != nullptr && opt->count() > 0;
            }
        }
        return false;
    });
}

void add_tolerance_options(CLI::App* cmd, kdmc::RunConfig& cfg) {
    cmd->add_option("--eps", cfg.eps_list, "Explicit tolerance list (decreasing)");
    cmd->add_option("--eps0", cfg.eps0, "Tolerance scale: eps_r = eps0 / sqrt(2^r)");
    cmd->add_option("--r-min", cfg.r_min, "First tolerance index");
    cmd->add_option("--r-max", cfg.r_max, "Last tolerance index");
}

std::ofstream open_out(const kdmc::RunConfig& cfg, const std::string& name) {
    return kdmc::detail::open_csv(cfg.out_dir, name);
}

void snapshot_config(const kdmc::RunConfig& cfg) {
    auto os = open_out(cfg, "config.txt");
    kdmc::write_config_snapshot(os, cfg);
}

int run_check_rn(const kdmc::RunConfig& cfg) {
    const auto report = kdmc::cmd_check_rn(cfg);
    auto os = open_out(cfg, "check_rn.csv");
    kdmc::write_check_rn_csv(os, report);
    snapshot_config(cfg);
    std::cout << "check-rn: " << report.rows.size() << " tests, min p = " << report.min_p
              << (report.all_pass() ? " (all pass at 1%)" : " (FAILURE below 1%)") << '\n';
    for (const auto& row : report.rows) {
        if (row.p < 0.05) {
            std::cout << "  note: level " << row.level << " M " << row.factor << " "
                      << row.variable << " has p = " << row.p
                      << (row.p < 0.01 ? " < 0.01 (reject)" : " < 0.05") << '\n';
        }
    }
    return report.all_pass() ? 0 : 2;
}

int run_variance_decay(const kdmc::RunConfig& cfg) {
    const auto rows = kdmc::cmd_variance_decay(cfg);
    auto os = open_out(cfg, "variance_decay.csv");
    kdmc::write_variance_decay_csv(os, rows);
    snapshot_config(cfg);
    std::cout << "variance-decay: wrote " << rows.size() << " levels\n";
    return 0;
}

int run_select_levels(const kdmc::RunConfig& cfg) {
    const auto report = kdmc::cmd_select_levels(cfg);
    auto os = open_out(cfg, "select_levels.csv");
    kdmc::write_select_levels_csv(os, report, cfg.T);
    snapshot_config(cfg);
    std::cout << "pilot: tau_cut = " << report.pilot.tau_cut << ", measured through level "
              << report.pilot.measured_max << ", " << report.pilot.n_warmup
              << " warm-up samples per level\n";
    std::cout << "exact set:     {" << kdmc::level_set_string(report.exact_set)
              << "}  objective " << report.exact_objective << '\n';
    std::cout << "heuristic set: {" << kdmc::level_set_string(report.heuristic_set)
              << "}  objective " << report.heuristic_objective << '\n';
    if (report.clamp_count > 0) {
        std::cout << "cross-variance radicand clamped " << report.clamp_count << " times\n";
    }
    return 0;
}

int run_estimate(const kdmc::RunConfig& cfg) {
    const auto record = kdmc::cmd_estimate(cfg);
    {
        auto os = open_out(cfg, "estimate_levels.csv");
        kdmc::write_estimate_levels_csv(os, record, cfg.cost());
    }
    {
        auto os = open_out(cfg, "estimate_adaptive.csv");
        kdmc::write_estimate_adaptive_csv(os, record);
    }
    {
        auto os = open_out(cfg, "estimate_summary.csv");
        kdmc::write_estimate_summary_csv(os, record);
    }
    snapshot_config(cfg);
    for (const auto& run : record.runs) {
        const auto& last = run.steps.back();
        std::cout << run.mode << ": estimate " << last.result.estimate << " at eps "
                  << last.eps << " (levels {" << kdmc::level_set_string(last.set)
                  << "}, cost " << last.result.total_cost_steps << " steps)\n";
    }
    return 0;
}

int run_compare(const kdmc::RunConfig& cfg) {
    const auto record = kdmc::cmd_compare(cfg);
    {
        auto os = open_out(cfg, "compare.csv");
        kdmc::write_compare_csv(os, record);
    }
    {
        auto os = open_out(cfg, "compare_summary.csv");
        kdmc::write_compare_summary_csv(os, cfg, record);
    }
    snapshot_config(cfg);
    std::cout << "speedup (wall): " << record.speedup << " +- " << record.speedup_se
              << " over " << cfg.reps << " repetitions (step-count ratio "
              << record.speedup_steps << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kinetic-diffusion Monte Carlo estimator harness"};
    app.require_subcommand(1);

    kdmc::RunConfig cfg;
    std::string command;

    auto* check_rn = app.add_subcommand(
        "check-rn", "Test the aggregated coarse-path random numbers for distributional "
                    "consistency");
    add_common_options(check_rn, cfg);
    check_rn->add_option("--levels", cfg.levels, "Fine levels to test");
    check_rn->add_option("--factors", cfg.factors, "Coarsening factors M (powers of two)");
    check_rn->add_option("--n-samples", cfg.n_samples, "Pooled draws per test");
    check_rn->add_option("--b-reps", cfg.b_reps, "Null replicates per test");
    check_rn->callback([&] { command = "check-rn"; });

    auto* vdecay = app.add_subcommand(
        "variance-decay", "Measure variance and cost of multilevel differences per level");
    add_common_options(vdecay, cfg);
    vdecay->add_option("--levels", cfg.levels, "Fine levels to measure");
    vdecay->add_option("--n-samples", cfg.n_samples, "Coupled pairs per level");
    vdecay->callback([&] { command = "variance-decay"; });

    auto* select = app.add_subcommand(
        "select-levels", "Run a pilot and print exact and heuristic level selections");
    add_common_options(select, cfg);
    select->callback([&] { command = "select-levels"; });

    auto* estimate = app.add_subcommand(
        "estimate", "Run the eps-adaptive estimator (single-level and/or multilevel)");
    add_common_options(estimate, cfg);
    add_tolerance_options(estimate, cfg);
    estimate->add_option("--mode", cfg.mode, "kdmc, ml-kdmc or both")
        ->check(CLI::IsMember({"kdmc", "ml-kdmc", "both"}));
    estimate->add_option("--selection", cfg.selection, "Level selection strategy")
        ->check(CLI::IsMember({"exact", "heuristic"}));
    estimate->callback([&] { command = "estimate"; });

    auto* compare = app.add_subcommand(
        "compare", "Measure the wall-clock speedup of ML-KDMC over single-level KDMC");
    add_common_options(compare, cfg);
    add_tolerance_options(compare, cfg);
    compare->add_option("--selection", cfg.selection, "Level selection strategy")
        ->check(CLI::IsMember({"exact", "heuristic"}));
    compare->add_option("--reps", cfg.reps, "Repetitions for the jackknife error bar");
    compare->callback([&] { command = "compare"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return (code == 0) ? 0 : 1;
    }

    try {
        const auto parsed = app.get_subcommands();
        if (!parsed.empty()) apply_config_file(parsed.front(), cfg);
        cfg.validate();
        if (command == "check-rn") return run_check_rn(cfg);
        if (command == "variance-decay") return run_variance_decay(cfg);
        if (command == "select-levels") return run_select_levels(cfg);
        if (command == "estimate") return run_estimate(cfg);
        if (command == "compare") return run_compare(cfg);
        std::cerr << "unknown command\n";
        return 1;
    } catch (const kdmc::ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
