// Copyright 2026 the kdmc authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the command-line harness: exit codes, CSV schemas,
// config handling, and byte-level reproducibility under a fixed seed.
#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "kdmc/config.hpp"
#include "kdmc/experiment.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(KDMC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is.good());
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

fs::path temp_dir(const std::string& tag) {
    const auto dir = fs::temp_directory_path() / ("kdmc_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("check-rn: exit code, schema, and byte-identical repeats") {
    const auto dir1 = temp_dir("rn1");
    const auto dir2 = temp_dir("rn2");
    const std::string base =
        "check-rn --background B1 --a 10 --b 30 --T 1 --levels 4 --factors 2 "
        "--n-samples 300 --b-reps 1000 --seed 11 --out ";
    REQUIRE(run_cli(base + dir1.string()) == 0);
    REQUIRE(run_cli(base + dir2.string()) == 0);

    const auto csv1 = slurp(dir1 / "check_rn.csv");
    const auto csv2 = slurp(dir2 / "check_rn.csv");
    CHECK(first_line(csv1) == "level,M,variable,A2,p");
    CHECK(csv1 == csv2);
}

TEST_CASE("invalid configurations exit with code 1") {
    CHECK(run_cli("check-rn --background B3") == 1);
    CHECK(run_cli("estimate --b -1 --eps 0.5") == 1);
    CHECK(run_cli("estimate --eps 0.5 --eps 0.5") == 1);  // not decreasing
    CHECK(run_cli("check-rn --factors 3") == 1);          // not a power of two
    CHECK(run_cli("nonsense") == 1);
}

TEST_CASE("variance-decay emits the documented schema") {
    const auto dir = temp_dir("vd");
    REQUIRE(run_cli("variance-decay --b 20 --levels 2 --levels 3 --n-samples 200 --seed 4 "
                    "--out " + dir.string()) == 0);
    const auto csv = slurp(dir / "variance_decay.csv");
    CHECK(first_line(csv) == "level,dt,V_l,V_diff,C_diff");
    // One row per level plus the header.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("config file values load and flags override them") {
    const auto dir = temp_dir("cfg");
    const auto cfg_path = dir / "run.cfg";
    {
        std::ofstream os(cfg_path);
        os << "b=5\n";
        os << "seed=9\n";
        os << "max_level=3\n";
    }
    REQUIRE(run_cli("variance-decay --config " + cfg_path.string() + " --b 7 --n-samples 50 "
                    "--out " + dir.string()) == 0);
    const auto snapshot = slurp(dir / "config.txt");
    CHECK(snapshot.find("b=7\n") != std::string::npos);       // flag wins
    CHECK(snapshot.find("seed=9\n") != std::string::npos);    // file value kept
    CHECK(snapshot.find("max_level=3\n") != std::string::npos);
}

TEST_CASE("estimate writes level, adaptive and summary tables") {
    const auto dir = temp_dir("est");
    REQUIRE(run_cli("estimate --background B1 --a 0 --b 1 --max-level 4 --eps 0.5 --eps 0.35 "
                    "--mode both --n-warmup 50 --seed 2 --out " + dir.string()) == 0);
    CHECK(first_line(slurp(dir / "estimate_levels.csv")) == "mode,level,coarse_level,N,E,V,C");
    CHECK(first_line(slurp(dir / "estimate_adaptive.csv")) ==
          "mode,r,eps,finest_level,levels,cost_steps,cost_seconds,estimate,stat_variance,"
          "decorrelations");
    CHECK(first_line(slurp(dir / "estimate_summary.csv")) ==
          "mode,eps,estimate,total_cost_steps,total_cost_seconds,decorrelations,version");
    const auto summary = slurp(dir / "estimate_summary.csv");
    CHECK(summary.find("kdmc,") != std::string::npos);
    CHECK(summary.find("ml-kdmc,") != std::string::npos);
}

TEST_CASE("select-levels writes per-level inputs with extrapolation flags") {
    const auto dir = temp_dir("sel");
    REQUIRE(run_cli("select-levels --b 16 --max-level 6 --n-warmup 40 --seed 3 --out " +
                    dir.string()) == 0);
    const auto csv = slurp(dir / "select_levels.csv");
    CHECK(first_line(csv) ==
          "level,dt,V_l,C_l,V_diff,C_diff,rho_L,extrapolated,in_exact,in_heuristic");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);  // header + levels 0..6
}

TEST_CASE("compare reports a speedup with an error bar") {
    const auto dir = temp_dir("cmp");
    REQUIRE(run_cli("compare --b 4 --max-level 3 --eps 0.25 --reps 2 --n-warmup 30 --seed 6 "
                    "--out " + dir.string()) == 0);
    const auto csv = slurp(dir / "compare_summary.csv");
    CHECK(first_line(csv) ==
          "background,a,b,eps,reps,speedup,speedup_se,speedup_steps,version");
    const auto rows = slurp(dir / "compare.csv");
    CHECK(first_line(rows) ==
          "rep,cost_kdmc_seconds,cost_mlkdmc_seconds,cost_kdmc_steps,cost_mlkdmc_steps,"
          "speedup");
}

TEST_CASE("library-level config validation mirrors the CLI") {
    kdmc::RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.background = "B9";
    CHECK_THROWS_AS(cfg.validate(), kdmc::ConfigError);
    cfg.background = "B2";
    cfg.factors = {6};
    CHECK_THROWS_AS(cfg.validate(), kdmc::ConfigError);
    cfg.factors = {8};
    cfg.eps_list = {0.5, 0.6};
    CHECK_THROWS_AS(cfg.validate(), kdmc::ConfigError);
    cfg.eps_list = {0.6, 0.5};
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.tolerances() == std::vector<double>{0.6, 0.5});
}
