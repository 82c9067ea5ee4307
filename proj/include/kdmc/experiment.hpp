// Copyright 2026 the kdmc authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "kdmc/anderson_darling.hpp"
#include "kdmc/config.hpp"
#include "kdmc/correlate.hpp"
#include "kdmc/mlmc.hpp"

namespace kdmc {

namespace detail {

/// Shortest round-trip decimal form, locale-free; keeps CSV output
/// byte-reproducible under fixed seeds.
inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::ofstream open_csv(const std::string& out_dir, const std::string& name) {
    std::filesystem::create_directories(out_dir);
    std::ofstream os(std::filesystem::path(out_dir) / name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + name + " in " + out_dir);
    return os;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// check-rn: distributional consistency of the aggregated coarse random numbers
// ---------------------------------------------------------------------------

struct RnCheckRow {
    int level = 0;
    int factor = 0;
    std::string variable;  ///< "nu" | "eps" | "chi"
    double a2 = 0.0;
    double p = 0.0;
};

struct RnCheckReport {
    std::vector<RnCheckRow> rows;
    double min_p = 1.0;
    bool all_pass(double threshold = 0.01) const { return min_p > threshold; }
};

/// Pools the aggregated coarse draws (nu~, eps~, chi~) over repeated
/// correlated pair simulations at each (level, M) combination until
/// n_samples of each are available, then tests them against their required
/// distributions with Monte Carlo Anderson-Darling tests. The two null
/// distributions are built once and shared across all combinations.
inline RnCheckReport cmd_check_rn(const RunConfig& cfg) {
    cfg.validate();
    const Background bg = cfg.make();
    std::vector<int> levels = cfg.levels;
    if (levels.empty()) {
        for (int l = 1; l <= cfg.max_level; ++l) levels.push_back(l);
    }

    const auto n = cfg.n_samples;
    const AdNullDistribution normal_null(NullFamily::normal_std, n, cfg.b_reps,
                                         DrawStream(cfg.seed, StreamPurpose::replicate, 0, 0));
    const AdNullDistribution exp_null(NullFamily::exponential_unit, n, cfg.b_reps,
                                      DrawStream(cfg.seed, StreamPurpose::replicate, 1, 0));

    RnCheckReport report;
    for (const int level : levels) {
        const double dt_fine = level_dt(cfg.T, level);
        for (const int factor : cfg.factors) {
            const double dt_coarse = dt_fine * factor;
            std::vector<double> nu_t, eps_t, chi_t;
            nu_t.reserve(n);
            eps_t.reserve(n);
            chi_t.reserve(n);
            const std::uint64_t id =
                (static_cast<std::uint64_t>(static_cast<std::uint32_t>(level)) << 32) |
                static_cast<std::uint32_t>(factor);
            for (std::uint64_t path = 0; static_cast<std::int64_t>(nu_t.size()) < n; ++path) {
                DrawStream stream(cfg.seed, StreamPurpose::harness, id, path);
                DrawStream fallback(cfg.seed, StreamPurpose::harness_fallback, id, path);
                correlated_path_observed(bg, cfg.T, dt_fine, dt_coarse, stream, fallback,
                                         [&](double nu, double eps, double chi) {
                                             nu_t.push_back(nu);
                                             eps_t.push_back(eps);
                                             chi_t.push_back(chi);
                                         });
            }
            nu_t.resize(n);
            eps_t.resize(n);
            chi_t.resize(n);

            const auto push = [&](const char* var, std::vector<double> samples,
                                  const AdNullDistribution& null_dist, NullFamily family) {
                const double a2 = ad_statistic(std::move(samples), [family](double x) {
                    return null_cdf(family, x);
                });
                const double p = null_dist.p_value(a2);
                report.rows.push_back({level, factor, var, a2, p});
                report.min_p = std::min(report.min_p, p);
            };
            push("nu", std::move(nu_t), normal_null, NullFamily::normal_std);
            push("eps", std::move(eps_t), exp_null, NullFamily::exponential_unit);
            push("chi", std::move(chi_t), normal_null, NullFamily::normal_std);
        }
    }
    return report;
}

inline void write_check_rn_csv(std::ostream& os, const RnCheckReport& report) {
    os << "level,M,variable,A2,p\n";
    for (const auto& r : report.rows) {
        os << r.level << ',' << r.factor << ',' << r.variable << ','
           << detail::format_double(r.a2) << ',' << detail::format_double(r.p) << '\n';
    }
}

// ---------------------------------------------------------------------------
// variance-decay: per-level variance and cost of the multilevel differences
// ---------------------------------------------------------------------------

struct VarianceDecayRow {
    int level = 0;
    double dt = 0.0;
    double v_level = 0.0;
    double v_diff = 0.0;
    double c_diff = 0.0;
};

/// Samples coupled adjacent pairs on every requested level and reports the
/// per-level variance, the difference variance, and the per-pair cost in the
/// configured cost model.
inline std::vector<VarianceDecayRow> cmd_variance_decay(const RunConfig& cfg) {
    cfg.validate();
    const Background bg = cfg.make();
    std::vector<int> levels = cfg.levels;
    if (levels.empty()) {
        for (int l = 1; l <= cfg.max_level; ++l) levels.push_back(l);
    }
    std::vector<VarianceDecayRow> rows;
    rows.reserve(levels.size());
    for (const int level : levels) {
        if (level < 1) throw ConfigError("variance-decay needs levels >= 1");
        const auto batch =
            sample_pair_batch(bg, cfg.T, level, level - 1, 0, cfg.n_samples, cfg.seed,
                              StreamPurpose::harness, StreamPurpose::harness_fallback,
                              cfg.workers);
        VarianceDecayRow row;
        row.level = level;
        row.dt = level_dt(cfg.T, level);
        row.v_level = batch.pair.variance_x();
        row.v_diff = batch.value.variance();
        row.c_diff = (cfg.cost() == CostModel::steps) ? batch.mean_steps()
                                                      : batch.mean_seconds();
        rows.push_back(row);
    }
    return rows;
}

inline void write_variance_decay_csv(std::ostream& os,
                                     const std::vector<VarianceDecayRow>& rows) {
    os << "level,dt,V_l,V_diff,C_diff\n";
    for (const auto& r : rows) {
        os << r.level << ',' << detail::format_double(r.dt) << ','
           << detail::format_double(r.v_level) << ',' << detail::format_double(r.v_diff)
           << ',' << detail::format_double(r.c_diff) << '\n';
    }
}

// ---------------------------------------------------------------------------
// select-levels: pilot run plus exact and heuristic level sets
// ---------------------------------------------------------------------------

struct SelectLevelsReport {
    PilotReport pilot;
    LevelSet exact_set;
    LevelSet heuristic_set;
    double exact_objective = 0.0;
    double heuristic_objective = 0.0;
    std::int64_t clamp_count = 0;  ///< cross-variance radicand clamps during selection
};

inline SelectLevelsReport cmd_select_levels(const RunConfig& cfg) {
    cfg.validate();
    const Background bg = cfg.make();
    SelectLevelsReport report;
    report.pilot = pilot_run(bg, cfg.T, cfg.max_level, cfg.n_warmup, cfg.seed, cfg.workers);
    const LevelInputs in = report.pilot.inputs(cfg.cost() == CostModel::steps);
    report.exact_set = select_levels_exact(in, cfg.max_level, &report.clamp_count);
    report.heuristic_set = select_levels(report.pilot, cfg.max_level,
                                         SelectionMode::heuristic, cfg.cost());
    report.exact_objective = selection_objective(in, report.exact_set);
    report.heuristic_objective = selection_objective(in, report.heuristic_set);
    return report;
}

inline void write_select_levels_csv(std::ostream& os, const SelectLevelsReport& report,
                                    double T) {
    const auto in_set = [](const LevelSet& set, int level) {
        return std::find(set.levels.begin(), set.levels.end(), level) != set.levels.end();
    };
    os << "level,dt,V_l,C_l,V_diff,C_diff,rho_L,extrapolated,in_exact,in_heuristic\n";
    for (int l = 0; l <= report.pilot.max_level; ++l) {
        const auto li = static_cast<std::size_t>(l);
        os << l << ',' << detail::format_double(level_dt(T, l)) << ','
           << detail::format_double(report.pilot.v_level[li]) << ','
           << detail::format_double(report.pilot.c_level_steps[li]) << ','
           << detail::format_double(report.pilot.v_diff[li]) << ','
           << detail::format_double(report.pilot.c_diff_steps[li]) << ','
           << detail::format_double(report.pilot.rho_fin[li]) << ','
           << (report.pilot.extrapolated[li] ? 1 : 0) << ',' << (in_set(report.exact_set, l) ? 1 : 0)
           << ',' << (in_set(report.heuristic_set, l) ? 1 : 0) << '\n';
    }
}

// ---------------------------------------------------------------------------
// estimate: pilot, level selection, and the eps-adaptive estimator driver
// ---------------------------------------------------------------------------

struct ModeRun {
    std::string mode;
    std::vector<AdaptiveStep> steps;
};

struct EstimateRecord {
    PilotReport pilot;
    std::vector<ModeRun> runs;
};

inline std::vector<std::string> config_modes(const RunConfig& cfg) {
    if (cfg.mode == "both") return {"kdmc", "ml-kdmc"};
    return {cfg.mode};
}

inline EstimateRecord cmd_estimate(const RunConfig& cfg) {
    cfg.validate();
    const Background bg = cfg.make();
    EstimateRecord record;
    record.pilot = pilot_run(bg, cfg.T, cfg.max_level, cfg.n_warmup, cfg.seed, cfg.workers);
    const auto eps = cfg.tolerances();
    for (const auto& mode_name : config_modes(cfg)) {
        RunConfig mode_cfg = cfg;
        mode_cfg.mode = mode_name;
        ModeRun run;
        run.mode = mode_name;
        run.steps = run_adaptive(bg, cfg.T, eps, record.pilot, mode_cfg.estimator_mode(),
                                 cfg.selection_mode(), cfg.estimator_options());
        record.runs.push_back(std::move(run));
    }
    return record;
}

inline std::string level_set_string(const LevelSet& set) {
    std::string s;
    for (std::size_t j = 0; j < set.levels.size(); ++j) {
        if (j > 0) s += ';';
        s += std::to_string(set.levels[j]);
    }
    return s;
}

inline void write_estimate_levels_csv(std::ostream& os, const EstimateRecord& record,
                                      CostModel cost_model) {
    os << "mode,level,coarse_level,N,E,V,C\n";
    for (const auto& run : record.runs) {
        if (run.steps.empty()) continue;
        const auto& final_step = run.steps.back();
        for (const auto& m : final_step.result.members) {
            const double c = (cost_model == CostModel::steps) ? m.cost_steps : m.cost_seconds;
            os << run.mode << ',' << m.level << ',' << m.coarse_level << ',' << m.n << ','
               << detail::format_double(m.mean) << ',' << detail::format_double(m.variance)
               << ',' << detail::format_double(c) << '\n';
        }
    }
}

inline void write_estimate_adaptive_csv(std::ostream& os, const EstimateRecord& record) {
    os << "mode,r,eps,finest_level,levels,cost_steps,cost_seconds,estimate,stat_variance,"
          "decorrelations\n";
    for (const auto& run : record.runs) {
        for (std::size_t r = 0; r < run.steps.size(); ++r) {
            const auto& step = run.steps[r];
            os << run.mode << ',' << r << ',' << detail::format_double(step.eps) << ','
               << step.finest_level << ',' << level_set_string(step.set) << ','
               << detail::format_double(step.result.total_cost_steps) << ','
               << detail::format_double(step.result.total_cost_seconds) << ','
               << detail::format_double(step.result.estimate) << ','
               << detail::format_double(step.result.achieved_stat_variance) << ','
               << step.result.decorrelation_count << '\n';
        }
    }
}

inline void write_estimate_summary_csv(std::ostream& os, const EstimateRecord& record) {
    os << "mode,eps,estimate,total_cost_steps,total_cost_seconds,decorrelations,version\n";
    for (const auto& run : record.runs) {
        if (run.steps.empty()) continue;
        const auto& last = run.steps.back();
        double steps_total = 0.0;
        double seconds_total = 0.0;
        std::int64_t decorr = 0;
        for (const auto& s : run.steps) {
            steps_total += s.result.total_cost_steps;
            seconds_total += s.result.total_cost_seconds;
            decorr += s.result.decorrelation_count;
        }
        os << run.mode << ',' << detail::format_double(last.eps) << ','
           << detail::format_double(last.result.estimate) << ','
           << detail::format_double(steps_total) << ',' << detail::format_double(seconds_total)
           << ',' << decorr << ',' << kVersion << '\n';
    }
}

/// Key=value snapshot of the configuration; doubles round-trip exactly.
inline void write_config_snapshot(std::ostream& os, const RunConfig& cfg) {
    os << "version=" << kVersion << '\n';
    os << "background=" << cfg.background << '\n';
    os << "a=" << detail::format_double(cfg.a) << '\n';
    os << "b=" << detail::format_double(cfg.b) << '\n';
    os << "T=" << detail::format_double(cfg.T) << '\n';
    os << "max_level=" << cfg.max_level << '\n';
    os << "seed=" << cfg.seed << '\n';
    os << "n_warmup=" << cfg.n_warmup << '\n';
    os << "eps0=" << detail::format_double(cfg.eps0) << '\n';
    os << "r_min=" << cfg.r_min << '\n';
    os << "r_max=" << cfg.r_max << '\n';
    if (!cfg.eps_list.empty()) {
        os << "eps_list=";
        for (std::size_t i = 0; i < cfg.eps_list.size(); ++i) {
            if (i > 0) os << ';';
            os << detail::format_double(cfg.eps_list[i]);
        }
        os << '\n';
    }
    os << "mode=" << cfg.mode << '\n';
    os << "selection=" << cfg.selection << '\n';
    os << "cost_model=" << cfg.cost_model << '\n';
    os << "workers=" << cfg.workers << '\n';
    os << "n_samples=" << cfg.n_samples << '\n';
    os << "b_reps=" << cfg.b_reps << '\n';
    os << "reps=" << cfg.reps << '\n';
}

// ---------------------------------------------------------------------------
// compare: KDMC vs ML-KDMC wall-clock speedup at matched tolerance
// ---------------------------------------------------------------------------

struct CompareRow {
    int rep = 0;
    double cost_kdmc_seconds = 0.0;
    double cost_ml_seconds = 0.0;
    double cost_kdmc_steps = 0.0;
    double cost_ml_steps = 0.0;
    double speedup = 0.0;  ///< per-repetition wall-clock ratio
};

struct CompareRecord {
    std::vector<CompareRow> rows;
    double speedup = 0.0;          ///< ratio of total wall-clock costs
    double speedup_se = 0.0;       ///< jackknife standard error over repetitions
    double speedup_steps = 0.0;    ///< ratio of total step-count costs
};

/// Runs the single-level and multilevel estimators at the same finest level
/// (config max_level) and the same final tolerance, repeated over `reps`
/// seeds. Both estimate the same E[Q_L], so the speedup compares the cost of
/// meeting the identical error budget. The error bar is a leave-one-out
/// jackknife over the repetitions.
inline CompareRecord cmd_compare(const RunConfig& cfg) {
    cfg.validate();
    const Background bg = cfg.make();
    const double eps = cfg.tolerances().back();
    CompareRecord record;

    for (int rep = 0; rep < cfg.reps; ++rep) {
        EstimatorOptions opt = cfg.estimator_options();
        opt.seed = detail::hash_combine(cfg.seed, static_cast<std::uint64_t>(rep));

        const PilotReport pilot =
            pilot_run(bg, cfg.T, cfg.max_level, cfg.n_warmup, opt.seed, cfg.workers);
        const LevelSet set =
            select_levels(pilot, cfg.max_level, cfg.selection_mode(), opt.cost_model);

        const EstimatorResult ml = run_estimator(bg, cfg.T, set, eps, opt);
        const EstimatorResult sl = estimate_single_level(bg, cfg.T, cfg.max_level, eps, opt);

        CompareRow row;
        row.rep = rep;
        row.cost_kdmc_seconds = sl.total_cost_seconds;
        row.cost_ml_seconds = ml.total_cost_seconds;
        row.cost_kdmc_steps = sl.total_cost_steps;
        row.cost_ml_steps = ml.total_cost_steps;
        row.speedup = sl.total_cost_seconds / ml.total_cost_seconds;
        record.rows.push_back(row);
    }

    double k_total = 0.0, m_total = 0.0, ks_total = 0.0, ms_total = 0.0;
    for (const auto& r : record.rows) {
        k_total += r.cost_kdmc_seconds;
        m_total += r.cost_ml_seconds;
        ks_total += r.cost_kdmc_steps;
        ms_total += r.cost_ml_steps;
    }
    record.speedup = k_total / m_total;
    record.speedup_steps = ks_total / ms_total;

    const auto n = static_cast<double>(record.rows.size());
    double mean_loo = 0.0;
    std::vector<double> loo(record.rows.size());
    for (std::size_t i = 0; i < record.rows.size(); ++i) {
        loo[i] = (k_total - record.rows[i].cost_kdmc_seconds) /
                 (m_total - record.rows[i].cost_ml_seconds);
        mean_loo += loo[i];
    }
    mean_loo /= n;
    double ss = 0.0;
    for (const double v : loo) ss += (v - mean_loo) * (v - mean_loo);
    record.speedup_se = std::sqrt((n - 1.0) / n * ss);
    return record;
}

inline void write_compare_csv(std::ostream& os, const CompareRecord& record) {
    os << "rep,cost_kdmc_seconds,cost_mlkdmc_seconds,cost_kdmc_steps,cost_mlkdmc_steps,"
          "speedup\n";
    for (const auto& r : record.rows) {
        os << r.rep << ',' << detail::format_double(r.cost_kdmc_seconds) << ','
           << detail::format_double(r.cost_ml_seconds) << ','
           << detail::format_double(r.cost_kdmc_steps) << ','
           << detail::format_double(r.cost_ml_steps) << ','
           << detail::format_double(r.speedup) << '\n';
    }
}

inline void write_compare_summary_csv(std::ostream& os, const RunConfig& cfg,
                                      const CompareRecord& record) {
    os << "background,a,b,eps,reps,speedup,speedup_se,speedup_steps,version\n";
    os << cfg.background << ',' << detail::format_double(cfg.a) << ','
       << detail::format_double(cfg.b) << ',' << detail::format_double(cfg.tolerances().back())
       << ',' << cfg.reps << ',' << detail::format_double(record.speedup) << ','
       << detail::format_double(record.speedup_se) << ','
       << detail::format_double(record.speedup_steps) << ',' << kVersion << '\n';
}

}  // namespace kdmc
