// Copyright 2026 the kdmc authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "kdmc/allocation.hpp"
#include "kdmc/sampling.hpp"

namespace kdmc {

/// Ordered set of estimator levels; always contains the finest level, which
/// pins the estimator's bias.
struct LevelSet {
    std::vector<int> levels;

    LevelSet() = default;
    explicit LevelSet(std::vector<int> ls) : levels(std::move(ls)) {
        if (levels.empty()) throw std::invalid_argument("LevelSet: empty");
        for (std::size_t j = 1; j < levels.size(); ++j) {
            if (!(levels[j - 1] < levels[j])) {
                throw std::invalid_argument("LevelSet: levels must be strictly increasing");
            }
        }
        if (levels.front() < 0) throw std::invalid_argument("LevelSet: negative level");
    }

    int finest() const { return levels.back(); }
    std::size_t size() const { return levels.size(); }
    bool operator==(const LevelSet& other) const { return levels == other.levels; }
};

/// Cross-variance approximation for a non-adjacent level pair from the
/// per-level variances and each level's correlation with the finest level:
///   V_ij ~= V_i + V_j - 2 sqrt((rho_Li^2 + rho_Lj^2 - 1) V_i V_j).
/// When the correlations are too weak for the formula (radicand negative),
/// the radicand is clamped to zero, i.e. the pair is treated as uncorrelated;
/// `clamp_count`, when given, counts those events.
inline double approx_cross_variance(double v_i, double v_j, double rho_li, double rho_lj,
                                    std::int64_t* clamp_count = nullptr) {
    double radicand = (rho_li * rho_li + rho_lj * rho_lj - 1.0) * v_i * v_j;
    if (radicand < 0.0) {
        radicand = 0.0;
        if (clamp_count != nullptr) ++*clamp_count;
    }
    return std::max(0.0, v_i + v_j - 2.0 * std::sqrt(radicand));
}

/// Per-level inputs of the selection problem for levels 0..L: variances and
/// costs of single-level quantities, variances and costs of adjacent
/// differences, and correlations with the finest level.
struct LevelInputs {
    std::vector<double> v_level;   ///< V_l, l = 0..L
    std::vector<double> c_level;   ///< C_l, l = 0..L
    std::vector<double> v_diff;    ///< V_{l,l-1}, index l (index 0 unused)
    std::vector<double> c_diff;    ///< C_{l,l-1}, index l (index 0 unused)
    std::vector<double> rho_fin;   ///< correlation of Q_l with Q_L

    int max_level() const { return static_cast<int>(v_level.size()) - 1; }

    /// Variance of the difference between levels fine > coarse: the measured
    /// adjacent value when fine = coarse + 1, the correlation-based
    /// approximation otherwise.
    double pair_variance(int fine, int coarse, std::int64_t* clamp_count = nullptr) const {
        if (fine == coarse + 1) return v_diff[static_cast<std::size_t>(fine)];
        return approx_cross_variance(v_level[static_cast<std::size_t>(fine)],
                                     v_level[static_cast<std::size_t>(coarse)],
                                     rho_fin[static_cast<std::size_t>(fine)],
                                     rho_fin[static_cast<std::size_t>(coarse)], clamp_count);
    }

    /// Cost of one correlated pair sample: the sum of the per-level costs.
    double pair_cost(int fine, int coarse) const {
        return c_level[static_cast<std::size_t>(fine)] +
               c_level[static_cast<std::size_t>(coarse)];
    }
};

/// Square-root cost objective of a level set, the quantity minimized by the
/// selection problem (the predicted total cost is proportional to its
/// square):
///   sqrt(V_{l1} C_{l1}) + sum_j sqrt(V_{lj,lj-1} C_{lj,lj-1}).
inline double selection_objective(const LevelInputs& in, const LevelSet& set,
                                  std::int64_t* clamp_count = nullptr) {
    const auto& ls = set.levels;
    double obj = std::sqrt(in.v_level[static_cast<std::size_t>(ls[0])] *
                           in.c_level[static_cast<std::size_t>(ls[0])]);
    for (std::size_t j = 1; j < ls.size(); ++j) {
        obj += std::sqrt(in.pair_variance(ls[j], ls[j - 1], clamp_count) *
                         in.pair_cost(ls[j], ls[j - 1]));
    }
    return obj;
}

/// Member budgets (variance, cost) of a level set, for sample allocation and
/// cost prediction.
inline std::vector<MemberBudget> member_budgets(const LevelInputs& in, const LevelSet& set) {
    const auto& ls = set.levels;
    std::vector<MemberBudget> members;
    members.reserve(ls.size());
    members.push_back({in.v_level[static_cast<std::size_t>(ls[0])],
                       in.c_level[static_cast<std::size_t>(ls[0])]});
    for (std::size_t j = 1; j < ls.size(); ++j) {
        members.push_back({in.pair_variance(ls[j], ls[j - 1]),
                           in.pair_cost(ls[j], ls[j - 1])});
    }
    return members;
}

/// Exact level selection: the subset of {0..L} containing L that minimizes
/// the selection objective. The combinatorial problem decomposes over
/// consecutive set members, so it is solved as a shortest path on the level
/// DAG (node = level, edge weight = the pair's square-root cost term, source
/// term = the base level's), which reproduces the exhaustive optimum at
/// O(L^2) cost.
inline LevelSet select_levels_exact(const LevelInputs& in, int finest,
                                    std::int64_t* clamp_count = nullptr) {
    if (finest < 0 || finest > in.max_level()) {
        throw std::invalid_argument("select_levels_exact: finest level out of range");
    }
    const std::size_t n = static_cast<std::size_t>(finest) + 1;
    std::vector<double> best(n);
    std::vector<int> parent(n, -1);  // -1: path starts here (base level)
    for (std::size_t i = 0; i < n; ++i) {
        best[i] = std::sqrt(in.v_level[i] * in.c_level[i]);
        for (std::size_t j = 0; j < i; ++j) {
            const double w = std::sqrt(
                in.pair_variance(static_cast<int>(i), static_cast<int>(j), clamp_count) *
                in.pair_cost(static_cast<int>(i), static_cast<int>(j)));
            if (best[j] + w < best[i]) {
                best[i] = best[j] + w;
                parent[i] = static_cast<int>(j);
            }
        }
    }
    std::vector<int> levels;
    for (int i = finest; i >= 0; i = parent[static_cast<std::size_t>(i)]) {
        levels.push_back(i);
        if (parent[static_cast<std::size_t>(i)] < 0) break;
    }
    std::reverse(levels.begin(), levels.end());
    return LevelSet(std::move(levels));
}

/// Heuristic level selection from the per-level variances V_l and adjacent
/// difference variances V_{l,l-1} (v_diff index l, index 0 unused):
/// find the first level where the difference variance drops below the level
/// variance, seed the set with that level and its predecessor, then sweep
/// upward adding a level whenever its difference variance has decayed below
/// half the smallest one seen. The finest level is always included so the
/// set is usable by the estimator. If no crossover exists the two finest
/// levels are returned.
inline LevelSet select_levels_heuristic(const std::vector<double>& v_level,
                                        const std::vector<double>& v_diff) {
    const int max_level = static_cast<int>(v_level.size()) - 1;
    if (max_level < 0 || v_diff.size() != v_level.size()) {
        throw std::invalid_argument("select_levels_heuristic: need inputs for levels 0..L");
    }
    if (max_level == 0) return LevelSet({0});

    int l = 1;
    while (l <= max_level && v_diff[static_cast<std::size_t>(l)] > v_level[static_cast<std::size_t>(l)]) {
        ++l;
    }
    if (l > max_level) {
        return LevelSet({max_level - 1, max_level});
    }
    std::vector<int> levels = {l - 1, l};
    double v_min = v_diff[static_cast<std::size_t>(l)];
    for (int m = l + 1; m <= max_level; ++m) {
        if (v_diff[static_cast<std::size_t>(m)] < 0.5 * v_min) {
            levels.push_back(m);
            v_min = v_diff[static_cast<std::size_t>(m)];
        }
    }
    if (levels.back() != max_level) levels.push_back(max_level);
    return LevelSet(std::move(levels));
}

/// Warm-up measurement of the per-level statistics entering level selection.
///
/// Levels are measured with n_warmup samples each only up to the cut level
/// tau_cut where dt ~ 1/b; below that time step the difference variance
/// follows its cubic asymptotic decay and the per-sample cost is flat, so
/// measured values are extended instead of sampled:
///   V_{l,l-1} = V_{m,m-1} (dt_l / dt_m)^3,  C flat,  V_l flat,
/// anchored at the finest measured level m. Correlations with the finest
/// level are measured against m and chained through the (extrapolated)
/// adjacent correlations beyond it. When the cut leaves no adjacent pair
/// measurable (b T <= 2) everything is measured directly.
struct PilotReport {
    int max_level = 0;
    int tau_cut = 0;        ///< first level with dt ~ 1/b
    int measured_max = 0;   ///< finest directly measured level m
    std::int64_t n_warmup = 0;

    std::vector<double> v_level;
    std::vector<double> c_level_steps;
    std::vector<double> c_level_seconds;
    std::vector<double> e_level;
    std::vector<double> v_diff;        ///< index l, adjacent pair (l, l-1); [0] unused
    std::vector<double> c_diff_steps;
    std::vector<double> c_diff_seconds;
    std::vector<double> e_diff;        ///< mean of the adjacent difference
    std::vector<double> rho_fin;       ///< correlation with the finest level
    std::vector<bool> extrapolated;    ///< true where values come from the asymptotic rule

    /// Accumulators retained to hot-start the estimator.
    std::vector<MomentAccumulator> level_acc;
    std::vector<MomentAccumulator> diff_acc;
    std::vector<double> diff_steps_sum;
    std::vector<double> diff_seconds_sum;
    std::vector<double> level_steps_sum;
    std::vector<double> level_seconds_sum;

    LevelInputs inputs(bool steps_cost = true) const {
        LevelInputs in;
        in.v_level = v_level;
        in.c_level = steps_cost ? c_level_steps : c_level_seconds;
        in.v_diff = v_diff;
        in.c_diff = steps_cost ? c_diff_steps : c_diff_seconds;
        in.rho_fin = rho_fin;
        return in;
    }
};

/// Cut level: the coarsest level whose time step resolves the base collision
/// rate, ceil(log2(b T)) clamped to [0, L].
inline int pilot_cut_level(double b, double T, int max_level) {
    const double lg = std::log2(std::max(1.0, b * T));
    const int tau = static_cast<int>(std::ceil(lg - 1e-12));
    return std::clamp(tau, 0, max_level);
}

inline PilotReport pilot_run(const Background& bg, double T, int max_level,
                             std::int64_t n_warmup, std::uint64_t root_seed,
                             int workers = 1, double rate_floor = 0.0) {
    if (n_warmup < 2) throw std::invalid_argument("pilot_run: need at least 2 warm-up samples");
    if (max_level < 0) throw std::invalid_argument("pilot_run: negative max level");

    PilotReport rep;
    rep.max_level = max_level;
    rep.n_warmup = n_warmup;
    if (rate_floor <= 0.0) rate_floor = bg.rate(kReleasePosition);
    rep.tau_cut = pilot_cut_level(rate_floor, T, max_level);
    // With no adjacent pair inside the cut there is nothing to anchor the
    // asymptotic rule on; measuring everything is then also the cheap option
    // since the cost per path is flat across all levels.
    rep.measured_max = (rep.tau_cut >= 1) ? rep.tau_cut : max_level;

    const std::size_t n_levels = static_cast<std::size_t>(max_level) + 1;
    rep.v_level.assign(n_levels, 0.0);
    rep.c_level_steps.assign(n_levels, 0.0);
    rep.c_level_seconds.assign(n_levels, 0.0);
    rep.e_level.assign(n_levels, 0.0);
    rep.v_diff.assign(n_levels, 0.0);
    rep.c_diff_steps.assign(n_levels, 0.0);
    rep.c_diff_seconds.assign(n_levels, 0.0);
    rep.e_diff.assign(n_levels, 0.0);
    rep.rho_fin.assign(n_levels, 1.0);
    rep.extrapolated.assign(n_levels, false);
    rep.level_acc.assign(n_levels, {});
    rep.diff_acc.assign(n_levels, {});
    rep.diff_steps_sum.assign(n_levels, 0.0);
    rep.diff_seconds_sum.assign(n_levels, 0.0);
    rep.level_steps_sum.assign(n_levels, 0.0);
    rep.level_seconds_sum.assign(n_levels, 0.0);

    const int m = rep.measured_max;
    std::vector<double> rho_m(n_levels, 1.0);  // correlation with level m
    for (int l = 0; l <= m; ++l) {
        const auto li = static_cast<std::size_t>(l);
        const auto batch = sample_level_batch(bg, T, l, 0, n_warmup, root_seed,
                                              StreamPurpose::pilot_path, workers);
        rep.v_level[li] = batch.value.variance();
        rep.e_level[li] = batch.value.mean();
        rep.c_level_steps[li] = batch.mean_steps();
        rep.c_level_seconds[li] = batch.mean_seconds();
        rep.level_acc[li] = batch.value;
        rep.level_steps_sum[li] = batch.steps_sum;
        rep.level_seconds_sum[li] = batch.seconds_sum;

        if (l >= 1) {
            const auto diff = sample_pair_batch(bg, T, l, l - 1, 0, n_warmup, root_seed,
                                                StreamPurpose::pilot_pair,
                                                StreamPurpose::pilot_fallback, workers);
            rep.v_diff[li] = diff.value.variance();
            rep.e_diff[li] = diff.value.mean();
            rep.c_diff_steps[li] = diff.mean_steps();
            rep.c_diff_seconds[li] = diff.mean_seconds();
            rep.diff_acc[li] = diff.value;
            rep.diff_steps_sum[li] = diff.steps_sum;
            rep.diff_seconds_sum[li] = diff.seconds_sum;
        }
        if (l < m) {
            const auto cross = sample_pair_batch(bg, T, m, l, 0, n_warmup, root_seed,
                                                 StreamPurpose::pilot_pair,
                                                 StreamPurpose::pilot_fallback, workers);
            rho_m[li] = std::clamp(cross.pair.correlation(), -1.0, 1.0);
        }
    }

    // Asymptotic extension beyond the measured horizon.
    for (int l = m + 1; l <= max_level; ++l) {
        const auto li = static_cast<std::size_t>(l);
        const auto mi = static_cast<std::size_t>(m);
        rep.extrapolated[li] = true;
        rep.v_level[li] = rep.v_level[mi];
        rep.e_level[li] = rep.e_level[mi];
        rep.c_level_steps[li] = rep.c_level_steps[mi];
        rep.c_level_seconds[li] = rep.c_level_seconds[mi];
        const double ratio = std::pow(0.5, 3.0 * (l - m));  // (dt_l / dt_m)^3
        rep.v_diff[li] = (m >= 1) ? rep.v_diff[mi] * ratio : 0.0;
        rep.e_diff[li] = (m >= 1) ? rep.e_diff[mi] * ratio : 0.0;
        rep.c_diff_steps[li] = (m >= 1) ? rep.c_diff_steps[mi] : 2.0 * rep.c_level_steps[mi];
        rep.c_diff_seconds[li] = (m >= 1) ? rep.c_diff_seconds[mi] : 2.0 * rep.c_level_seconds[mi];
    }

    // Correlations with the finest level: chain the measured correlation to m
    // with the adjacent correlations implied by the extension,
    //   rho_{l,l-1} = (V_l + V_{l-1} - V_{l,l-1}) / (2 sqrt(V_l V_{l-1})).
    std::vector<double> rho_adj(n_levels, 1.0);
    for (int l = m + 1; l <= max_level; ++l) {
        const auto li = static_cast<std::size_t>(l);
        const double vl = rep.v_level[li];
        const double vp = rep.v_level[li - 1];
        if (vl > 0.0 && vp > 0.0) {
            rho_adj[li] = std::clamp((vl + vp - rep.v_diff[li]) / (2.0 * std::sqrt(vl * vp)),
                                     -1.0, 1.0);
        }
    }
    for (int l = 0; l <= max_level; ++l) {
        const auto li = static_cast<std::size_t>(l);
        double rho = (l <= m) ? rho_m[li] : 1.0;
        const int from = std::max(l, m);
        for (int k = from + 1; k <= max_level; ++k) {
            rho *= rho_adj[static_cast<std::size_t>(k)];
        }
        rep.rho_fin[li] = std::clamp(rho, -1.0, 1.0);
    }
    return rep;
}

}  // namespace kdmc
