// Copyright 2026 the kdmc authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kdmc/allocation.hpp"
#include "kdmc/levels.hpp"
#include "kdmc/sampling.hpp"

namespace kdmc {

enum class CostModel {
    steps,   ///< KD step count per sample; deterministic and hardware-free
    seconds  ///< measured wall-clock seconds per sample
};

struct EstimatorOptions {
    std::uint64_t seed = 0;
    int workers = 1;
    CostModel cost_model = CostModel::steps;
    std::int64_t min_batch = 100;  ///< smallest sampling batch per member
};

/// Per-member statistics of an estimator run. The base member samples the
/// coarsest level alone (coarse_level = -1); every other member samples the
/// correlated difference between its level and the previous set member.
struct MemberStats {
    int level = 0;
    int coarse_level = -1;
    std::int64_t n = 0;
    double mean = 0.0;
    double variance = 0.0;
    double cost_steps = 0.0;    ///< mean KD steps per sample
    double cost_seconds = 0.0;  ///< mean wall seconds per sample
};

struct EstimatorResult {
    double estimate = 0.0;
    std::vector<MemberStats> members;
    double tolerance = 0.0;
    double bias_budget = 0.0;            ///< eps / sqrt(2), the bias half of the error split
    double achieved_stat_variance = 0.0; ///< sum of V / N over members, <= eps^2 / 2
    double total_cost_steps = 0.0;
    double total_cost_seconds = 0.0;
    std::int64_t decorrelation_count = 0;
};

namespace detail {

struct MemberSampler {
    int level;
    int coarse_level;  // -1: plain level sample
    SampleBatchStats stats;
    std::int64_t drawn = 0;

    void extend(const Background& bg, double T, std::int64_t target,
                const EstimatorOptions& opt) {
        if (target <= drawn) return;
        SampleBatchStats batch;
        if (coarse_level < 0) {
            batch = sample_level_batch(bg, T, level, drawn, target, opt.seed,
                                       StreamPurpose::path, opt.workers);
        } else {
            batch = sample_pair_batch(bg, T, level, coarse_level, drawn, target, opt.seed,
                                      StreamPurpose::pair, StreamPurpose::pair_fallback,
                                      opt.workers);
        }
        stats.merge(batch);
        drawn = target;
    }

    double cost(CostModel model) const {
        const double c = (model == CostModel::steps) ? stats.mean_steps() : stats.mean_seconds();
        return (c > 0.0) ? c : 1e-12;  // cost floor while no sample exists yet
    }

    MemberStats summary() const {
        MemberStats ms;
        ms.level = level;
        ms.coarse_level = coarse_level;
        ms.n = stats.value.count();
        ms.mean = stats.value.mean();
        ms.variance = stats.value.variance();
        ms.cost_steps = stats.mean_steps();
        ms.cost_seconds = stats.mean_seconds();
        return ms;
    }
};

inline EstimatorResult finalize(const std::vector<MemberSampler>& samplers, double eps) {
    EstimatorResult res;
    res.tolerance = eps;
    res.bias_budget = eps / std::sqrt(2.0);
    for (const auto& s : samplers) {
        res.estimate += s.stats.value.mean();
        res.achieved_stat_variance +=
            s.stats.value.variance() / static_cast<double>(std::max<std::int64_t>(1, s.drawn));
        res.total_cost_steps += s.stats.steps_sum;
        res.total_cost_seconds += s.stats.seconds_sum;
        res.decorrelation_count += s.stats.exhaustion_count;
        res.members.push_back(s.summary());
    }
    return res;
}

}  // namespace detail

/// Plain Monte Carlo estimate of E[Q_level] with the statistical constraint
/// V / N <= eps^2 / 2. The variance is estimated on-line and the sample
/// target re-derived until it is satisfied.
inline EstimatorResult estimate_single_level(const Background& bg, double T, int level,
                                             double eps, const EstimatorOptions& opt = {}) {
    if (!(eps > 0.0)) throw std::invalid_argument("estimate_single_level: eps must be positive");
    detail::MemberSampler sampler{level, -1, {}, 0};
    std::int64_t target = kMinSamples;
    for (;;) {
        sampler.extend(bg, T, target, opt);
        const std::int64_t next = single_level_target(sampler.stats.value.variance(), eps);
        if (next <= sampler.drawn) break;
        // Grow in steps so a noisy early variance cannot trigger one huge batch.
        target = std::min(next, std::max(sampler.drawn + opt.min_batch,
                                         sampler.drawn + (sampler.drawn + 4) / 2));
    }
    return detail::finalize({sampler}, eps);
}

/// Multilevel estimator over a fixed level set: a plain sample of the
/// coarsest member plus correlated fine/coarse differences between
/// consecutive members, each member sampled at the cost-optimal count for
/// the eps^2 / 2 statistical budget. Sample counts are re-derived from the
/// running statistics in batches until every target is met.
///
/// `hot_start`, when given, seeds the member statistics with reusable pilot
/// measurements (matching members only).
inline EstimatorResult run_estimator(const Background& bg, double T, const LevelSet& set,
                                     double eps, const EstimatorOptions& opt = {},
                                     const PilotReport* hot_start = nullptr) {
    if (!(eps > 0.0)) throw std::invalid_argument("run_estimator: eps must be positive");
    std::vector<detail::MemberSampler> samplers;
    samplers.reserve(set.size());
    for (std::size_t j = 0; j < set.levels.size(); ++j) {
        detail::MemberSampler s{set.levels[j], (j == 0) ? -1 : set.levels[j - 1], {}, 0};
        if (hot_start != nullptr) {
            // Pilot samples are i.i.d. samples of the same member quantities,
            // so they count toward the targets.
            const auto li = static_cast<std::size_t>(s.level);
            if (j == 0 && s.level <= hot_start->measured_max) {
                s.stats.value = hot_start->level_acc[li];
                s.stats.steps_sum = hot_start->level_steps_sum[li];
                s.stats.seconds_sum = hot_start->level_seconds_sum[li];
                s.drawn = s.stats.value.count();
            } else if (j > 0 && s.coarse_level == s.level - 1 &&
                       s.level <= hot_start->measured_max) {
                s.stats.value = hot_start->diff_acc[li];
                s.stats.steps_sum = hot_start->diff_steps_sum[li];
                s.stats.seconds_sum = hot_start->diff_seconds_sum[li];
                s.drawn = s.stats.value.count();
            }
        }
        samplers.push_back(std::move(s));
    }

    for (int round = 0;; ++round) {
        std::vector<MemberBudget> budgets;
        budgets.reserve(samplers.size());
        for (auto& s : samplers) {
            s.extend(bg, T, kMinSamples, opt);  // keep variances defined
            budgets.push_back({s.stats.value.variance(), s.cost(opt.cost_model)});
        }
        const auto targets = optimal_sample_counts(budgets, eps);
        bool done = true;
        for (std::size_t j = 0; j < samplers.size(); ++j) {
            if (targets[j] > samplers[j].drawn) {
                done = false;
                // Batch toward the target: at least min_batch, at least 10% of
                // the remaining deficit, never past the target.
                const std::int64_t deficit = targets[j] - samplers[j].drawn;
                const std::int64_t batch =
                    std::max(opt.min_batch, (deficit + 9) / 10);
                samplers[j].extend(bg, T, samplers[j].drawn + std::min(deficit, batch), opt);
            }
        }
        if (done) break;
    }
    return detail::finalize(samplers, eps);
}

/// Weak-order fit of the difference-mean decay used for bias estimation:
/// |E[dQ_l]| ~ 2^{-w l}. Fitted from the last up-to-three decades of the
/// measured means; clamped to a sane range so sign flips and noise in
/// near-unbiased configurations cannot destabilize the level choice.
inline double fit_weak_order(const std::vector<double>& e_diff, int measured_max) {
    std::vector<double> ratios;
    for (int l = measured_max; l >= 2 && ratios.size() < 3; --l) {
        const double hi = std::abs(e_diff[static_cast<std::size_t>(l)]);
        const double lo = std::abs(e_diff[static_cast<std::size_t>(l - 1)]);
        if (hi > 0.0 && lo > 0.0) {
            ratios.push_back(std::log2(lo / hi));
        }
    }
    if (ratios.empty()) return 1.0;
    double sum = 0.0;
    for (const double r : ratios) sum += r;
    return std::clamp(sum / static_cast<double>(ratios.size()), 0.5, 3.0);
}

/// Discretization-bias estimate at the finest level L, extrapolated from the
/// observed multilevel-difference means: with weak order w,
/// |E[Q_L - Q]| ~ |E[dQ_{L,L-1}]| / (2^w - 1).
inline double estimate_bias(const PilotReport& pilot, int level) {
    const double w = fit_weak_order(pilot.e_diff, pilot.measured_max);
    const auto li = static_cast<std::size_t>(std::min(level, pilot.max_level));
    double e = std::abs(pilot.e_diff[li]);
    if (level > pilot.max_level) {
        e *= std::pow(2.0, -w * (level - pilot.max_level));
    }
    return e / (std::pow(2.0, w) - 1.0);
}

/// Finest level required to push the estimated bias below eps / sqrt(2),
/// clamped to the pilot's level range.
inline int level_for_tolerance(const PilotReport& pilot, double eps) {
    const double budget = eps / std::sqrt(2.0);
    for (int level = 1; level <= pilot.max_level; ++level) {
        if (estimate_bias(pilot, level) <= budget) return level;
    }
    return pilot.max_level;
}

enum class SelectionMode { exact, heuristic };

/// Level set for finest level L from pilot data, by exact DAG optimization or
/// by the variance-decay heuristic.
inline LevelSet select_levels(const PilotReport& pilot, int finest, SelectionMode mode,
                              CostModel cost_model = CostModel::steps) {
    if (mode == SelectionMode::exact) {
        const LevelInputs in = pilot.inputs(cost_model == CostModel::steps);
        return select_levels_exact(in, finest);
    }
    std::vector<double> v_level(pilot.v_level.begin(),
                                pilot.v_level.begin() + finest + 1);
    std::vector<double> v_diff(pilot.v_diff.begin(), pilot.v_diff.begin() + finest + 1);
    return select_levels_heuristic(v_level, v_diff);
}

struct AdaptiveStep {
    double eps = 0.0;
    int finest_level = 0;
    LevelSet set;
    EstimatorResult result;
};

enum class EstimatorMode { kdmc, ml_kdmc };

/// Runs the estimator for a decreasing sequence of tolerances. For each
/// tolerance the finest level is raised until the extrapolated bias fits in
/// the eps / sqrt(2) budget, the level set is re-selected if the finest level
/// grew, and the estimator runs to its statistical budget. Warm-up
/// measurements hot-start the multilevel members.
inline std::vector<AdaptiveStep> run_adaptive(const Background& bg, double T,
                                              const std::vector<double>& eps_sequence,
                                              const PilotReport& pilot, EstimatorMode mode,
                                              SelectionMode selection,
                                              const EstimatorOptions& opt = {}) {
    if (eps_sequence.empty()) throw std::invalid_argument("run_adaptive: empty tolerance sequence");
    for (std::size_t r = 1; r < eps_sequence.size(); ++r) {
        if (!(eps_sequence[r] < eps_sequence[r - 1])) {
            throw std::invalid_argument("run_adaptive: tolerances must decrease");
        }
    }
    std::vector<AdaptiveStep> out;
    out.reserve(eps_sequence.size());
    int finest = 0;
    LevelSet set;
    for (const double eps : eps_sequence) {
        const int needed = level_for_tolerance(pilot, eps);
        if (out.empty() || needed > finest) {
            finest = std::max(finest, needed);
            if (mode == EstimatorMode::ml_kdmc) {
                set = select_levels(pilot, finest, selection, opt.cost_model);
            } else {
                set = LevelSet({finest});
            }
        }
        AdaptiveStep step;
        step.eps = eps;
        step.finest_level = finest;
        step.set = set;
        EstimatorOptions run_opt = opt;
        run_opt.seed = detail::hash_combine(opt.seed, static_cast<std::uint64_t>(out.size()));
        if (mode == EstimatorMode::ml_kdmc) {
            step.result = run_estimator(bg, T, set, eps, run_opt, &pilot);
        } else {
            step.result = estimate_single_level(bg, T, finest, eps, run_opt);
        }
        out.push_back(std::move(step));
    }
    return out;
}

}  // namespace kdmc
