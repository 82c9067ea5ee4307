// Copyright 2026 the kdmc authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace kdmc {

/// Variance/cost summary of one estimator member: the base level alone
/// (j = 1) or a fine/coarse difference (j >= 2). V is the sample variance of
/// the member's quantity, C the cost of one of its samples.
struct MemberBudget {
    double variance = 0.0;
    double cost = 0.0;
};

/// Minimum sample count per member so variances stay defined.
inline constexpr std::int64_t kMinSamples = 2;

/// Plain Monte Carlo sample target from the statistical constraint
/// V / N <= eps^2 / 2 with a single member.
inline std::int64_t single_level_target(double variance, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("single_level_target: eps must be positive");
    const double n = 2.0 * variance / (eps * eps);
    return std::max<std::int64_t>(kMinSamples, static_cast<std::int64_t>(std::ceil(n)));
}

namespace detail {

inline double budget_factor(const std::vector<MemberBudget>& members) {
    double factor = 0.0;
    for (const auto& m : members) {
        factor += std::sqrt(std::max(0.0, m.variance) * m.cost);
    }
    return factor;
}

}  // namespace detail

/// Cost-optimal per-member sample counts for the statistical error budget
/// eps^2 / 2, i.e. the Lagrangian solution
///   N_j = (2 / eps^2) sqrt(V_j / C_j) sum_k sqrt(V_k C_k),
/// rounded up to integers and floored at the two-sample minimum. With all
/// variances zero the minimum count is returned for every member.
inline std::vector<std::int64_t> optimal_sample_counts(
    const std::vector<MemberBudget>& members, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("optimal_sample_counts: eps must be positive");
    if (members.empty()) throw std::invalid_argument("optimal_sample_counts: no members");
    for (const auto& m : members) {
        if (!(m.cost > 0.0)) {
            throw std::invalid_argument("optimal_sample_counts: costs must be positive");
        }
        if (m.variance < 0.0) {
            throw std::invalid_argument("optimal_sample_counts: negative variance");
        }
    }
    const double factor = detail::budget_factor(members);
    std::vector<std::int64_t> counts(members.size(), kMinSamples);
    if (factor <= 0.0) return counts;
    const double scale = 2.0 / (eps * eps) * factor;
    for (std::size_t j = 0; j < members.size(); ++j) {
        const double n = scale * std::sqrt(members[j].variance / members[j].cost);
        counts[j] = std::max<std::int64_t>(kMinSamples, static_cast<std::int64_t>(std::ceil(n)));
    }
    return counts;
}

/// Un-rounded optimal counts; substituting them back makes the statistical
/// constraint hold with equality. Used by tests and the cost identity below.
inline std::vector<double> optimal_sample_counts_real(
    const std::vector<MemberBudget>& members, double eps) {
    const double factor = detail::budget_factor(members);
    std::vector<double> counts(members.size(), 0.0);
    const double scale = 2.0 / (eps * eps) * factor;
    for (std::size_t j = 0; j < members.size(); ++j) {
        counts[j] = scale * std::sqrt(members[j].variance / members[j].cost);
    }
    return counts;
}

/// Total estimator cost at the optimal (continuous) sample counts:
///   (2 / eps^2) (sum_j sqrt(V_j C_j))^2.
inline double predicted_total_cost(const std::vector<MemberBudget>& members, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("predicted_total_cost: eps must be positive");
    const double factor = detail::budget_factor(members);
    return 2.0 / (eps * eps) * factor * factor;
}

}  // namespace kdmc
