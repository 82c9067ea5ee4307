// Copyright 2026 the kdmc authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kdmc/background.hpp"
#include "kdmc/kd.hpp"
#include "kdmc/rng.hpp"

namespace kdmc {

/// The fine-path steps feeding one coarse KD step. `kappa` is the index of
/// the first fine kinetic phase of the window; `records[i]` is the record of
/// fine step kappa + i. The window spans fine phases kappa .. kappa + size - 1,
/// i.e. everything the fine particle did since the previous aggregation, and
/// the last record's (nu, eps) draws belong to the first fine kinetic phase
/// left unused, which seeds the next coarse kinetic phase.
struct AggregationWindow {
    std::int64_t kappa = 0;
    std::span<const KdStepRecord> records;
};

/// Aggregated random triple for one coarse KD step.
struct CoarseDraws {
    double nu_t;
    double eps_t;  ///< > 0
    double chi_t;
};

/// Velocity draw for the next coarse kinetic phase: the fine draw of the
/// first unused fine kinetic phase, passed through unchanged.
inline double aggregate_nu(const AggregationWindow& window) {
    if (window.records.empty()) {
        throw std::invalid_argument("aggregate_nu: empty aggregation window");
    }
    return window.records.back().draws.nu;
}

/// Exponential budget for the next coarse kinetic phase. The fine particle
/// entered its pending kinetic phase at `fine_anchor` and has, by the time
/// the coarse phase starts, already consumed part of the exponential budget;
/// by memorylessness the remainder is again unit-exponential. The elapsed
/// time may be negative (the coarse clock can trail the fine anchor), in
/// which case the signed integral adds budget back. Returns nullopt when the
/// remaining budget is exhausted (<= 0), which signals a strongly
/// decorrelated pair.
inline std::optional<double> aggregate_eps(double eps_fine, const Background& bg,
                                           const ParticleState& fine_anchor,
                                           double coarse_time) {
    const double elapsed = coarse_time - fine_anchor.t;
    const double spent = rate_integral(bg, fine_anchor.x, fine_anchor.v, elapsed);
    const double eps_t = eps_fine - spent;
    if (!(eps_t > 0.0)) return std::nullopt;
    return eps_t;
}

/// Normalized weighted sum of the window's fine diffusive draws (chi, weights
/// beta) and interior kinetic velocity draws (nu, weights alpha), forming the
/// diffusive draw of one coarse step.
///
/// A post-collisional velocity influences the trajectory beyond its own
/// kinetic phase: it also steers the advective part of the *preceding*
/// diffusive phase. The expected duration of that influence,
///   zeta_m = (1 - e^{-R_m theta_m}) / R_m,
/// is transferred from the diffusive phase to the following kinetic phase:
///   tau'_{m+1} = tau_{m+1} + zeta_m,   theta'_m = theta_m - zeta_m.
/// The weights are then
///   alpha_m = tau'_m sigma_v,
///   beta_m  = sqrt(2 sigma_v^2 / R_m^2 (e^{-R_m theta'_m} + R_m theta'_m - 1)),
/// i.e. beta_m is the standard deviation of the diffusive update without
/// conditioning on the final velocity.
///
/// A single-phase window reduces to the unit-weight case and returns the fine
/// chi unchanged; the same fallback covers the degenerate window whose
/// weights all vanish.
inline double aggregate_chi(const AggregationWindow& window, const Background& bg) {
    const auto& recs = window.records;
    if (recs.empty()) {
        throw std::invalid_argument("aggregate_chi: empty aggregation window");
    }
    if (recs.size() == 1) {
        return recs[0].draws.chi;
    }

    const double sigma = bg.sigma_v();
    double num = 0.0;
    double den2 = 0.0;
    double zeta_prev = 0.0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const double rate = recs[i].rate;
        const double zeta = -std::expm1(-rate * recs[i].theta) / rate;
        if (i > 0) {
            // Interior kinetic phase kappa + i; its velocity draw was sampled
            // by the previous step.
            const double alpha = (recs[i].tau + zeta_prev) * sigma;
            num += alpha * recs[i - 1].draws.nu;
            den2 += alpha * alpha;
        }
        const double theta_mod = recs[i].theta - zeta;
        const double u = rate * theta_mod;
        const double beta2 = std::max(0.0, 2.0 * sigma * sigma * (std::expm1(-u) + u)) /
                             (rate * rate);
        const double beta = std::sqrt(beta2);
        num += beta * recs[i].draws.chi;
        den2 += beta2;
        zeta_prev = zeta;
    }
    if (!(den2 > 0.0)) {
        return recs[0].draws.chi;
    }
    return num / std::sqrt(den2);
}

/// Outcome of one correlated fine/coarse pair simulation.
struct CorrelatedResult {
    double x_fine = 0.0;
    double x_coarse = 0.0;
    std::int64_t fine_steps = 0;
    std::int64_t coarse_steps = 0;
    std::int64_t exhaustion_count = 0;  ///< coupling-budget exhaustions (fresh draws used)
};

namespace detail {

// End of the time interval of width dt containing time `after` (strictly
// later than `floor_t`). Must match the interval arithmetic of kd_step so the
// aggregation sees exactly the boundary the coarse step will land on.
inline double interval_ceiling(double after, double dt, double floor_t) noexcept {
    auto m = static_cast<std::int64_t>(std::ceil(after / dt));
    if (static_cast<double>(m) * dt <= floor_t) ++m;
    return static_cast<double>(m) * dt;
}

}  // namespace detail

/// Simulates a correlated pair of KD paths over [0, T] in one sweep: a fine
/// path with time step dt_fine and a coarse path with time step
/// dt_coarse = M dt_fine, the coarse path driven entirely by aggregated fine
/// random numbers. The inner loop advances the fine path until its pending
/// collision leaves the coarse particle's current time interval; the fine
/// steps taken since the previous aggregation then form the window for one
/// coarse KD step.
///
/// The fine path consumes `stream` in exactly the order of an uncorrelated
/// simulation, so with the same stream the fine output matches
/// simulate_path(bg, T, dt_fine, stream) bitwise. Replacement draws on
/// coupling exhaustion come from the separate `fallback` stream to preserve
/// that alignment. Fine steps taken beyond T only to complete a coarse
/// window are excluded from the fine output (the fine state is snapshotted
/// the first time its pending collision crosses T).
///
/// `sink(nu_t, eps_t, chi_t)` observes every aggregated coarse triple; pass
/// a no-op for plain sampling.
template <typename Sink>
CorrelatedResult correlated_path_observed(const Background& bg, double T, double dt_fine,
                                          double dt_coarse, DrawStream& stream,
                                          DrawStream& fallback, Sink&& sink,
                                          double x0 = kReleasePosition) {
    if (!(dt_fine > 0.0) || !(dt_coarse >= dt_fine)) {
        throw std::invalid_argument("correlated_path: need dt_coarse >= dt_fine > 0");
    }

    CorrelatedResult result;

    const double nu0 = stream.normal();
    const double eps0 = stream.exponential();
    const double v0 = bg.mu_v() + bg.sigma_v() * nu0;
    const double tau0 = collision_time(bg, x0, v0, eps0);
    ParticleState fine{x0, v0, 0.0, tau0};
    ParticleState coarse = fine;  // identical draws seed both paths

    // Fine output state, frozen the first time the pending collision crosses T.
    bool fine_frozen = false;
    ParticleState fine_out = fine;
    const auto freeze_fine = [&] {
        if (!fine_frozen && fine.t + fine.tau >= T) {
            fine_out = fine;
            fine_frozen = true;
        }
    };
    freeze_fine();

    std::vector<KdStepRecord> window;
    std::int64_t kappa = 0;

    while (coarse.t + coarse.tau < T || !fine_frozen) {
        const double coarse_ceiling =
            detail::interval_ceiling(coarse.t + coarse.tau, dt_coarse, coarse.t);
        // Advance the fine path until its pending collision leaves the coarse
        // particle's current time interval.
        do {
            const EventDraws draws{stream.normal(), stream.exponential(), stream.normal()};
            auto [next, rec] = kd_step(fine, bg, dt_fine, draws);
            fine = next;
            window.push_back(rec);
            ++result.fine_steps;
            freeze_fine();
            if (fine_frozen && coarse.t + coarse.tau >= T) {
                break;  // no aggregation left to feed
            }
        } while (detail::interval_ceiling(fine.t + fine.tau, dt_fine, fine.t) <=
                 coarse_ceiling);

        if (coarse.t + coarse.tau < T) {
            const AggregationWindow agg{kappa, std::span<const KdStepRecord>(window)};
            const double nu_t = aggregate_nu(agg);
            const double chi_t = aggregate_chi(agg, bg);
            double eps_t;
            if (const auto remaining = aggregate_eps(window.back().draws.eps, bg, fine,
                                                     coarse_ceiling)) {
                eps_t = *remaining;
            } else {
                eps_t = fallback.exponential();
                ++result.exhaustion_count;
            }
            sink(nu_t, eps_t, chi_t);
            auto [next, rec] = kd_step(coarse, bg, dt_coarse, EventDraws{nu_t, eps_t, chi_t});
            coarse = next;
            ++result.coarse_steps;
            kappa += static_cast<std::int64_t>(window.size());
            window.clear();
        }
    }

    result.x_fine = fine_out.x;
    if (fine_out.t < T) {
        result.x_fine += fine_out.v * (T - fine_out.t);
    }
    result.x_coarse = coarse.x;
    if (coarse.t < T) {
        result.x_coarse += coarse.v * (T - coarse.t);
    }
    return result;
}

/// As correlated_path_observed without observing the aggregated draws.
inline CorrelatedResult correlated_path(const Background& bg, double T, double dt_fine,
                                        double dt_coarse, DrawStream& stream,
                                        DrawStream& fallback, double x0 = kReleasePosition) {
    return correlated_path_observed(bg, T, dt_fine, dt_coarse, stream, fallback,
                                    [](double, double, double) {}, x0);
}

}  // namespace kdmc
