// Copyright 2026 the kdmc authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "kdmc/background.hpp"
#include "kdmc/rng.hpp"

namespace kdmc {

/// Release position of the benchmark experiments: particles start at x = 1,
/// the minimum (B1) or kink (B2) of the background collision rate.
inline constexpr double kReleasePosition = 1.0;

/// Phase-space state of one particle between KD steps. `tau` is the already
/// solved time to the pending collision, measured from clock time `t`.
struct ParticleState {
    double x;    ///< position
    double v;    ///< velocity of the pending kinetic flight
    double t;    ///< clock time (an integer multiple of the time step after a full KD step)
    double tau;  ///< time to the pending collision, > 0
};

/// The random triple consumed by one KD step, in draw order: a standard
/// normal for the next post-collisional velocity, a unit exponential for the
/// next kinetic flight budget, and a standard normal for the diffusive
/// displacement of this step.
struct EventDraws {
    double nu;
    double eps;  ///< > 0
    double chi;
};

/// Everything one KD step contributes to the trajectory, retained so that a
/// coarser correlated path can aggregate the step later. `tau` and `theta`
/// are the kinetic and diffusive durations of the step, `rate` is the
/// collision rate frozen at the collision location (it parametrizes the
/// diffusive phase), and `draws` are the random numbers consumed by the
/// step: nu and eps belong to the *next* kinetic phase, chi to this step's
/// diffusive phase.
struct KdStepRecord {
    double theta;     ///< diffusive-phase duration, in [0, dt)
    double tau;       ///< kinetic-phase duration consumed by this step
    double a_coef;    ///< advective displacement of the diffusive phase
    double d_coef;    ///< diffusive displacement standard deviation, >= 0
    double rate;      ///< collision rate at the collision location
    EventDraws draws;
};

/// Mean displacement of the random-walk phase of duration theta given the
/// velocity v_next that the particle will carry into the next kinetic phase:
///   a = mu_v theta + (v_next - mu_v) (1 - e^{-R theta}) / R.
inline double advection_coefficient(double theta, double v_next, double rate,
                                    double mu_v, double /*sigma_v*/) {
    return mu_v * theta - (v_next - mu_v) * std::expm1(-rate * theta) / rate;
}

namespace detail {

// Bracketed factors of the squared diffusion coefficient:
//   bracket_sigma = 2 (e^{-u} - 1) + u (e^{-u} + 1)              = u^3/6 - u^4/12 + ...
//   bracket_v     = 1 - 2 u e^{-u} - e^{-2u}                      = u^3/3 - u^4/3 + ...
// Both are differences of O(u) and O(1) quantities that agree through O(u^2),
// so direct evaluation loses all digits for small u. Below the switch point
// the truncated series (through u^6) carries a relative error below 1e-11,
// while above it the expm1-based forms keep the same accuracy.
inline constexpr double kDiffusionTaylorSwitch = 5e-3;

inline double diffusion_bracket_sigma(double u) {
    if (u < kDiffusionTaylorSwitch) {
        return ((((-u / 180.0 + 1.0 / 40.0) * u - 1.0 / 12.0) * u + 1.0 / 6.0)) * u * u * u;
    }
    return 2.0 * std::expm1(-u) + u * (std::exp(-u) + 1.0);
}

inline double diffusion_bracket_v(double u) {
    if (u < kDiffusionTaylorSwitch) {
        return ((((-13.0 * u / 180.0 + 11.0 / 60.0) * u - 1.0 / 3.0) * u + 1.0 / 3.0)) * u * u * u;
    }
    return -std::expm1(-2.0 * u) - 2.0 * u * std::exp(-u);
}

}  // namespace detail

/// Standard deviation of the random-walk phase of duration theta conditioned
/// on the next-phase velocity v_next:
///   d^2 = (2 sigma_v^2 / R^2) [2 (e^{-u} - 1) + u (e^{-u} + 1)]
///       + ((v_next - mu_v)^2 / R^2) [1 - 2 u e^{-u} - e^{-2u}],   u = R theta.
/// A negative radicand can only arise from round-off and is clamped to zero.
inline double diffusion_coefficient(double theta, double v_next, double rate,
                                    double mu_v, double sigma_v) {
    const double u = rate * theta;
    const double dv = v_next - mu_v;
    const double d2 = (2.0 * sigma_v * sigma_v * detail::diffusion_bracket_sigma(u) +
                       dv * dv * detail::diffusion_bracket_v(u)) /
                      (rate * rate);
    return std::sqrt(std::max(0.0, d2));
}

/// One kinetic-diffusion step. Consumes the pending collision of `state`,
/// covers the remainder of the current time interval with the matched
/// random-walk displacement, and solves the next collision time from the
/// fresh draws. The advection/diffusion coefficients evaluate the collision
/// rate frozen at the collision location.
inline std::pair<ParticleState, KdStepRecord> kd_step(const ParticleState& state,
                                                      const Background& bg, double dt,
                                                      const EventDraws& draws) {
    const double x_col = state.x + state.v * state.tau;
    const double t_col = state.t + state.tau;
    const double rate = bg.rate(x_col);
    const double v_next = bg.mu_v() + bg.sigma_v() * draws.nu;

    // End of the time interval containing the collision. Guard against a
    // collision landing so close to the current clock that the quotient
    // rounds back onto it.
    auto m = static_cast<std::int64_t>(std::ceil(t_col / dt));
    if (static_cast<double>(m) * dt <= state.t) ++m;
    const double t_next = static_cast<double>(m) * dt;
    const double theta = std::max(0.0, t_next - t_col);

    const double a = advection_coefficient(theta, v_next, rate, bg.mu_v(), bg.sigma_v());
    const double d = diffusion_coefficient(theta, v_next, rate, bg.mu_v(), bg.sigma_v());
    const double x_next = x_col + a + d * draws.chi;
    const double tau_next = collision_time(bg, x_next, v_next, draws.eps);

    return {ParticleState{x_next, v_next, t_next, tau_next},
            KdStepRecord{theta, state.tau, a, d, rate, draws}};
}

struct PathResult {
    double x = 0.0;           ///< particle position at the end time
    std::int64_t steps = 0;   ///< number of KD steps taken
};

/// Simulates one KD path from t = 0 to t = T with time step dt, feeding every
/// step record to `record` (signature void(const KdStepRecord&)). Draws are
/// consumed from `stream` in the fixed order (nu, eps, chi) per step so that
/// a correlated coarse path can replay them. When the pending collision falls
/// beyond T the particle moves kinetically until the end time.
template <typename Recorder>
PathResult simulate_path_recorded(const Background& bg, double T, double dt,
                                  DrawStream& stream, Recorder&& record,
                                  double x0 = kReleasePosition) {
    const double nu0 = stream.normal();
    const double eps0 = stream.exponential();
    const double v0 = bg.mu_v() + bg.sigma_v() * nu0;
    ParticleState state{x0, v0, 0.0, collision_time(bg, x0, v0, eps0)};

    PathResult result;
    while (state.t + state.tau < T) {
        const EventDraws draws{stream.normal(), stream.exponential(), stream.normal()};
        auto [next, rec] = kd_step(state, bg, dt, draws);
        state = next;
        record(rec);
        ++result.steps;
    }
    result.x = state.x;
    if (state.t < T) {
        result.x += state.v * (T - state.t);
    }
    return result;
}

/// As simulate_path_recorded, without retaining step records.
inline PathResult simulate_path(const Background& bg, double T, double dt,
                                DrawStream& stream, double x0 = kReleasePosition) {
    return simulate_path_recorded(bg, T, dt, stream, [](const KdStepRecord&) {}, x0);
}

/// Convenience variant returning the full step sequence.
inline std::pair<PathResult, std::vector<KdStepRecord>> simulate_path_with_records(
    const Background& bg, double T, double dt, DrawStream& stream, double x0 = kReleasePosition) {
    std::vector<KdStepRecord> records;
    const PathResult result = simulate_path_recorded(
        bg, T, dt, stream, [&records](const KdStepRecord& r) { records.push_back(r); }, x0);
    return {result, records};
}

}  // namespace kdmc
