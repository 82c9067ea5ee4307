// Copyright 2026 the kdmc authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace kdmc {

/// Thrown when the collision-rate integral along a ray can never reach the
/// requested exponential budget (the rate decays to zero before enough
/// collisionality is accumulated).
class NoCollisionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class BackgroundFamily {
    B1,  ///< symmetric V-shaped rate, minimum b at x = 1
    B2   ///< constant b for x <= 1, rising linearly for x > 1
};

/// Plasma background: a piecewise-linear collision rate R(x) together with
/// the mean and standard deviation of the Maxwellian post-collisional
/// velocity. The outermost linear segments extend indefinitely; there is no
/// domain boundary. Immutable after construction and safe to share across
/// concurrent samplers.
///
/// Segment i covers the interval between breakpoints i-1 and i (segment 0 is
/// unbounded below, the last segment unbounded above) and evaluates as
/// rate(x) = intercept[i] + slope[i] * x.
class Background {
  public:
    Background(std::vector<double> breakpoints, std::vector<double> slopes,
               std::vector<double> intercepts, double mu_v, double sigma_v)
        : breakpoints_(std::move(breakpoints)),
          slopes_(std::move(slopes)),
          intercepts_(std::move(intercepts)),
          mu_v_(mu_v),
          sigma_v_(sigma_v) {
        if (slopes_.size() != breakpoints_.size() + 1 || slopes_.size() != intercepts_.size()) {
            throw std::invalid_argument("Background: need one segment per breakpoint gap");
        }
        for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
            if (!(breakpoints_[i - 1] < breakpoints_[i])) {
                throw std::invalid_argument("Background: breakpoints must be strictly increasing");
            }
        }
        if (!(sigma_v_ > 0.0)) {
            throw std::invalid_argument("Background: sigma_v must be positive");
        }
        if (breakpoints_.empty()) {
            if (slopes_[0] == 0.0 && !(intercepts_[0] > 0.0)) {
                throw std::invalid_argument("Background: constant rate must be positive");
            }
        } else {
            for (const double bp : breakpoints_) {
                if (!(rate(bp) > 0.0)) {
                    throw std::invalid_argument("Background: rate must be positive at breakpoints");
                }
            }
        }
    }

    /// Spatially constant rate.
    static Background homogeneous(double rate, double mu_v = 0.0, double sigma_v = 1.0) {
        if (!(rate > 0.0)) {
            throw std::invalid_argument("Background: constant rate must be positive");
        }
        return Background({}, {0.0}, {rate}, mu_v, sigma_v);
    }

    double rate(double x) const noexcept {
        const std::size_t i = segment_right_of(x);
        return intercepts_[i] + slopes_[i] * x;
    }

    double mu_v() const noexcept { return mu_v_; }
    double sigma_v() const noexcept { return sigma_v_; }
    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }

    /// Segment whose interior lies to the right of x (a breakpoint belongs to
    /// the segment it opens when marching with increasing position).
    std::size_t segment_right_of(double x) const noexcept {
        return static_cast<std::size_t>(
            std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
            breakpoints_.begin());
    }

    /// Segment whose interior lies to the left of x.
    std::size_t segment_left_of(double x) const noexcept {
        return static_cast<std::size_t>(
            std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x) -
            breakpoints_.begin());
    }

    double segment_slope(std::size_t i) const noexcept { return slopes_[i]; }
    double segment_intercept(std::size_t i) const noexcept { return intercepts_[i]; }
    std::size_t segment_count() const noexcept { return slopes_.size(); }

  private:
    std::vector<double> breakpoints_;
    std::vector<double> slopes_;
    std::vector<double> intercepts_;
    double mu_v_;
    double sigma_v_;
};

/// Builds one of the two benchmark backgrounds.
///
///   B1: R(x) = b (1 + a |x - 1|)             (symmetric)
///   B2: R(x) = b for x <= 1,                  (asymmetric)
///       R(x) = b (1 + a (x - 1)) for x > 1
///
/// Both use position-independent post-collisional velocity moments.
inline Background make_background(BackgroundFamily family, double a, double b,
                                  double mu_v = 0.0, double sigma_v = 1.0) {
    if (!(b > 0.0)) throw std::invalid_argument("make_background: b must be positive");
    if (!(a >= 0.0)) throw std::invalid_argument("make_background: a must be nonnegative");
    if (a == 0.0) {
        return Background::homogeneous(b, mu_v, sigma_v);
    }
    const double ab = a * b;
    if (family == BackgroundFamily::B1) {
        // left of 1: b - a b (x - 1); right of 1: b + a b (x - 1)
        return Background({1.0}, {-ab, ab}, {b + ab, b - ab}, mu_v, sigma_v);
    }
    return Background({1.0}, {0.0, ab}, {b, b - ab}, mu_v, sigma_v);
}

namespace detail {

struct SegmentWalk {
    double rate_here;    // R at the current position
    double rate_slope;   // dR/dt along the ray = spatial slope * v
    double dt_to_break;  // time to the next breakpoint (infinity in the last segment)
    std::size_t segment;
};

inline SegmentWalk segment_walk(const Background& bg, double x, double v) noexcept {
    SegmentWalk w;
    const auto& bp = bg.breakpoints();
    if (v > 0.0) {
        w.segment = bg.segment_right_of(x);
        w.dt_to_break = (w.segment < bp.size())
                            ? (bp[w.segment] - x) / v
                            : std::numeric_limits<double>::infinity();
    } else if (v < 0.0) {
        w.segment = bg.segment_left_of(x);
        w.dt_to_break = (w.segment > 0)
                            ? (bp[w.segment - 1] - x) / v
                            : std::numeric_limits<double>::infinity();
    } else {
        w.segment = bg.segment_right_of(x);
        w.dt_to_break = std::numeric_limits<double>::infinity();
    }
    w.rate_here = bg.segment_intercept(w.segment) + bg.segment_slope(w.segment) * x;
    w.rate_slope = bg.segment_slope(w.segment) * v;
    return w;
}

// Exact breakpoint position the walk lands on when it leaves its segment.
inline double next_breakpoint(const Background& bg, const SegmentWalk& w, double v) noexcept {
    return (v > 0.0) ? bg.breakpoints()[w.segment] : bg.breakpoints()[w.segment - 1];
}

}  // namespace detail

/// Integral of the collision rate along the straight-line trajectory
/// x0 + v t for t in [0, s]. Exact closed form per linear segment, marching
/// breakpoint to breakpoint. The duration s may be negative, in which case
/// the integral is signed (negative for positive rates).
inline double rate_integral(const Background& bg, double x0, double v, double s) {
    if (s == 0.0) return 0.0;
    if (s < 0.0) {
        // Substituting t -> -t turns the signed integral into a forward march
        // with the reversed velocity.
        return -rate_integral(bg, x0, -v, -s);
    }
    double total = 0.0;
    double left = s;
    double x = x0;
    for (;;) {
        const auto w = detail::segment_walk(bg, x, v);
        if (w.dt_to_break < left) {
            const double h = w.dt_to_break;
            total += (w.rate_here + 0.5 * w.rate_slope * h) * h;
            left -= h;
            x = detail::next_breakpoint(bg, w, v);
        } else {
            total += (w.rate_here + 0.5 * w.rate_slope * left) * left;
            return total;
        }
    }
}

/// Time tau > 0 at which the accumulated collision rate along the ray
/// x0 + v t reaches the exponential budget eps, i.e. the solution of
/// rate_integral(bg, x0, v, tau) = eps.
///
/// Within a segment the accumulated rate is quadratic in time; the smallest
/// positive root is extracted with the product form
/// 2 eps / (R + sqrt(R^2 + 2 g eps)), which is numerically stable and
/// degrades gracefully to the constant-rate answer eps / R as the slope
/// term g vanishes.
inline double collision_time(const Background& bg, double x0, double v, double eps) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("collision_time: eps must be positive");
    }
    double remaining = eps;
    double t = 0.0;
    double x = x0;
    for (;;) {
        const auto w = detail::segment_walk(bg, x, v);
        const double R = w.rate_here;
        const double g = w.rate_slope;
        if (std::isfinite(w.dt_to_break)) {
            const double h = w.dt_to_break;
            const double seg_integral = (R + 0.5 * g * h) * h;
            if (seg_integral < remaining) {
                remaining -= seg_integral;
                t += h;
                x = detail::next_breakpoint(bg, w, v);
                continue;
            }
        }
        // The budget is exhausted in this segment (or the segment is last).
        if (R <= 0.0) {
            throw NoCollisionError("collision_time: nonpositive rate along ray");
        }
        if (g < 0.0 && !std::isfinite(w.dt_to_break)) {
            // Rate decays along the ray; the integral saturates at R^2 / (-2g).
            if (remaining > R * R / (-2.0 * g)) {
                throw NoCollisionError("collision_time: rate decays before budget is reached");
            }
        }
        const double disc = std::max(0.0, R * R + 2.0 * g * remaining);
        return t + 2.0 * remaining / (R + std::sqrt(disc));
    }
}

}  // namespace kdmc
