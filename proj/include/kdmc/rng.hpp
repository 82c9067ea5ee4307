// Copyright 2026 the kdmc authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace kdmc {

namespace detail {

/// SplitMix64 finalizer. Bijective on 64-bit integers, passes BigCrush when
/// driven by a Weyl sequence, which is exactly how DrawStream uses it.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ull;

inline constexpr std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) noexcept {
    return mix64(h + kWeyl * (v + 1));
}

}  // namespace detail

/// Inverse CDF of the standard normal distribution (Wichura's algorithm
/// AS 241, PPND16 variant). Absolute error is near machine precision over
/// the full open interval (0, 1).
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("normal_quantile: p must be in (0, 1)");
    }
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            q * (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                       6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                     1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                   1.3314166789178437745e2) * r + 3.3871328727963666080e0);
        const double den =
            (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                  3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
              4.2313330701600911252e1) * r + 1.0);
        return num / den;
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
        val = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        val = num / den;
    }
    return (q < 0.0) ? -val : val;
}

/// CDF of the standard normal distribution, accurate in both tails.
inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

/// CDF of the unit-rate exponential distribution.
inline double exponential_cdf(double x) {
    return (x <= 0.0) ? 0.0 : -std::expm1(-x);
}

/// Stream purposes. Streams with different purposes never collide, so one
/// root seed can drive every part of a run reproducibly.
enum class StreamPurpose : std::uint64_t {
    path = 1,            ///< single-level path simulation
    pair = 2,            ///< correlated fine/coarse pair simulation
    pair_fallback = 3,   ///< replacement exponential draws on coupling exhaustion
    pilot_path = 4,
    pilot_pair = 5,
    pilot_fallback = 6,
    replicate = 7,       ///< goodness-of-fit null replicates
    generic = 8,
    harness = 9,         ///< consistency-harness pair simulations
    harness_fallback = 10,
};

/// Counter-based random draw stream. A stream is identified by a key built
/// from (root seed, purpose, pair id, sample index); the counter then walks
/// the draws of one particle path. Identical keys replay identical draw
/// sequences, and distinct keys give statistically independent streams, so
/// results never depend on how samples are scheduled across workers.
class DrawStream {
  public:
    explicit DrawStream(std::uint64_t key) noexcept : key_(key) {}

    DrawStream(std::uint64_t root_seed, StreamPurpose purpose,
               std::uint64_t stream_id, std::uint64_t sample_index) noexcept {
        std::uint64_t h = detail::hash_combine(root_seed, static_cast<std::uint64_t>(purpose));
        h = detail::hash_combine(h, stream_id);
        key_ = detail::hash_combine(h, sample_index);
    }

    std::uint64_t next_u64() noexcept {
        return detail::mix64(key_ + (++counter_) * detail::kWeyl);
    }

    /// Uniform draw on the open interval (0, 1).
    double uniform() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform draw on the half-open interval (0, 1].
    double uniform_pos() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal draw via the inverse CDF.
    double normal() { return normal_quantile(uniform()); }

    /// Unit-rate exponential draw; strictly positive.
    double exponential() { return -std::log(uniform_pos()); }

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

  private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace kdmc
