// Copyright 2026 the kdmc authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>

#include "kdmc/accumulators.hpp"
#include "kdmc/background.hpp"
#include "kdmc/correlate.hpp"
#include "kdmc/kd.hpp"
#include "kdmc/parallel.hpp"
#include "kdmc/rng.hpp"

namespace kdmc {

/// Dyadic time step of level l: dt_l = T / 2^l (exact in floating point).
inline double level_dt(double T, int level) {
    return std::ldexp(T, -level);
}

/// Stream id shared by a (fine, coarse) level pair.
inline std::uint64_t pair_stream_id(int fine_level, int coarse_level) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(fine_level)) << 32) |
           static_cast<std::uint32_t>(coarse_level);
}

/// Accumulated results of a batch of samples. `value` collects the sampled
/// quantity (a path position, or a fine/coarse difference); `pair` the joint
/// (fine, coarse) positions when the batch is correlated. Costs are tracked
/// twice: a deterministic KD-step-count proxy, and measured wall seconds.
struct SampleBatchStats {
    MomentAccumulator value;
    CovarianceAccumulator pair;
    double steps_sum = 0.0;
    double seconds_sum = 0.0;
    std::int64_t exhaustion_count = 0;

    void merge(const SampleBatchStats& other) {
        value.merge(other.value);
        pair.merge(other.pair);
        steps_sum += other.steps_sum;
        seconds_sum += other.seconds_sum;
        exhaustion_count += other.exhaustion_count;
    }

    double mean_steps() const {
        const auto n = value.count();
        return (n > 0) ? steps_sum / static_cast<double>(n) : 0.0;
    }
    double mean_seconds() const {
        const auto n = value.count();
        return (n > 0) ? seconds_sum / static_cast<double>(n) : 0.0;
    }
};

/// Samples Q_level for sample indices [n_begin, n_end). Every sample owns the
/// stream keyed by (root_seed, purpose, level, index), so the batch is
/// reproducible and independent of scheduling.
inline SampleBatchStats sample_level_batch(const Background& bg, double T, int level,
                                           std::int64_t n_begin, std::int64_t n_end,
                                           std::uint64_t root_seed, StreamPurpose purpose,
                                           int workers) {
    const double dt = level_dt(T, level);
    auto chunks = chunked_parallel<SampleBatchStats>(
        n_begin, n_end, workers,
        [&](std::int64_t first, std::int64_t last, SampleBatchStats& out) {
            const auto t0 = std::chrono::steady_clock::now();
            for (std::int64_t n = first; n < last; ++n) {
                DrawStream stream(root_seed, purpose, static_cast<std::uint64_t>(level),
                                  static_cast<std::uint64_t>(n));
                const PathResult r = simulate_path(bg, T, dt, stream);
                out.value.add(r.x);
                out.steps_sum += static_cast<double>(r.steps);
            }
            out.seconds_sum = std::chrono::duration<double>(
                std::chrono::steady_clock::now() - t0).count();
        });
    SampleBatchStats total;
    for (const auto& c : chunks) total.merge(c);
    return total;
}

/// Samples the correlated difference Q_fine - Q_coarse for indices
/// [n_begin, n_end). The joint (fine, coarse) positions land in `pair`.
inline SampleBatchStats sample_pair_batch(const Background& bg, double T, int fine_level,
                                          int coarse_level, std::int64_t n_begin,
                                          std::int64_t n_end, std::uint64_t root_seed,
                                          StreamPurpose purpose, StreamPurpose fallback_purpose,
                                          int workers) {
    const double dt_fine = level_dt(T, fine_level);
    const double dt_coarse = level_dt(T, coarse_level);
    const std::uint64_t id = pair_stream_id(fine_level, coarse_level);
    auto chunks = chunked_parallel<SampleBatchStats>(
        n_begin, n_end, workers,
        [&](std::int64_t first, std::int64_t last, SampleBatchStats& out) {
            const auto t0 = std::chrono::steady_clock::now();
            for (std::int64_t n = first; n < last; ++n) {
                DrawStream stream(root_seed, purpose, id, static_cast<std::uint64_t>(n));
                DrawStream fb(root_seed, fallback_purpose, id, static_cast<std::uint64_t>(n));
                const CorrelatedResult r =
                    correlated_path(bg, T, dt_fine, dt_coarse, stream, fb);
                out.value.add(r.x_fine - r.x_coarse);
                out.pair.add(r.x_fine, r.x_coarse);
                out.steps_sum += static_cast<double>(r.fine_steps + r.coarse_steps);
                out.exhaustion_count += r.exhaustion_count;
            }
            out.seconds_sum = std::chrono::duration<double>(
                std::chrono::steady_clock::now() - t0).count();
        });
    SampleBatchStats total;
    for (const auto& c : chunks) total.merge(c);
    return total;
}

}  // namespace kdmc
