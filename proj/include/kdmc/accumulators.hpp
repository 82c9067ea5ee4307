// Copyright 2026 the kdmc authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

namespace kdmc {

/// One-pass mean/variance accumulator (Welford update, Chan merge).
/// Merging two accumulators is equivalent, up to round-off, to accumulating
/// the concatenated inputs, which makes per-chunk reductions across worker
/// threads exact enough for reproducible estimator decisions.
class MomentAccumulator {
  public:
    void add(double x) noexcept {
        ++n_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(n_);
        m2_ += delta * (x - mean_);
    }

    void merge(const MomentAccumulator& other) noexcept {
        if (other.n_ == 0) return;
        if (n_ == 0) { *this = other; return; }
        const double na = static_cast<double>(n_);
        const double nb = static_cast<double>(other.n_);
        const double delta = other.mean_ - mean_;
        const double n = na + nb;
        mean_ += delta * nb / n;
        m2_ += other.m2_ + delta * delta * na * nb / n;
        n_ += other.n_;
    }

    std::int64_t count() const noexcept { return n_; }
    double mean() const noexcept { return mean_; }

    /// Unbiased sample variance; zero until two values have been seen.
    double variance() const noexcept {
        return (n_ < 2) ? 0.0 : m2_ / static_cast<double>(n_ - 1);
    }

    double std_error() const noexcept {
        return (n_ < 2) ? 0.0 : std::sqrt(variance() / static_cast<double>(n_));
    }

  private:
    std::int64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Bivariate extension carrying the cross-sum needed for sample covariance
/// and correlation between the two coordinates.
class CovarianceAccumulator {
  public:
    void add(double x, double y) noexcept {
        ++n_;
        const double n = static_cast<double>(n_);
        const double dx = x - mean_x_;
        const double dy = y - mean_y_;
        mean_x_ += dx / n;
        mean_y_ += dy / n;
        m2x_ += dx * (x - mean_x_);
        m2y_ += dy * (y - mean_y_);
        cxy_ += dx * (y - mean_y_);
    }

    void merge(const CovarianceAccumulator& other) noexcept {
        if (other.n_ == 0) return;
        if (n_ == 0) { *this = other; return; }
        const double na = static_cast<double>(n_);
        const double nb = static_cast<double>(other.n_);
        const double n = na + nb;
        const double dx = other.mean_x_ - mean_x_;
        const double dy = other.mean_y_ - mean_y_;
        mean_x_ += dx * nb / n;
        mean_y_ += dy * nb / n;
        m2x_ += other.m2x_ + dx * dx * na * nb / n;
        m2y_ += other.m2y_ + dy * dy * na * nb / n;
        cxy_ += other.cxy_ + dx * dy * na * nb / n;
        n_ += other.n_;
    }

    std::int64_t count() const noexcept { return n_; }
    double mean_x() const noexcept { return mean_x_; }
    double mean_y() const noexcept { return mean_y_; }
    double variance_x() const noexcept {
        return (n_ < 2) ? 0.0 : m2x_ / static_cast<double>(n_ - 1);
    }
    double variance_y() const noexcept {
        return (n_ < 2) ? 0.0 : m2y_ / static_cast<double>(n_ - 1);
    }
    double covariance() const noexcept {
        return (n_ < 2) ? 0.0 : cxy_ / static_cast<double>(n_ - 1);
    }

    /// Sample correlation coefficient; zero when either marginal is degenerate.
    double correlation() const noexcept {
        const double vx = variance_x();
        const double vy = variance_y();
        if (vx <= 0.0 || vy <= 0.0) return 0.0;
        return covariance() / std::sqrt(vx * vy);
    }

  private:
    std::int64_t n_ = 0;
    double mean_x_ = 0.0;
    double mean_y_ = 0.0;
    double m2x_ = 0.0;
    double m2y_ = 0.0;
    double cxy_ = 0.0;
};

}  // namespace kdmc
