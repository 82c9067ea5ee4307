// Copyright 2026 the kdmc authors
// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "kdmc/accumulators.hpp"
#include "kdmc/anderson_darling.hpp"
#include "kdmc/correlate.hpp"
#include "kdmc/kd.hpp"
#include "kdmc/rng.hpp"
#include "kdmc/sampling.hpp"

using kdmc::AggregationWindow;
using kdmc::Background;
using kdmc::BackgroundFamily;
using kdmc::correlated_path;
using kdmc::correlated_path_observed;
using kdmc::DrawStream;
using kdmc::EventDraws;
using kdmc::KdStepRecord;
using kdmc::make_background;
using kdmc::ParticleState;
using kdmc::StreamPurpose;

namespace {

KdStepRecord make_record(double theta, double tau, double rate, double nu_next,
                         double eps_next, double chi) {
    return KdStepRecord{theta, tau, 0.0, 0.0, rate, EventDraws{nu_next, eps_next, chi}};
}

// Weight vector of the chi aggregation, computed independently of the library
// (index-explicit transcription of the aggregation rule).
struct ChiWeights {
    std::vector<double> beta;   // one per window phase
    std::vector<double> alpha;  // one per interior phase (index i >= 1)
    double norm;
};

ChiWeights reference_weights(const std::vector<KdStepRecord>& recs, double sigma_v) {
    ChiWeights w;
    double den2 = 0.0;
    std::vector<double> zeta(recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        zeta[i] = (1.0 - std::exp(-recs[i].rate * recs[i].theta)) / recs[i].rate;
    }
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const double theta_mod = recs[i].theta - zeta[i];
        const double u = recs[i].rate * theta_mod;
        const double beta = std::sqrt(std::max(
            0.0, 2.0 * sigma_v * sigma_v / (recs[i].rate * recs[i].rate) *
                     (std::exp(-u) + u - 1.0)));
        w.beta.push_back(beta);
        den2 += beta * beta;
        if (i >= 1) {
            const double alpha = (recs[i].tau + zeta[i - 1]) * sigma_v;
            w.alpha.push_back(alpha);
            den2 += alpha * alpha;
        }
    }
    w.norm = std::sqrt(den2);
    return w;
}

}  // namespace

TEST_CASE("aggregate_nu passes the pending fine velocity draw through") {
    std::vector<KdStepRecord> recs = {make_record(0.3, 0.2, 1.0, 0.11, 1.0, -0.5),
                                      make_record(0.1, 0.4, 2.0, 0.37, 2.0, 0.8)};
    const AggregationWindow window{0, recs};
    CHECK(kdmc::aggregate_nu(window) == 0.37);
    CHECK_THROWS_AS(kdmc::aggregate_nu(AggregationWindow{}), std::invalid_argument);
}

TEST_CASE("aggregate_eps subtracts the elapsed rate budget") {
    const auto bg = Background::homogeneous(2.0);
    const ParticleState anchor{1.0, 1.0, 0.5, 0.123};

    SECTION("zero elapsed time is the identity") {
        const auto eps = kdmc::aggregate_eps(1.0, bg, anchor, 0.5);
        REQUIRE(eps.has_value());
        CHECK(*eps == 1.0);
    }
    SECTION("positive elapsed time") {
        const auto eps = kdmc::aggregate_eps(1.0, bg, anchor, 0.75);
        REQUIRE(eps.has_value());
        CHECK(*eps == Catch::Approx(0.5).epsilon(1e-14));
    }
    SECTION("negative elapsed time adds budget back") {
        const auto eps = kdmc::aggregate_eps(1.0, bg, anchor, 0.25);
        REQUIRE(eps.has_value());
        CHECK(*eps == Catch::Approx(1.5).epsilon(1e-14));
    }
    SECTION("exhausted budget is signalled, not fabricated") {
        CHECK_FALSE(kdmc::aggregate_eps(1.0, bg, anchor, 1.1).has_value());
    }
}

TEST_CASE("aggregate_chi: single-phase window is the identity") {
    std::vector<KdStepRecord> recs = {make_record(0.3, 0.2, 5.0, 0.1, 1.0, -0.73)};
    const auto bg = Background::homogeneous(5.0);
    CHECK(kdmc::aggregate_chi(AggregationWindow{0, recs}, bg) == -0.73);

    // Degenerate window: zero diffusive duration gives zero weight.
    std::vector<KdStepRecord> degen = {make_record(0.0, 0.2, 5.0, 0.1, 1.0, 0.42)};
    CHECK(kdmc::aggregate_chi(AggregationWindow{0, degen}, bg) == 0.42);
}

TEST_CASE("aggregate_chi matches an index-explicit reference and is normalized") {
    const auto bg = Background::homogeneous(3.0, 0.0, 1.7);
    DrawStream stream(404);
    for (int trial = 0; trial < 50; ++trial) {
        const auto size = static_cast<std::size_t>(2 + (stream.next_u64() % 4));
        std::vector<KdStepRecord> recs;
        for (std::size_t i = 0; i < size; ++i) {
            recs.push_back(make_record(0.5 * stream.uniform(), 0.4 * stream.uniform() + 1e-3,
                                       0.5 + 4.0 * stream.uniform(), stream.normal(),
                                       stream.exponential(), stream.normal()));
        }
        const auto w = reference_weights(recs, bg.sigma_v());
        double num = w.beta[0] * recs[0].draws.chi;
        for (std::size_t i = 1; i < size; ++i) {
            num += w.alpha[i - 1] * recs[i - 1].draws.nu + w.beta[i] * recs[i].draws.chi;
        }
        const double expected = num / w.norm;
        const double got = kdmc::aggregate_chi(AggregationWindow{0, recs}, bg);
        CHECK(got == Catch::Approx(expected).epsilon(1e-9).margin(1e-9));

        // Normalization: feeding each unit draw through the aggregation must
        // produce components whose squares sum to one.
        double sum_sq = 0.0;
        for (std::size_t basis = 0; basis < 2 * size; ++basis) {
            auto unit = recs;
            for (std::size_t i = 0; i < size; ++i) {
                unit[i].draws.chi = (basis == 2 * i) ? 1.0 : 0.0;
                unit[i].draws.nu = (basis == 2 * i + 1) ? 1.0 : 0.0;
            }
            const double comp = kdmc::aggregate_chi(AggregationWindow{0, unit}, bg);
            sum_sq += comp * comp;
        }
        // The last record's nu is not part of the window's diffusive draw, so
        // the basis sweep covers it with a zero component.
        CHECK(sum_sq == Catch::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("degenerate coupling with equal time steps is exact") {
    const auto bg = make_background(BackgroundFamily::B1, 10.0, 50.0);
    for (std::uint64_t n = 0; n < 50; ++n) {
        DrawStream stream(1234, StreamPurpose::pair, 1, n);
        DrawStream fallback(1234, StreamPurpose::pair_fallback, 1, n);
        const auto r = correlated_path(bg, 1.0, 0.125, 0.125, stream, fallback);
        REQUIRE(r.x_fine == r.x_coarse);
        REQUIRE(r.exhaustion_count == 0);
    }
}

TEST_CASE("the coupled fine path replays the standalone fine path bitwise") {
    const auto bg = make_background(BackgroundFamily::B2, 5.0, 20.0);
    for (std::uint64_t n = 0; n < 50; ++n) {
        DrawStream paired(7, StreamPurpose::pair, 9, n);
        DrawStream fallback(7, StreamPurpose::pair_fallback, 9, n);
        const auto coupled = correlated_path(bg, 1.0, 1.0 / 64.0, 1.0 / 8.0, paired, fallback);
        DrawStream alone(7, StreamPurpose::pair, 9, n);
        const auto standalone = kdmc::simulate_path(bg, 1.0, 1.0 / 64.0, alone);
        REQUIRE(coupled.x_fine == standalone.x);
    }
}

TEST_CASE("window bookkeeping: every coarse step consumes at least one fine step") {
    const auto bg = Background::homogeneous(100.0);
    DrawStream stream(55, StreamPurpose::pair, 2, 0);
    DrawStream fallback(55, StreamPurpose::pair_fallback, 2, 0);
    std::int64_t coarse_seen = 0;
    const auto r = correlated_path_observed(bg, 1.0, 1.0 / 256.0, 1.0 / 64.0, stream, fallback,
                                            [&](double, double, double) { ++coarse_seen; });
    CHECK(r.coarse_steps == coarse_seen);
    CHECK(r.fine_steps >= r.coarse_steps);
    CHECK(r.coarse_steps >= 1);
}

TEST_CASE("aggregated draws pass distributional consistency at desk scale") {
    const auto bg = make_background(BackgroundFamily::B1, 10.0, 30.0);
    const int level = 6;
    const int factor = 4;
    const double dt_fine = kdmc::level_dt(1.0, level);
    std::vector<double> nu_t, eps_t, chi_t;
    const std::int64_t want = 600;
    for (std::uint64_t path = 0; static_cast<std::int64_t>(nu_t.size()) < want; ++path) {
        DrawStream stream(3, StreamPurpose::harness, 11, path);
        DrawStream fallback(3, StreamPurpose::harness_fallback, 11, path);
        correlated_path_observed(bg, 1.0, dt_fine, dt_fine * factor, stream, fallback,
                                 [&](double nu, double eps, double chi) {
                                     nu_t.push_back(nu);
                                     eps_t.push_back(eps);
                                     chi_t.push_back(chi);
                                 });
    }
    nu_t.resize(want);
    eps_t.resize(want);
    chi_t.resize(want);

    const auto nu_res = kdmc::ad_test(nu_t, kdmc::NullFamily::normal_std, 2000,
                                      DrawStream(3, StreamPurpose::replicate, 0, 0));
    const auto eps_res = kdmc::ad_test(eps_t, kdmc::NullFamily::exponential_unit, 2000,
                                       DrawStream(3, StreamPurpose::replicate, 1, 0));
    const auto chi_res = kdmc::ad_test(chi_t, kdmc::NullFamily::normal_std, 2000,
                                       DrawStream(3, StreamPurpose::replicate, 2, 0));
    CHECK(nu_res.p > 0.01);
    CHECK(eps_res.p > 0.01);
    CHECK(chi_res.p > 0.01);
}

TEST_CASE("telescoping consistency: aggregated coarse paths are unbiased") {
    const auto bg = make_background(BackgroundFamily::B1, 10.0, 100.0);
    const int fine_level = 6;
    const int coarse_level = 5;
    const std::int64_t n = 20000;

    kdmc::MomentAccumulator direct;
    for (std::int64_t i = 0; i < n; ++i) {
        DrawStream stream(88, StreamPurpose::path, 100, static_cast<std::uint64_t>(i));
        direct.add(kdmc::simulate_path(bg, 1.0, kdmc::level_dt(1.0, coarse_level), stream).x);
    }
    kdmc::MomentAccumulator coupled;
    for (std::int64_t i = 0; i < n; ++i) {
        DrawStream stream(88, StreamPurpose::pair, 101, static_cast<std::uint64_t>(i));
        DrawStream fallback(88, StreamPurpose::pair_fallback, 101, static_cast<std::uint64_t>(i));
        coupled.add(correlated_path(bg, 1.0, kdmc::level_dt(1.0, fine_level),
                                    kdmc::level_dt(1.0, coarse_level), stream, fallback)
                        .x_coarse);
    }
    const double se = std::sqrt(direct.std_error() * direct.std_error() +
                                coupled.std_error() * coupled.std_error());
    CHECK(std::abs(direct.mean() - coupled.mean()) <= 3.0 * se);
}

TEST_CASE("coupling beats independent sampling well below the collision time") {
    const auto bg = Background::homogeneous(1000.0);
    const auto batch = kdmc::sample_pair_batch(bg, 1.0, 12, 11, 0, 10000, 17,
                                               StreamPurpose::pair,
                                               StreamPurpose::pair_fallback, 2);
    const double v_diff = batch.value.variance();
    const double v_independent = batch.pair.variance_x() + batch.pair.variance_y();
    CHECK(v_diff < 0.2 * v_independent);
    CHECK(batch.exhaustion_count == 0);
}
