// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "test_support.hpp"
#include "wavelift/scheduler.hpp"

using namespace wavelift;
using wavelift::testing::random_latent;

TEST(MakeSchedule, DefaultEndpointsAndInteriorValues) {
    // Interior values frozen from an independent evaluation of the closed form.
    const SigmaSchedule s = make_schedule(50, 0.002, 80.0, 7.0);
    ASSERT_EQ(s.sigmas().size(), 51u);
    EXPECT_DOUBLE_EQ(s[0], 80.0);
    EXPECT_NEAR(s[1], 71.50103800465962, 1e-10);
    EXPECT_NEAR(s[35], 0.2674753613794615, 1e-13);
    EXPECT_DOUBLE_EQ(s[49], 0.002);
    EXPECT_EQ(s[50], 0.0);
    EXPECT_EQ(s.num_steps(), 50u);
}

TEST(MakeSchedule, SingleStep) {
    const SigmaSchedule s = make_schedule(1, 0.5, 3.0, 7.0);
    EXPECT_EQ(s.sigmas(), (std::vector<double>{3.0, 0.0}));
}

TEST(MakeSchedule, StrictlyDecreasingAndFiniteProperty) {
    for (int n : {1, 2, 3, 10, 50, 200}) {
        for (double rho = 1.0; rho <= 20.0; rho += 0.5) {
            const SigmaSchedule s = make_schedule(static_cast<std::size_t>(n), 0.002, 80.0, rho);
            for (std::size_t i = 0; i + 1 < s.sigmas().size(); ++i) {
                ASSERT_TRUE(std::isfinite(s[i]));
                ASSERT_GT(s[i], s[i + 1]) << "n=" << n << " rho=" << rho << " i=" << i;
            }
        }
    }
}

TEST(MakeSchedule, RejectsInvalidParameters) {
    EXPECT_THROW(make_schedule(0), std::invalid_argument);
    EXPECT_THROW(make_schedule(10, 0.0, 80.0), std::invalid_argument);
    EXPECT_THROW(make_schedule(10, 5.0, 1.0), std::invalid_argument);
    EXPECT_THROW(make_schedule(10, 0.002, 80.0, 0.0), std::invalid_argument);
}

TEST(MakeSchedule, StartIndex) {
    const SigmaSchedule s = make_schedule(50);
    EXPECT_EQ(s.start_index(15), 35u);
    EXPECT_EQ(s.start_index(0), 50u);
    EXPECT_EQ(s.start_sigma(50), 80.0);
    EXPECT_EQ(s.start_sigma(0), 0.0);
    EXPECT_THROW(s.start_index(51), std::invalid_argument);
}

TEST(AddNoise, ZeroSigmaIsIdentity) {
    const Latent z = random_latent(4, 4, 2, 1);
    NoiseSource noise(3);
    EXPECT_EQ(add_noise(z, 0.0, noise), z);
}

TEST(AddNoise, SameSeedSameNoise) {
    const Latent z = random_latent(8, 8, 3, 2);
    NoiseSource a(42), b(42), c(43);
    const Latent za = add_noise(z, 1.5, a);
    EXPECT_EQ(za, add_noise(z, 1.5, b));
    EXPECT_NE(za, add_noise(z, 1.5, c));
}

TEST(AddNoise, MonteCarloVariance) {
    const Latent z(100, 1000, 1, 0.25f);
    NoiseSource noise(7);
    const Latent out = add_noise(z, 3.0, noise);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double d = static_cast<double>(out.values()[i]) - 0.25;
        sum += d;
        sum_sq += d * d;
    }
    const double n = static_cast<double>(out.size());
    const double var = sum_sq / n - (sum / n) * (sum / n);
    EXPECT_NEAR(var, 9.0, 0.05 * 9.0);
    EXPECT_NEAR(sum / n, 0.0, 4.0 * 3.0 / std::sqrt(n));
}

TEST(ScoreFromDenoised, Definition) {
    const Latent z(1, 1, 1, 2.0f);
    const Latent d(1, 1, 1, 0.0f);
    EXPECT_FLOAT_EQ(score_from_denoised(z, d, 1.0).values()[0], -2.0f);
    const Latent score = score_from_denoised(z, z, 0.7);
    for (const float v : score.values()) EXPECT_EQ(v, 0.0f);
    EXPECT_THROW(score_from_denoised(z, d, 0.0), std::invalid_argument);
}

TEST(ScoreFromDenoised, MatchesElementwiseOracle) {
    const Latent z = random_latent(5, 6, 3, 11, -3.0f, 3.0f);
    const Latent d = random_latent(5, 6, 3, 12, -3.0f, 3.0f);
    const double sigma = 0.37;
    const Latent s = score_from_denoised(z, d, sigma);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double expected = (static_cast<double>(d.values()[i]) - z.values()[i]) / (sigma * sigma);
        EXPECT_NEAR(s.values()[i], expected, 1e-5 * std::max(1.0, std::abs(expected)));
    }
}

TEST(DenoiseStep, ScalarCase) {
    const Latent z(1, 1, 1, 4.0f), d(1, 1, 1, 1.0f);
    EXPECT_FLOAT_EQ(denoise_step(z, d, 2.0, 1.0).values()[0], 2.5f);
}

TEST(DenoiseStep, FinalStepReturnsDenoised) {
    const Latent z = random_latent(3, 3, 1, 1), d = random_latent(3, 3, 1, 2);
    EXPECT_EQ(denoise_step(z, d, 0.5, 0.0), d);
}

TEST(DenoiseStep, NearlyEqualSigmasKeepInput) {
    const Latent z = random_latent(3, 3, 1, 3), d = random_latent(3, 3, 1, 4);
    EXPECT_LT(max_abs_diff(denoise_step(z, d, 1.0, 1.0 - 1e-9), z), 1e-6);
}

TEST(DenoiseStep, RejectsBadOrdering) {
    const Latent z(1, 1, 1);
    EXPECT_THROW(denoise_step(z, z, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(denoise_step(z, z, 1.0, 2.0), std::invalid_argument);
    EXPECT_THROW(denoise_step(z, z, 1.0, -0.1), std::invalid_argument);
}

TEST(DenoiseStep, ConvexCombinationProperty) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Latent z = random_latent(2, 3, 2, 2 * seed, -5.0f, 5.0f);
        const Latent d = random_latent(2, 3, 2, 2 * seed + 1, -5.0f, 5.0f);
        const double sigma = 0.1 + static_cast<double>(seed);
        const double next = sigma * static_cast<double>(seed % 10) / 10.0;
        const Latent out = denoise_step(z, d, sigma, next);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const float lo = std::min(z.values()[i], d.values()[i]);
            const float hi = std::max(z.values()[i], d.values()[i]);
            EXPECT_GE(out.values()[i], lo - 1e-5f);
            EXPECT_LE(out.values()[i], hi + 1e-5f);
        }
    }
}
