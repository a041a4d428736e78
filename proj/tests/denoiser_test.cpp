// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "test_support.hpp"
#include "wavelift/denoiser.hpp"
#include "wavelift/image_ops.hpp"

using namespace wavelift;
using wavelift::testing::random_image;
using wavelift::testing::random_latent;

namespace {

Latent scalar(double v) { return Latent(1, 1, 1, static_cast<float>(v)); }

/// E[x | z] for x ~ N(mu, v), z = x + sigma * eps, by trapezoidal
/// integration of the unnormalised posterior on a fine grid.
double posterior_mean_by_quadrature(double z, double sigma, double mu, double v) {
    const double sd = std::sqrt(v);
    const double lo = mu - 12.0 * sd, hi = mu + 12.0 * sd;
    const int n = 200000;
    const double dx = (hi - lo) / n;
    double num = 0.0, den = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + dx * i;
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        const double p = w * std::exp(-0.5 * (x - mu) * (x - mu) / v - 0.5 * (z - x) * (z - x) / (sigma * sigma));
        num += x * p;
        den += p;
    }
    return num / den;
}

}  // namespace

TEST(AnalyticGaussianDenoise, ZeroSigmaReturnsInput) {
    const Latent z = random_latent(3, 4, 2, 1);
    const Latent mu = random_latent(3, 4, 2, 2);
    const Latent var(3, 4, 2, 0.5f);
    EXPECT_EQ(analytic_gaussian_denoise(z, 0.0, mu, var), z);
}

TEST(AnalyticGaussianDenoise, HugeSigmaReturnsPriorMean) {
    const Latent z = random_latent(3, 4, 2, 3, -5.0f, 5.0f);
    const Latent mu = random_latent(3, 4, 2, 4);
    const Latent var(3, 4, 2, 1.0f);
    EXPECT_LT(max_abs_diff(analytic_gaussian_denoise(z, 1e6, mu, var), mu), 1e-3);
}

TEST(AnalyticGaussianDenoise, ScalarBayesRule) {
    EXPECT_FLOAT_EQ(analytic_gaussian_denoise(scalar(2.0), 1.0, scalar(0.0), scalar(1.0)).values()[0], 1.0f);
    EXPECT_NEAR(posterior_mean_by_quadrature(2.0, 1.0, 0.0, 1.0), 1.0, 1e-6);
}

TEST(AnalyticGaussianDenoise, MatchesQuadratureProperty) {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const double mu = -1.0 + 2.0 * unit(rng);
        const double v = 0.05 + 2.0 * unit(rng);
        const double sigma = 0.05 + 3.0 * unit(rng);
        const double z = mu + (unit(rng) - 0.5) * 6.0;
        const double closed = analytic_gaussian_denoise(scalar(z), sigma, scalar(mu), scalar(v)).values()[0];
        // The closed form is evaluated from float inputs; compare against the same float-rounded inputs.
        const double expected = posterior_mean_by_quadrature(static_cast<float>(z), sigma, static_cast<float>(mu),
                                                             static_cast<float>(v));
        EXPECT_NEAR(closed, expected, 1e-6) << "trial " << trial;
    }
}

TEST(AnalyticGaussianDenoise, RejectsBadArguments) {
    const Latent z(2, 2, 1), var(2, 2, 1, 1.0f);
    EXPECT_THROW(analytic_gaussian_denoise(z, 1.0, Latent(2, 3, 1), var), std::invalid_argument);
    EXPECT_THROW(analytic_gaussian_denoise(z, 1.0, z, Latent(2, 2, 1, 0.0f)), std::invalid_argument);
    EXPECT_THROW(analytic_gaussian_denoise(z, -1.0, z, var), std::invalid_argument);
}

TEST(AnalyticGaussianDenoiser, PreservesShape) {
    AnalyticGaussianDenoiser d(random_latent(5, 6, 3, 1), Latent(5, 6, 3, 0.3f));
    const Latent z = random_latent(5, 6, 3, 2);
    EXPECT_EQ(d.denoise(z, 0.4, {}).shape(), z.shape());
    EXPECT_THROW(d.denoise(random_latent(5, 5, 3, 2), 0.4, {}), std::invalid_argument);
}

TEST(IdentityCodec, AffineRoundTrip) {
    IdentityCodec codec;
    // Exact for values whose remap 2v - 1 fits in float; within half an ulp of 1 otherwise.
    Image dyadic(16, 16, 1);
    for (std::size_t i = 0; i < dyadic.size(); ++i) dyadic.values()[i] = static_cast<float>(i) / 256.0f;
    EXPECT_EQ(codec.decode(codec.encode(dyadic)), dyadic);
    const Image x = random_image(7, 9, 3, 5);
    EXPECT_LE(max_abs_diff(codec.decode(codec.encode(x)), x), 6e-8);
    EXPECT_EQ(codec.encode(Image(1, 1, 1, 0.5f)).values()[0], 0.0f);
    const Latent black = codec.encode(Image(2, 2, 3, 0.0f));
    for (const float v : black.values()) EXPECT_EQ(v, -1.0f);
}

TEST(IdentityCodec, DecodeDoesNotClamp) {
    const Image out = identity_decode(Latent(1, 2, 1, std::vector<float>{-1.5f, 1.5f}));
    EXPECT_FLOAT_EQ(out.values()[0], -0.25f);
    EXPECT_FLOAT_EQ(out.values()[1], 1.25f);
}

TEST(GuideImageDenoiser, ZeroMeanWithoutGuide) {
    GuideImageDenoiser d(std::nullopt, 1.0);
    const Latent z(2, 2, 1, 2.0f);
    const Latent out = d.denoise(z, 1.0, {});
    for (const float v : out.values()) EXPECT_FLOAT_EQ(v, 1.0f);
}

TEST(GuideImageDenoiser, PriorMeanIsResampledGuide) {
    const Image guide = random_image(8, 8, 3, 9);
    GuideImageDenoiser d(guide, 1.0);
    const Latent z(16, 16, 3, 0.0f);
    // Huge sigma: the output is the prior mean itself.
    const Latent out = d.denoise(z, 1e7, {});
    const Latent expected = identity_encode(interpolate(guide, 16, 16, Interpolation::bilinear));
    EXPECT_LT(max_abs_diff(out, expected), 1e-5);
}

TEST(GuideImageDenoiser, AdaptsChannelCount) {
    GuideImageDenoiser d(random_image(4, 4, 3, 1), 0.5);
    EXPECT_EQ(d.denoise(Latent(4, 4, 1), 0.5, {}).shape(), (Shape{4, 4, 1}));
    EXPECT_THROW(GuideImageDenoiser(std::nullopt, 0.0), std::invalid_argument);
}
