// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "test_support.hpp"
#include "wavelift/errors.hpp"
#include "wavelift/image_ops.hpp"
#include "wavelift/pipeline.hpp"
#include "wavelift/synthetic.hpp"

using namespace wavelift;
using wavelift::testing::ArbitraryDenoiser;
using wavelift::testing::random_image;

namespace {

PipelineConfig small_config() {
    PipelineConfig c;
    c.ladder = {{32, 32}, {64, 64}};
    return c;
}

double approx_band_diff(const Image& a, const Image& b, const WaveletFamily& f) {
    const auto la = dwt2(a, f).approx.values;
    const auto lb = dwt2(b, f).approx.values;
    double worst = 0.0;
    for (std::size_t i = 0; i < la.size(); ++i) worst = std::max(worst, std::abs(la[i] - lb[i]));
    return worst;
}

class ThrowingDenoiser final : public Denoiser {
public:
    Latent denoise(const Latent&, double, const Conditioning&) override { throw std::runtime_error("model crashed"); }
};

Conditioning cat_prompt() {
    Conditioning c;
    c.prompt = "a cat";
    return c;
}

}  // namespace

TEST(PipelineConfig, DefaultsMatchReferenceSetup) {
    const PipelineConfig c;
    EXPECT_EQ(c.tau, 15u);
    EXPECT_EQ(c.delta, 5u);
    EXPECT_EQ(c.alpha, 1.0);
    EXPECT_EQ(c.num_steps, 50u);
    EXPECT_EQ(c.blur_sigma, 2.0);
    EXPECT_EQ(c.ladder, (std::vector<Size2>{{1024, 1024}, {2048, 2048}, {4096, 4096}}));
    EXPECT_EQ(c.wavelet, WaveletFamily::haar());
    EXPECT_EQ(c.interpolation, Interpolation::bilinear);
    EXPECT_TRUE(c.guidance_enabled);
    EXPECT_TRUE(c.sharpen_enabled);
    EXPECT_NO_THROW(c.validate());
    EXPECT_TRUE(c.warnings().empty());
}

TEST(PipelineConfig, ValidationRejectsInconsistentCounts) {
    auto expect_invalid = [](auto mutate) {
        PipelineConfig c = small_config();
        mutate(c);
        EXPECT_THROW(c.validate(), ConfigError);
    };
    expect_invalid([](PipelineConfig& c) { c.delta = c.tau + 1; });
    expect_invalid([](PipelineConfig& c) { c.tau = c.num_steps + 1; });
    expect_invalid([](PipelineConfig& c) { c.num_steps = 0; c.tau = 0; c.delta = 0; });
    expect_invalid([](PipelineConfig& c) { c.ladder.clear(); });
    expect_invalid([](PipelineConfig& c) { c.ladder = {{64, 64}, {64, 64}}; });
    expect_invalid([](PipelineConfig& c) { c.ladder = {{64, 64}, {128, 32}}; });
    expect_invalid([](PipelineConfig& c) { c.alpha = -1.0; });
    expect_invalid([](PipelineConfig& c) { c.sigma_min = 100.0; });
    PipelineConfig edge = small_config();
    edge.tau = edge.num_steps;
    edge.delta = edge.tau;
    EXPECT_NO_THROW(edge.validate());
    edge.ladder = {{64, 128}, {128, 128}};
    EXPECT_NO_THROW(edge.validate());
}

TEST(PipelineConfig, WarnsAboveTwoXPerStage) {
    PipelineConfig c = small_config();
    c.ladder = {{32, 32}, {64, 64}, {256, 128}};
    const auto notes = c.warnings();
    ASSERT_EQ(notes.size(), 1u);
    EXPECT_NE(notes[0].find("64x64 -> 256x128"), std::string::npos);
}

TEST(RunStage, TauZeroReturnsSharpenedInterpolation) {
    PipelineConfig c = small_config();
    c.tau = 0;
    c.delta = 0;
    ArbitraryDenoiser denoiser;
    IdentityCodec codec;
    const Image x = random_image(16, 16, 3, 8);
    const Image expected = sharpen(interpolate(x, 32, 32, c.interpolation), c.alpha, c.blur_sigma);
    const StageResult r = run_stage(x, {32, 32}, c, denoiser, codec, c.schedule());
    // Only the float rounding of the [-1, 1] remap separates the two.
    EXPECT_LE(max_abs_diff(r.image, expected), 6e-8);
    EXPECT_EQ(denoiser.calls, 0u);
    EXPECT_EQ(r.report.denoiser_calls, 0u);
    EXPECT_EQ(r.report.sigmas, std::vector<double>{0.0});
}

TEST(RunStage, GuidedStepsCarryReferenceLowBand) {
    PipelineConfig c = small_config();
    for (const auto& family : {WaveletFamily::haar(), WaveletFamily::db2()}) {
        c.wavelet = family;
        ArbitraryDenoiser denoiser;
        IdentityCodec codec;
        std::size_t guided = 0, unguided_drift = 0;
        StageOptions options;
        options.observer = [&](const StepEvent& e) {
            const double diff = approx_band_diff(identity_decode(e.denoised), e.reference, family);
            if (e.guided) {
                ++guided;
                EXPECT_LT(diff, 1e-5) << family.name() << " step " << e.step;
            } else if (diff > 1e-3) {
                ++unguided_drift;
            }
        };
        const StageResult r = run_stage(random_image(16, 16, 3, 1), {32, 32}, c, denoiser, codec, c.schedule(), options);
        EXPECT_EQ(guided, 5u);
        EXPECT_EQ(r.report.guidance_steps, 5u);
        EXPECT_GT(unguided_drift, 0u) << "unguided steps are unconstrained";
    }
}

TEST(RunStage, WithoutGuidanceLowBandDrifts) {
    PipelineConfig c = small_config();
    c.delta = 0;
    ArbitraryDenoiser denoiser;
    IdentityCodec codec;
    double worst = 0.0;
    StageOptions options;
    options.observer = [&](const StepEvent& e) {
        EXPECT_FALSE(e.guided);
        worst = std::max(worst, approx_band_diff(identity_decode(e.denoised), e.reference, c.wavelet));
    };
    const StageResult r = run_stage(random_image(16, 16, 3, 2), {32, 32}, c, denoiser, codec, c.schedule(), options);
    EXPECT_GT(worst, 1e-2);
    EXPECT_EQ(r.report.guidance_steps, 0u);
}

TEST(RunStage, GuidanceStepCountIsMinOfDeltaAndTau) {
    IdentityCodec codec;
    for (std::size_t tau : {0u, 1u, 3u, 15u}) {
        for (std::size_t delta : {0u, 1u, 3u, 5u}) {
            if (delta > tau) continue;
            PipelineConfig c = small_config();
            c.tau = tau;
            c.delta = delta;
            ArbitraryDenoiser denoiser;
            const StageResult r = run_stage(random_image(8, 8, 1, 3), {16, 16}, c, denoiser, codec, c.schedule());
            EXPECT_EQ(r.report.guidance_steps, std::min(delta, tau));
            EXPECT_EQ(r.report.denoiser_calls, tau);
            EXPECT_EQ(r.report.encode_calls, 1 + delta);
            EXPECT_EQ(r.report.decode_calls, 1 + delta);
            EXPECT_EQ(r.report.sigmas.size(), tau + 1);
            EXPECT_EQ(r.report.step_ms.size(), tau);
        }
    }
}

TEST(RunStage, AnalyticPriorAtReferenceReturnsReference) {
    const PipelineConfig c = small_config();
    IdentityCodec codec;
    const Image x_low = synthetic_texture(32, 32, 3, 4);
    const Image reference = sharpen(interpolate(x_low, 64, 64, c.interpolation), c.alpha, c.blur_sigma);
    const Latent mu = identity_encode(reference);
    AnalyticGaussianDenoiser denoiser(mu, Latent(mu.shape(), 1e-6f));
    const StageResult r = run_stage(x_low, {64, 64}, c, denoiser, codec, c.schedule());
    EXPECT_LE(max_abs_diff(r.image, reference), 2.0 / 255.0);
}

TEST(RunStage, ReportsSeedAndHyperparameters) {
    PipelineConfig c = small_config();
    c.seed = 40;
    ArbitraryDenoiser denoiser;
    IdentityCodec codec;
    StageOptions options;
    options.stage_index = 2;
    const StageResult r = run_stage(random_image(16, 16, 3, 5), {32, 32}, c, denoiser, codec, c.schedule(), options);
    EXPECT_EQ(r.report.seed, 42u);
    EXPECT_EQ(r.report.stage_index, 2u);
    EXPECT_EQ(r.report.tau, 15u);
    EXPECT_EQ(r.report.delta, 5u);
    EXPECT_EQ(r.report.alpha, 1.0);
    EXPECT_EQ(r.report.num_steps, 50u);
    EXPECT_EQ(r.report.input_size, (Size2{16, 16}));
    EXPECT_EQ(r.report.output_size, (Size2{32, 32}));
    EXPECT_NEAR(r.report.sigmas.front(), c.schedule()[35], 0.0);
    EXPECT_GT(r.report.reference_mvol, 0.0);
    EXPECT_GE(r.report.entropy, 0.0);
    EXPECT_LE(r.report.entropy, 8.0);
}

TEST(RunStage, RejectsShrinkingTarget) {
    const PipelineConfig c = small_config();
    ArbitraryDenoiser denoiser;
    IdentityCodec codec;
    EXPECT_THROW(run_stage(Image(16, 16, 1), {8, 32}, c, denoiser, codec, c.schedule()), std::invalid_argument);
}

TEST(RunPipeline, SingleRungReturnsInputUnchanged) {
    PipelineConfig c;
    c.ladder = {{64, 64}};
    ArbitraryDenoiser denoiser;
    IdentityCodec codec;
    const Image x = random_image(64, 64, 3, 6);
    const PipelineResult r = run_pipeline({x, {}}, c, {denoiser, codec});
    EXPECT_EQ(r.final_image(), x);
    EXPECT_TRUE(r.stages.empty());
    EXPECT_TRUE(r.reports.empty());
    EXPECT_EQ(denoiser.calls, 0u);
}

TEST(RunPipeline, DeterministicAcrossRuns) {
    PipelineConfig c;
    c.ladder = {{64, 64}, {128, 128}, {256, 256}};
    c.seed = 11;
    IdentityCodec codec;
    const Image x = synthetic_texture(64, 64, 3, 7);
    GuideImageDenoiser d1(x, 0.5), d2(x, 0.5);
    const PipelineResult a = run_pipeline({x, {}}, c, {d1, codec});
    const PipelineResult b = run_pipeline({x, {}}, c, {d2, codec});
    ASSERT_EQ(a.stages.size(), 2u);
    EXPECT_EQ(a.final_image(), b.final_image());
    EXPECT_EQ(a.stages[0], b.stages[0]);
    EXPECT_EQ(a.final_image().size2(), (Size2{256, 256}));
    EXPECT_EQ(a.reports[0].seed, 12u);
    EXPECT_EQ(a.reports[1].seed, 13u);
    // A different seed gives different noise.
    c.seed = 12;
    GuideImageDenoiser d3(x, 0.5);
    EXPECT_NE(run_pipeline({x, {}}, c, {d3, codec}).final_image(), a.final_image());
}

TEST(RunPipeline, PromptWithoutTextToImageIsConfigError) {
    PipelineConfig c = small_config();
    ArbitraryDenoiser denoiser;
    IdentityCodec codec;
    EXPECT_THROW(run_pipeline({std::nullopt, cat_prompt()}, c, {denoiser, codec}), ConfigError);
}

TEST(RunPipeline, UsesTextToImageForBase) {
    struct Card final : TextToImage {
        Image txt2img(const Conditioning& cond, std::size_t h, std::size_t w, std::size_t steps,
                      std::uint64_t seed) override {
            EXPECT_EQ(cond.prompt, "a cat");
            EXPECT_EQ(steps, 50u);
            EXPECT_EQ(seed, 3u);
            return Image(h, w, 3, 0.5f);
        }
    } card;
    PipelineConfig c = small_config();
    c.seed = 3;
    ArbitraryDenoiser denoiser;
    IdentityCodec codec;
    const PipelineResult r = run_pipeline({std::nullopt, cat_prompt()}, c, {denoiser, codec, &card});
    EXPECT_EQ(r.base, Image(32, 32, 3, 0.5f));
    EXPECT_EQ(r.final_image().size2(), (Size2{64, 64}));
}

TEST(RunPipeline, InputSizeMustMatchLadderBase) {
    ArbitraryDenoiser denoiser;
    IdentityCodec codec;
    EXPECT_THROW(run_pipeline({Image(16, 16, 3), {}}, small_config(), {denoiser, codec}), std::invalid_argument);
}

TEST(RunPipeline, StageFailuresCarryStageContext) {
    ThrowingDenoiser denoiser;
    IdentityCodec codec;
    try {
        run_pipeline({Image(32, 32, 3), {}}, small_config(), {denoiser, codec});
        FAIL() << "expected StageError";
    } catch (const StageError& e) {
        EXPECT_EQ(e.stage_index(), 1u);
        EXPECT_NE(std::string(e.what()).find("model crashed"), std::string::npos);
        try {
            std::rethrow_if_nested(e);
            FAIL() << "expected nested exception";
        } catch (const std::runtime_error& inner) {
            EXPECT_STREQ(inner.what(), "model crashed");
        }
    }
}

TEST(BuildLadder, DoublesPerAxisUpToTarget) {
    EXPECT_EQ(build_ladder({64, 64}, {256, 256}), (std::vector<Size2>{{64, 64}, {128, 128}, {256, 256}}));
    EXPECT_EQ(build_ladder({64, 128}, {256, 512}), (std::vector<Size2>{{64, 128}, {128, 256}, {256, 512}}));
    EXPECT_EQ(build_ladder({100, 100}, {300, 250}), (std::vector<Size2>{{100, 100}, {200, 200}, {300, 250}}));
    EXPECT_EQ(build_ladder({64, 64}, {64, 64}), (std::vector<Size2>{{64, 64}}));
    EXPECT_THROW(build_ladder({64, 64}, {32, 128}), std::invalid_argument);
}
