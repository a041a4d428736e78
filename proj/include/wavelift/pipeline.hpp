// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wavelift/denoiser.hpp"
#include "wavelift/image_ops.hpp"
#include "wavelift/scheduler.hpp"
#include "wavelift/tensor.hpp"
#include "wavelift/wavelet.hpp"

namespace wavelift {

/// Every knob of a progressive run. Defaults reproduce the reference
/// setup: 1024 -> 2048 -> 4096, 15 of 50 steps re-run per stage, low-band
/// guidance on the first 5 of them, unsharp masking with alpha = 1.
struct PipelineConfig {
    std::vector<Size2> ladder{{1024, 1024}, {2048, 2048}, {4096, 4096}};
    std::size_t tau = 15;
    std::size_t delta = 5;
    double alpha = 1.0;
    double blur_sigma = 2.0;
    std::size_t num_steps = 50;
    double sigma_min = 0.002;
    double sigma_max = 80.0;
    double rho = 7.0;
    WaveletFamily wavelet = WaveletFamily::haar();
    Interpolation interpolation = Interpolation::bilinear;
    std::uint64_t seed = 0;
    bool guidance_enabled = true;
    bool sharpen_enabled = true;

    /// Throws ConfigError unless 0 <= delta <= tau <= num_steps, the ladder
    /// is non-empty and grows at every rung (never shrinking on either axis),
    /// and alpha / blur_sigma are non-negative.
    void validate() const;

    /// Human-readable notes for rungs that grow by more than 2x on an axis.
    std::vector<std::string> warnings() const;

    SigmaSchedule schedule() const { return make_schedule(num_steps, sigma_min, sigma_max, rho); }
};

struct StageReport {
    std::size_t stage_index = 0;
    Size2 input_size;
    Size2 output_size;
    /// sigmas[N - tau .. N]: the injected level followed by each step's target.
    std::vector<double> sigmas;
    std::vector<double> step_ms;
    double total_ms = 0.0;
    std::size_t guidance_steps = 0;
    std::size_t denoiser_calls = 0;
    std::size_t encode_calls = 0;
    std::size_t decode_calls = 0;
    double entropy = 0.0;
    double mvol = 0.0;
    /// Sharpness of the sharpened interpolation the stage was guided by.
    double reference_mvol = 0.0;
    std::uint64_t seed = 0;
    // Hyperparameters in effect.
    std::size_t tau = 0;
    std::size_t delta = 0;
    double alpha = 0.0;
    std::size_t num_steps = 0;
};

/// Passed to the step observer after the denoiser (and guidance, if any) ran.
struct StepEvent {
    std::size_t step;  ///< schedule index k
    double sigma;
    double sigma_next;
    bool guided;
    /// Clean-latent estimate used for the update (post-swap when guided).
    const Latent& denoised;
    /// The stage's guide: the sharpened interpolation.
    const Image& reference;
};

using StepObserver = std::function<void(const StepEvent&)>;

struct StageOptions {
    std::size_t stage_index = 1;
    Conditioning conditioning;
    StepObserver observer;
};

struct StageResult {
    Image image;
    StageReport report;
};

/// One rung of the ladder:
///   1. x~ = interpolate(x_low, target)
///   2. x- = sharpen(x~) when sharpening is enabled, else x~
///   3. z = encode(x-) + sigma[N - tau] * noise   (noise seeded by seed + stage_index)
///   4. for k = N - tau .. N - 1:
///        d = denoise(z, sigma[k]);
///        for the first delta steps: d = encode(swap_low_frequency(x-, decode(d)))
///        z = denoise_step(z, d, sigma[k], sigma[k + 1])
///   5. return clamp(decode(z))
StageResult run_stage(const Image& x_low, Size2 target, const PipelineConfig& config, Denoiser& denoiser,
                      LatentCodec& codec, const SigmaSchedule& schedule, const StageOptions& options = {});

struct PipelineInput {
    /// Base image at ladder[0]; when absent the backend's txt2img makes one.
    std::optional<Image> image;
    Conditioning conditioning;
};

struct PipelineResult {
    Image base;
    std::vector<Image> stages;
    std::vector<StageReport> reports;

    const Image& final_image() const { return stages.empty() ? base : stages.back(); }
};

/// Obtains the base image and folds run_stage over ladder[1:].
/// Stage failures are rethrown as StageError with the original nested.
/// Throws ConfigError when no image is given and the backend has no txt2img.
PipelineResult run_pipeline(const PipelineInput& input, const PipelineConfig& config, Backend backend,
                            const StepObserver& observer = {});

/// Ladder from `from` to `target`, doubling each axis per rung and capping
/// at the target. Throws std::invalid_argument if target < from on an axis.
std::vector<Size2> build_ladder(Size2 from, Size2 target);

}  // namespace wavelift
