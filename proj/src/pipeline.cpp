// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#include "wavelift/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <stdexcept>
#include <utility>

#include "wavelift/errors.hpp"
#include "wavelift/metrics.hpp"

namespace wavelift {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

class CountingDenoiser final : public Denoiser {
public:
    explicit CountingDenoiser(Denoiser& inner) : inner_(inner) {}
    Latent denoise(const Latent& noisy, double sigma, const Conditioning& conditioning) override {
        ++calls;
        Latent out = inner_.denoise(noisy, sigma, conditioning);
        if (out.shape() != noisy.shape()) {
            throw std::runtime_error("denoiser returned shape " + to_string(out.shape()) + " for input " +
                                     to_string(noisy.shape()));
        }
        return out;
    }
    std::size_t calls = 0;

private:
    Denoiser& inner_;
};

class CountingCodec final : public LatentCodec {
public:
    explicit CountingCodec(LatentCodec& inner) : inner_(inner) {}
    Latent encode(const Image& image) override {
        ++encodes;
        return inner_.encode(image);
    }
    Image decode(const Latent& latent) override {
        ++decodes;
        return inner_.decode(latent);
    }
    std::size_t encodes = 0;
    std::size_t decodes = 0;

private:
    LatentCodec& inner_;
};

}  // namespace

void PipelineConfig::validate() const {
    if (ladder.empty()) {
        throw ConfigError("ladder must contain at least one resolution");
    }
    for (const Size2& rung : ladder) {
        if (rung.height == 0 || rung.width == 0) {
            throw ConfigError("ladder entry " + to_string(rung) + " has a zero dimension");
        }
    }
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        const Size2& prev = ladder[i - 1];
        const Size2& next = ladder[i];
        const bool shrinks = next.height < prev.height || next.width < prev.width;
        const bool grows = next.height > prev.height || next.width > prev.width;
        if (shrinks || !grows) {
            throw ConfigError("ladder must grow at every rung: " + to_string(prev) + " -> " + to_string(next));
        }
    }
    if (num_steps == 0) {
        throw ConfigError("num_steps must be at least 1");
    }
    if (tau > num_steps) {
        throw ConfigError("tau (" + std::to_string(tau) + ") exceeds num_steps (" + std::to_string(num_steps) + ")");
    }
    if (delta > tau) {
        throw ConfigError("delta (" + std::to_string(delta) + ") exceeds tau (" + std::to_string(tau) + ")");
    }
    if (!(alpha >= 0.0)) {
        throw ConfigError("alpha must be non-negative");
    }
    if (!(blur_sigma >= 0.0)) {
        throw ConfigError("blur_sigma must be non-negative");
    }
    if (!(sigma_min > 0.0 && sigma_min < sigma_max)) {
        throw ConfigError("need 0 < sigma_min < sigma_max");
    }
    if (!(rho > 0.0)) {
        throw ConfigError("rho must be positive");
    }
}

std::vector<std::string> PipelineConfig::warnings() const {
    std::vector<std::string> notes;
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        const Size2& prev = ladder[i - 1];
        const Size2& next = ladder[i];
        if (next.height > 2 * prev.height || next.width > 2 * prev.width) {
            notes.push_back("stage " + std::to_string(i) + " upscales " + to_string(prev) + " -> " +
                            to_string(next) + ", more than 2x on an axis");
        }
    }
    return notes;
}

StageResult run_stage(const Image& x_low, Size2 target, const PipelineConfig& config, Denoiser& denoiser,
                      LatentCodec& codec, const SigmaSchedule& schedule, const StageOptions& options) {
    if (target.height < x_low.height() || target.width < x_low.width()) {
        throw std::invalid_argument("run_stage: target " + to_string(target) + " is smaller than input " +
                                    to_string(x_low.size2()));
    }
    if (config.tau > schedule.num_steps() || config.delta > config.tau) {
        throw ConfigError("run_stage: need delta <= tau <= schedule steps");
    }
    const auto stage_start = Clock::now();
    CountingDenoiser counted_denoiser(denoiser);
    CountingCodec counted_codec(codec);

    StageReport report;
    report.stage_index = options.stage_index;
    report.input_size = x_low.size2();
    report.output_size = target;
    report.seed = config.seed + options.stage_index;
    report.tau = config.tau;
    report.delta = config.delta;
    report.alpha = config.alpha;
    report.num_steps = schedule.num_steps();

    const Image interpolated = interpolate(x_low, target.height, target.width, config.interpolation);
    const Image reference =
        config.sharpen_enabled ? sharpen(interpolated, config.alpha, config.blur_sigma) : interpolated;

    const std::size_t first = schedule.start_index(config.tau);
    const std::size_t last = schedule.num_steps();
    const std::size_t guided_end = config.guidance_enabled ? first + config.delta : first;
    report.sigmas.assign(schedule.sigmas().begin() + static_cast<std::ptrdiff_t>(first), schedule.sigmas().end());

    NoiseSource noise(report.seed);
    Latent z = add_noise(counted_codec.encode(reference), schedule[first], noise);

    for (std::size_t k = first; k < last; ++k) {
        const auto step_start = Clock::now();
        const double sigma = schedule[k];
        const double sigma_next = schedule[k + 1];
        Latent denoised = counted_denoiser.denoise(z, sigma, options.conditioning);
        const bool guided = k < guided_end;
        if (guided) {
            const Image estimate = counted_codec.decode(denoised);
            denoised = counted_codec.encode(swap_low_frequency(reference, estimate, config.wavelet));
            ++report.guidance_steps;
        }
        if (options.observer) {
            options.observer(StepEvent{k, sigma, sigma_next, guided, denoised, reference});
        }
        z = denoise_step(z, denoised, sigma, sigma_next);
        report.step_ms.push_back(elapsed_ms(step_start));
    }

    Image out = clamp_unit(counted_codec.decode(z));
    if (out.size2() != target) {
        throw std::runtime_error("decoder returned " + to_string(out.size2()) + ", expected " + to_string(target));
    }

    report.denoiser_calls = counted_denoiser.calls;
    report.encode_calls = counted_codec.encodes;
    report.decode_calls = counted_codec.decodes;
    report.entropy = entropy(out);
    if (out.height() >= 3 && out.width() >= 3) {
        report.mvol = variance_of_laplacian(out);
        report.reference_mvol = variance_of_laplacian(reference);
    }
    report.total_ms = elapsed_ms(stage_start);
    return {std::move(out), std::move(report)};
}

PipelineResult run_pipeline(const PipelineInput& input, const PipelineConfig& config, Backend backend,
                            const StepObserver& observer) {
    config.validate();
    const SigmaSchedule schedule = config.schedule();
    const Size2 base_size = config.ladder.front();

    PipelineResult result;
    if (input.image) {
        if (input.image->size2() != base_size) {
            throw std::invalid_argument("input image is " + to_string(input.image->size2()) +
                                        " but the ladder starts at " + to_string(base_size));
        }
        result.base = *input.image;
    } else {
        if (backend.txt2img == nullptr) {
            throw ConfigError("a prompt-only run needs a backend with text-to-image support");
        }
        result.base = backend.txt2img->txt2img(input.conditioning, base_size.height, base_size.width,
                                               config.num_steps, config.seed);
        if (result.base.size2() != base_size) {
            throw std::runtime_error("txt2img returned " + to_string(result.base.size2()) + ", expected " +
                                     to_string(base_size));
        }
    }

    const Image* current = &result.base;
    for (std::size_t i = 1; i < config.ladder.size(); ++i) {
        StageOptions options{i, input.conditioning, observer};
        StageResult stage;
        try {
            stage = run_stage(*current, config.ladder[i], config, backend.denoiser, backend.codec, schedule, options);
        } catch (const std::exception& e) {
            std::throw_with_nested(StageError(i, e.what()));
        }
        result.stages.push_back(std::move(stage.image));
        result.reports.push_back(std::move(stage.report));
        current = &result.stages.back();
    }
    return result;
}

std::vector<Size2> build_ladder(Size2 from, Size2 target) {
    if (from.height == 0 || from.width == 0) {
        throw std::invalid_argument("build_ladder: empty starting size");
    }
    if (target.height < from.height || target.width < from.width) {
        throw std::invalid_argument("build_ladder: target " + to_string(target) + " is smaller than " +
                                    to_string(from));
    }
    std::vector<Size2> ladder{from};
    while (ladder.back() != target) {
        const Size2& prev = ladder.back();
        ladder.push_back({std::min(prev.height * 2, target.height), std::min(prev.width * 2, target.width)});
    }
    return ladder;
}

}  // namespace wavelift
