// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>

#include <json.hpp>

#include "wavelift/image_ops.hpp"
#include "wavelift/tensor.hpp"

namespace wavelift {

/// Text conditioning forwarded untouched to whichever backend understands it.
struct Conditioning {
    std::string prompt;
    std::string negative_prompt;
    double guidance_scale = 1.0;
    /// Opaque backend-specific options, sent verbatim.
    nlohmann::json extra = nlohmann::json::object();
};

/// D(z; sigma): estimates the clean latent from a noisy one.
/// Implementations must return a tensor of the input's shape and be
/// deterministic for identical inputs and backend state.
class Denoiser {
public:
    virtual ~Denoiser() = default;
    virtual Latent denoise(const Latent& noisy, double sigma, const Conditioning& conditioning) = 0;
};

/// Encoder / decoder pair between pixel space and the diffusion space.
class LatentCodec {
public:
    virtual ~LatentCodec() = default;
    virtual Latent encode(const Image& image) = 0;
    virtual Image decode(const Latent& latent) = 0;
};

/// Produces the base image of a run from a prompt.
class TextToImage {
public:
    virtual ~TextToImage() = default;
    virtual Image txt2img(const Conditioning& conditioning, std::size_t height, std::size_t width,
                          std::size_t steps, std::uint64_t seed) = 0;
};

/// Non-owning bundle of what a pipeline run needs. `txt2img` may be null.
struct Backend {
    Denoiser& denoiser;
    LatentCodec& codec;
    TextToImage* txt2img = nullptr;
};

/// Posterior mean E[x0 | z_t] for the prior x0 ~ N(mu, diag(var)) and z_t = x0 + sigma * eps:
/// (var * z_t + sigma^2 * mu) / (var + sigma^2), elementwise.
/// Throws std::invalid_argument on shape mismatch, var <= 0 or sigma < 0.
Latent analytic_gaussian_denoise(const Latent& z_t, double sigma, const Latent& mu, const Latent& var);

/// Exact denoiser for a fixed diagonal Gaussian prior.
class AnalyticGaussianDenoiser final : public Denoiser {
public:
    AnalyticGaussianDenoiser(Latent mu, Latent var);

    Latent denoise(const Latent& noisy, double sigma, const Conditioning& conditioning) override;

    const Latent& mu() const noexcept { return mu_; }
    const Latent& var() const noexcept { return var_; }

private:
    Latent mu_;
    Latent var_;
};

/// Gaussian-prior denoiser that adapts to whatever latent shape it is given.
///
/// The prior mean is the guide image resampled to the latent's spatial size
/// and mapped through the identity codec; without a guide it is zero (mid
/// gray). The prior variance is the same scalar for every element.
class GuideImageDenoiser final : public Denoiser {
public:
    GuideImageDenoiser(std::optional<Image> guide, double variance,
                       Interpolation method = Interpolation::bilinear);

    Latent denoise(const Latent& noisy, double sigma, const Conditioning& conditioning) override;

    double variance() const noexcept { return variance_; }

private:
    const Latent& prior_mean(const Shape& shape);

    std::optional<Image> guide_;
    double variance_;
    Interpolation method_;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Latent> cache_;
};

/// Latent space == pixel space, remapped to [-1, 1] via v -> 2v - 1.
/// decode() is the exact affine inverse and does not clamp; callers clamp
/// in pixel space where an image leaves the engine.
Latent identity_encode(const Image& image);
Image identity_decode(const Latent& latent);

class IdentityCodec final : public LatentCodec {
public:
    Latent encode(const Image& image) override { return identity_encode(image); }
    Image decode(const Latent& latent) override { return identity_decode(latent); }
};

}  // namespace wavelift
