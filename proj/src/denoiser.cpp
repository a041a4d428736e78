// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#include "wavelift/denoiser.hpp"

#include <cmath>
#include <stdexcept>

namespace wavelift {

Latent analytic_gaussian_denoise(const Latent& z_t, double sigma, const Latent& mu, const Latent& var) {
    if (z_t.shape() != mu.shape() || z_t.shape() != var.shape()) {
        throw std::invalid_argument("analytic_gaussian_denoise: shape mismatch (z " + to_string(z_t.shape()) +
                                    ", mu " + to_string(mu.shape()) + ", var " + to_string(var.shape()) + ")");
    }
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("analytic_gaussian_denoise: sigma must be finite and >= 0");
    }
    const auto v = var.values();
    for (const float x : v) {
        if (!(x > 0.0f)) {
            throw std::invalid_argument("analytic_gaussian_denoise: prior variance must be > 0");
        }
    }
    if (sigma == 0.0) {
        return z_t;
    }
    const double s2 = sigma * sigma;
    Latent out(z_t.shape());
    auto dst = out.values();
    const auto z = z_t.values();
    const auto m = mu.values();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        const double vi = static_cast<double>(v[i]);
        dst[i] = static_cast<float>((vi * static_cast<double>(z[i]) + s2 * static_cast<double>(m[i])) / (vi + s2));
    }
    return out;
}

AnalyticGaussianDenoiser::AnalyticGaussianDenoiser(Latent mu, Latent var) : mu_(std::move(mu)), var_(std::move(var)) {
    if (mu_.shape() != var_.shape()) {
        throw std::invalid_argument("AnalyticGaussianDenoiser: mu and var shapes differ");
    }
    for (const float x : var_.values()) {
        if (!(x > 0.0f)) {
            throw std::invalid_argument("AnalyticGaussianDenoiser: prior variance must be > 0");
        }
    }
}

Latent AnalyticGaussianDenoiser::denoise(const Latent& noisy, double sigma, const Conditioning&) {
    return analytic_gaussian_denoise(noisy, sigma, mu_, var_);
}

GuideImageDenoiser::GuideImageDenoiser(std::optional<Image> guide, double variance, Interpolation method)
    : guide_(std::move(guide)), variance_(variance), method_(method) {
    if (!(variance > 0.0) || !std::isfinite(variance)) {
        throw std::invalid_argument("GuideImageDenoiser: variance must be finite and > 0");
    }
}

const Latent& GuideImageDenoiser::prior_mean(const Shape& shape) {
    const auto key = std::make_tuple(shape.height, shape.width, shape.channels);
    if (auto it = cache_.find(key); it != cache_.end()) {
        return it->second;
    }
    Latent mean(shape, 0.0f);
    if (guide_) {
        Image resized = interpolate(*guide_, shape.height, shape.width, method_);
        if (resized.channels() != shape.channels) {
            if (shape.channels == 1) {
                resized = to_grayscale(resized);
            } else if (resized.channels() == 1) {
                Image expanded(shape.height, shape.width, shape.channels);
                for (std::size_t y = 0; y < shape.height; ++y)
                    for (std::size_t x = 0; x < shape.width; ++x)
                        for (std::size_t c = 0; c < shape.channels; ++c) expanded.at(y, x, c) = resized.at(y, x, 0);
                resized = std::move(expanded);
            } else {
                throw std::invalid_argument("GuideImageDenoiser: guide has " + std::to_string(resized.channels()) +
                                            " channels, latent has " + std::to_string(shape.channels));
            }
        }
        mean = identity_encode(resized);
    }
    return cache_.emplace(key, std::move(mean)).first->second;
}

Latent GuideImageDenoiser::denoise(const Latent& noisy, double sigma, const Conditioning&) {
    const Latent& mean = prior_mean(noisy.shape());
    const Latent var(noisy.shape(), static_cast<float>(variance_));
    return analytic_gaussian_denoise(noisy, sigma, mean, var);
}

Latent identity_encode(const Image& image) {
    Latent out(image.shape());
    auto dst = out.values();
    const auto src = image.values();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] = static_cast<float>(2.0 * static_cast<double>(src[i]) - 1.0);
    }
    return out;
}

Image identity_decode(const Latent& latent) {
    Image out(latent.shape());
    auto dst = out.values();
    const auto src = latent.values();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] = static_cast<float>((static_cast<double>(src[i]) + 1.0) * 0.5);
    }
    return out;
}

}  // namespace wavelift
