// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#include "wavelift/scheduler.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wavelift {
namespace {

void require_same_shape(const Latent& a, const Latent& b, const char* op) {
    if (a.shape() != b.shape()) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch " + to_string(a.shape()) + " vs " +
                                    to_string(b.shape()));
    }
}

}  // namespace

std::size_t SigmaSchedule::start_index(std::size_t steps) const {
    if (steps > num_steps()) {
        throw std::invalid_argument("requested " + std::to_string(steps) + " steps from a " +
                                    std::to_string(num_steps()) + "-step schedule");
    }
    return num_steps() - steps;
}

SigmaSchedule make_schedule(std::size_t num_steps, double sigma_min, double sigma_max, double rho) {
    if (num_steps < 1) {
        throw std::invalid_argument("make_schedule: num_steps must be >= 1");
    }
    if (!(sigma_min > 0.0) || !(sigma_max > sigma_min) || !std::isfinite(sigma_max)) {
        throw std::invalid_argument("make_schedule: need 0 < sigma_min < sigma_max");
    }
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw std::invalid_argument("make_schedule: rho must be > 0");
    }

    SigmaSchedule schedule;
    schedule.sigma_min_ = sigma_min;
    schedule.sigma_max_ = sigma_max;
    schedule.rho_ = rho;
    schedule.sigmas_.reserve(num_steps + 1);
    if (num_steps == 1) {
        schedule.sigmas_ = {sigma_max, 0.0};
        return schedule;
    }
    const double max_inv = std::pow(sigma_max, 1.0 / rho);
    const double min_inv = std::pow(sigma_min, 1.0 / rho);
    for (std::size_t i = 0; i < num_steps; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(num_steps - 1);
        schedule.sigmas_.push_back(std::pow(max_inv + t * (min_inv - max_inv), rho));
    }
    // Pin the endpoints against pow round-off.
    schedule.sigmas_.front() = sigma_max;
    schedule.sigmas_[num_steps - 1] = sigma_min;
    schedule.sigmas_.push_back(0.0);
    return schedule;
}

void NoiseSource::fill_standard_normal(std::span<float> out) {
    for (float& v : out) {
        v = static_cast<float>(normal_(engine_));
    }
}

Latent add_noise(const Latent& z0, double sigma, NoiseSource& noise) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("add_noise: sigma must be finite and >= 0");
    }
    if (sigma == 0.0) {
        return z0;
    }
    Latent out(z0.shape());
    noise.fill_standard_normal(out.values());
    auto dst = out.values();
    const auto src = z0.values();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] = static_cast<float>(static_cast<double>(src[i]) + sigma * static_cast<double>(dst[i]));
    }
    return out;
}

Latent score_from_denoised(const Latent& z_t, const Latent& denoised, double sigma) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("score_from_denoised: sigma must be > 0");
    }
    require_same_shape(z_t, denoised, "score_from_denoised");
    Latent out(z_t.shape());
    auto dst = out.values();
    const auto z = z_t.values();
    const auto d = denoised.values();
    const double inv = 1.0 / (sigma * sigma);
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] = static_cast<float>((static_cast<double>(d[i]) - static_cast<double>(z[i])) * inv);
    }
    out.check_finite();
    return out;
}

Latent denoise_step(const Latent& z_t, const Latent& denoised, double sigma_t, double sigma_next) {
    if (!(sigma_next >= 0.0) || !(sigma_t > sigma_next)) {
        throw std::invalid_argument("denoise_step: need sigma_t > sigma_next >= 0, got " + std::to_string(sigma_t) +
                                    " -> " + std::to_string(sigma_next));
    }
    require_same_shape(z_t, denoised, "denoise_step");
    if (sigma_next == 0.0) {
        return denoised;
    }
    const double ratio = sigma_next / sigma_t;
    Latent out(z_t.shape());
    auto dst = out.values();
    const auto z = z_t.values();
    const auto d = denoised.values();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        const double dd = static_cast<double>(d[i]);
        dst[i] = static_cast<float>(dd + ratio * (static_cast<double>(z[i]) - dd));
    }
    return out;
}

}  // namespace wavelift
