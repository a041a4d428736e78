// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "wavelift/tensor.hpp"

namespace wavelift {

/// Descending noise levels sigma_0 = sigma_max > ... > sigma_{N-1} = sigma_min > sigma_N = 0.
class SigmaSchedule {
public:
    const std::vector<double>& sigmas() const noexcept { return sigmas_; }
    std::size_t num_steps() const noexcept { return sigmas_.size() - 1; }
    double sigma_min() const noexcept { return sigma_min_; }
    double sigma_max() const noexcept { return sigma_max_; }
    double rho() const noexcept { return rho_; }
    double operator[](std::size_t i) const { return sigmas_.at(i); }

    /// Index of the first step when only the last `steps` steps are run (N - steps).
    std::size_t start_index(std::size_t steps) const;
    /// Noise level injected before running the last `steps` steps: sigmas[N - steps].
    double start_sigma(std::size_t steps) const { return sigmas_[start_index(steps)]; }

private:
    friend SigmaSchedule make_schedule(std::size_t, double, double, double);
    SigmaSchedule() = default;

    std::vector<double> sigmas_;
    double sigma_min_ = 0.0;
    double sigma_max_ = 0.0;
    double rho_ = 0.0;
};

/// Karras rho-schedule:
/// sigma_i = (sigma_max^(1/rho) + i/(N-1) * (sigma_min^(1/rho) - sigma_max^(1/rho)))^rho
/// for i < N, plus a trailing 0. With N == 1 the schedule is [sigma_max, 0].
/// Throws std::invalid_argument unless num_steps >= 1, 0 < sigma_min < sigma_max, rho > 0.
SigmaSchedule make_schedule(std::size_t num_steps, double sigma_min = 0.002, double sigma_max = 80.0,
                            double rho = 7.0);

/// Seeded standard-normal stream. Single consumer: do not share across threads.
class NoiseSource {
public:
    explicit NoiseSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }
    void fill_standard_normal(std::span<float> out);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// z0 + sigma * g with g drawn from `noise`. sigma == 0 returns z0 and draws nothing.
Latent add_noise(const Latent& z0, double sigma, NoiseSource& noise);

/// Score estimate (denoised - z_t) / sigma^2. Throws std::invalid_argument if sigma <= 0.
Latent score_from_denoised(const Latent& z_t, const Latent& denoised, double sigma);

/// Deterministic first-order step from sigma_t to sigma_next:
/// denoised + (sigma_next / sigma_t) * (z_t - denoised).
/// Equivalent to an Euler step of the probability-flow ODE.
/// Throws std::invalid_argument unless sigma_t > sigma_next >= 0.
Latent denoise_step(const Latent& z_t, const Latent& denoised, double sigma_t, double sigma_next);

}  // namespace wavelift
