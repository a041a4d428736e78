// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#include "wavelift/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace wavelift {
namespace {

struct Disk {
    double cy, cx, r;
    std::array<double, 3> color;
};

struct Rect {
    double top, left, bottom, right;
    std::array<double, 3> color;
};

}  // namespace

Image synthetic_texture(std::size_t height, std::size_t width, std::size_t channels, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto color = [&] { return std::array<double, 3>{unit(rng), unit(rng), unit(rng)}; };

    const auto base = color();
    const auto slope = color();
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    const double freq_y = 2.0 + 10.0 * unit(rng);
    const double freq_x = 2.0 + 10.0 * unit(rng);
    const double amplitude = 0.05 + 0.15 * unit(rng);

    std::vector<Disk> disks(2 + rng() % 4);
    for (auto& d : disks) d = {unit(rng), unit(rng), 0.05 + 0.2 * unit(rng), color()};
    std::vector<Rect> rects(1 + rng() % 3);
    for (auto& r : rects) {
        const double top = unit(rng), left = unit(rng);
        r = {top, left, top + 0.1 + 0.3 * unit(rng), left + 0.1 + 0.3 * unit(rng), color()};
    }

    Image out(height, width, channels);
    const double ca = std::cos(angle), sa = std::sin(angle);
    for (std::size_t y = 0; y < height; ++y) {
        const double v = (static_cast<double>(y) + 0.5) / static_cast<double>(height);
        for (std::size_t x = 0; x < width; ++x) {
            const double u = (static_cast<double>(x) + 0.5) / static_cast<double>(width);
            const double ramp = (u - 0.5) * ca + (v - 0.5) * sa;
            const double wave = amplitude * std::sin(2.0 * std::numbers::pi * freq_y * v) *
                                std::cos(2.0 * std::numbers::pi * freq_x * u);
            std::array<double, 3> px{};
            for (std::size_t c = 0; c < 3; ++c) px[c] = 0.2 + 0.6 * base[c] + 0.4 * (slope[c] - 0.5) * ramp + wave;
            for (const auto& d : disks) {
                if ((v - d.cy) * (v - d.cy) + (u - d.cx) * (u - d.cx) < d.r * d.r) px = d.color;
            }
            for (const auto& r : rects) {
                if (v >= r.top && v < r.bottom && u >= r.left && u < r.right) px = r.color;
            }
            if (channels == 1) {
                out.at(y, x, 0) = static_cast<float>(std::clamp(0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2], 0.0, 1.0));
            } else {
                for (std::size_t c = 0; c < channels; ++c) {
                    out.at(y, x, c) = static_cast<float>(std::clamp(px[c % 3], 0.0, 1.0));
                }
            }
        }
    }
    return out;
}

std::vector<Image> synthetic_set(std::size_t count, std::size_t height, std::size_t width, std::size_t channels,
                                 std::uint64_t seed) {
    std::vector<Image> set;
    set.reserve(count);
    for (std::size_t i = 0; i < count; ++i) set.push_back(synthetic_texture(height, width, channels, seed + i));
    return set;
}

Image checkerboard(std::size_t height, std::size_t width, std::size_t channels) {
    Image out(height, width, channels);
    for (std::size_t y = 0; y < height; ++y)
        for (std::size_t x = 0; x < width; ++x)
            for (std::size_t c = 0; c < channels; ++c) out.at(y, x, c) = static_cast<float>((x + y) % 2);
    return out;
}

}  // namespace wavelift
