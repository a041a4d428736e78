// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#include "wavelift/image_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace wavelift {
namespace {

// Precomputed 1D resampling taps: output i reads `width` source samples
// starting at index[i * width] with matching weights.
struct AxisTaps {
    std::size_t width = 0;
    std::vector<std::size_t> index;
    std::vector<double> weight;
};

std::size_t clamp_index(std::ptrdiff_t i, std::size_t n) {
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 1));
}

double cubic_weight(double x) {
    constexpr double a = -0.75;
    x = std::abs(x);
    if (x <= 1.0) {
        return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
    }
    if (x < 2.0) {
        return ((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a;
    }
    return 0.0;
}

AxisTaps make_taps(std::size_t in, std::size_t out, Interpolation method) {
    AxisTaps taps;
    const double scale = static_cast<double>(in) / static_cast<double>(out);
    switch (method) {
        case Interpolation::nearest: {
            taps.width = 1;
            for (std::size_t i = 0; i < out; ++i) {
                const auto src = static_cast<std::ptrdiff_t>(std::floor((static_cast<double>(i) + 0.5) * scale));
                taps.index.push_back(clamp_index(src, in));
                taps.weight.push_back(1.0);
            }
            break;
        }
        case Interpolation::bilinear: {
            taps.width = 2;
            for (std::size_t i = 0; i < out; ++i) {
                const double src = std::max(0.0, (static_cast<double>(i) + 0.5) * scale - 0.5);
                const auto i0 = static_cast<std::ptrdiff_t>(std::floor(src));
                const double frac = src - static_cast<double>(i0);
                taps.index.push_back(clamp_index(i0, in));
                taps.index.push_back(clamp_index(i0 + 1, in));
                taps.weight.push_back(1.0 - frac);
                taps.weight.push_back(frac);
            }
            break;
        }
        case Interpolation::bicubic: {
            taps.width = 4;
            for (std::size_t i = 0; i < out; ++i) {
                const double src = (static_cast<double>(i) + 0.5) * scale - 0.5;
                const auto i0 = static_cast<std::ptrdiff_t>(std::floor(src));
                const double t = src - static_cast<double>(i0);
                for (std::ptrdiff_t k = -1; k <= 2; ++k) {
                    taps.index.push_back(clamp_index(i0 + k, in));
                    taps.weight.push_back(cubic_weight(static_cast<double>(k) - t));
                }
            }
            break;
        }
    }
    return taps;
}

}  // namespace

Interpolation parse_interpolation(std::string_view name) {
    if (name == "bilinear") return Interpolation::bilinear;
    if (name == "bicubic") return Interpolation::bicubic;
    if (name == "nearest") return Interpolation::nearest;
    throw std::invalid_argument("unknown interpolation method '" + std::string(name) + "'");
}

std::string to_string(Interpolation method) {
    switch (method) {
        case Interpolation::bilinear: return "bilinear";
        case Interpolation::bicubic: return "bicubic";
        case Interpolation::nearest: return "nearest";
    }
    return "unknown";
}

std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) noexcept {
    const auto period = static_cast<std::ptrdiff_t>(2 * n);
    std::ptrdiff_t m = i % period;
    if (m < 0) m += period;
    if (m >= static_cast<std::ptrdiff_t>(n)) m = period - 1 - m;
    return static_cast<std::size_t>(m);
}

Image interpolate(const Image& src, std::size_t target_height, std::size_t target_width,
                  Interpolation method) {
    if (src.empty()) {
        throw std::invalid_argument("interpolate: empty source image");
    }
    if (target_height == 0 || target_width == 0) {
        throw std::invalid_argument("interpolate: target dimensions must be positive");
    }
    const std::size_t channels = src.channels();
    const AxisTaps rows = make_taps(src.height(), target_height, method);
    const AxisTaps cols = make_taps(src.width(), target_width, method);

    // Horizontal pass: src.height x target_width.
    std::vector<double> horizontal(src.height() * target_width * channels, 0.0);
    for (std::size_t y = 0; y < src.height(); ++y) {
        for (std::size_t x = 0; x < target_width; ++x) {
            double* dst = &horizontal[(y * target_width + x) * channels];
            for (std::size_t t = 0; t < cols.width; ++t) {
                const std::size_t sx = cols.index[x * cols.width + t];
                const double w = cols.weight[x * cols.width + t];
                for (std::size_t c = 0; c < channels; ++c) {
                    dst[c] += w * static_cast<double>(src.at(y, sx, c));
                }
            }
        }
    }

    Image out(target_height, target_width, channels);
    std::vector<double> acc(channels);
    for (std::size_t y = 0; y < target_height; ++y) {
        for (std::size_t x = 0; x < target_width; ++x) {
            std::fill(acc.begin(), acc.end(), 0.0);
            for (std::size_t t = 0; t < rows.width; ++t) {
                const std::size_t sy = rows.index[y * rows.width + t];
                const double w = rows.weight[y * rows.width + t];
                const double* row = &horizontal[(sy * target_width + x) * channels];
                for (std::size_t c = 0; c < channels; ++c) {
                    acc[c] += w * row[c];
                }
            }
            for (std::size_t c = 0; c < channels; ++c) {
                out.at(y, x, c) = static_cast<float>(std::clamp(acc[c], 0.0, 1.0));
            }
        }
    }
    return out;
}

Image resize_area(const Image& src, std::size_t target_height, std::size_t target_width) {
    if (target_height == 0 || target_width == 0 || target_height > src.height() || target_width > src.width()) {
        throw std::invalid_argument("resize_area: target " + std::to_string(target_height) + "x" +
                                    std::to_string(target_width) + " must be positive and within " +
                                    to_string(src.size2()));
    }
    // Per axis: output i covers [i * s, (i + 1) * s) in source units.
    auto coverage = [](std::size_t in, std::size_t out) {
        AxisTaps taps;
        const double s = static_cast<double>(in) / static_cast<double>(out);
        taps.width = static_cast<std::size_t>(std::ceil(s)) + 1;
        for (std::size_t i = 0; i < out; ++i) {
            const double lo = static_cast<double>(i) * s;
            const double hi = lo + s;
            const auto first = static_cast<std::size_t>(std::floor(lo));
            for (std::size_t t = 0; t < taps.width; ++t) {
                const std::size_t j = std::min(first + t, in - 1);
                const double overlap =
                    std::max(0.0, std::min(hi, static_cast<double>(first + t + 1)) - std::max(lo, static_cast<double>(first + t)));
                taps.index.push_back(j);
                taps.weight.push_back(first + t < in ? overlap / s : 0.0);
            }
        }
        return taps;
    };
    const AxisTaps rows = coverage(src.height(), target_height);
    const AxisTaps cols = coverage(src.width(), target_width);
    const std::size_t channels = src.channels();
    Image out(target_height, target_width, channels);
    std::vector<double> acc(channels);
    for (std::size_t y = 0; y < target_height; ++y) {
        for (std::size_t x = 0; x < target_width; ++x) {
            std::fill(acc.begin(), acc.end(), 0.0);
            for (std::size_t ty = 0; ty < rows.width; ++ty) {
                const double wy = rows.weight[y * rows.width + ty];
                if (wy == 0.0) continue;
                const std::size_t sy = rows.index[y * rows.width + ty];
                for (std::size_t tx = 0; tx < cols.width; ++tx) {
                    const double wx = cols.weight[x * cols.width + tx];
                    if (wx == 0.0) continue;
                    const std::size_t sx = cols.index[x * cols.width + tx];
                    for (std::size_t c = 0; c < channels; ++c) {
                        acc[c] += wy * wx * static_cast<double>(src.at(sy, sx, c));
                    }
                }
            }
            for (std::size_t c = 0; c < channels; ++c) {
                out.at(y, x, c) = static_cast<float>(acc[c]);
            }
        }
    }
    return out;
}

std::vector<double> gaussian_kernel(double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("gaussian_kernel: sigma must be finite and >= 0");
    }
    if (sigma == 0.0) {
        return {1.0};
    }
    const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
    std::vector<double> taps;
    taps.reserve(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (std::ptrdiff_t i = -radius; i <= radius; ++i) {
        const double w = std::exp(-static_cast<double>(i * i) / (2.0 * sigma * sigma));
        taps.push_back(w);
        sum += w;
    }
    for (double& w : taps) w /= sum;
    return taps;
}

Image gaussian_blur(const Image& src, double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("gaussian_blur: sigma must be finite and >= 0");
    }
    if (sigma == 0.0 || src.empty()) {
        return src;
    }
    const std::vector<double> kernel = gaussian_kernel(sigma);
    const auto radius = static_cast<std::ptrdiff_t>(kernel.size() / 2);
    const std::size_t h = src.height();
    const std::size_t w = src.width();
    const std::size_t channels = src.channels();

    std::vector<double> horizontal(h * w * channels, 0.0);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            double* dst = &horizontal[(y * w + x) * channels];
            for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
                const std::size_t sx = reflect_index(static_cast<std::ptrdiff_t>(x) + k, w);
                const double weight = kernel[static_cast<std::size_t>(k + radius)];
                for (std::size_t c = 0; c < channels; ++c) {
                    dst[c] += weight * static_cast<double>(src.at(y, sx, c));
                }
            }
        }
    }

    Image out(h, w, channels);
    std::vector<double> acc(channels);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            std::fill(acc.begin(), acc.end(), 0.0);
            for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
                const std::size_t sy = reflect_index(static_cast<std::ptrdiff_t>(y) + k, h);
                const double weight = kernel[static_cast<std::size_t>(k + radius)];
                const double* row = &horizontal[(sy * w + x) * channels];
                for (std::size_t c = 0; c < channels; ++c) {
                    acc[c] += weight * row[c];
                }
            }
            for (std::size_t c = 0; c < channels; ++c) {
                out.at(y, x, c) = static_cast<float>(acc[c]);
            }
        }
    }
    return out;
}

Image sharpen_unclamped(const Image& src, double alpha, double blur_sigma) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("sharpen: alpha must be finite and >= 0");
    }
    if (alpha == 0.0) {
        // Skips the blur entirely so alpha == 0 is an exact identity.
        if (!(blur_sigma >= 0.0)) {
            throw std::invalid_argument("gaussian_blur: sigma must be finite and >= 0");
        }
        return src;
    }
    const Image blurred = gaussian_blur(src, blur_sigma);
    Image out = src;
    auto dst = out.values();
    const auto b = blurred.values();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] = static_cast<float>((alpha + 1.0) * static_cast<double>(dst[i]) -
                                    alpha * static_cast<double>(b[i]));
    }
    return out;
}

Image sharpen(const Image& src, double alpha, double blur_sigma) {
    if (alpha == 0.0) {
        return sharpen_unclamped(src, alpha, blur_sigma);
    }
    return clamp_unit(sharpen_unclamped(src, alpha, blur_sigma));
}

Image to_grayscale(const Image& src) {
    if (src.channels() == 1) {
        return src;
    }
    if (src.channels() != 3) {
        throw std::invalid_argument("to_grayscale: expected 1 or 3 channels, got " +
                                    std::to_string(src.channels()));
    }
    Image out(src.height(), src.width(), 1);
    for (std::size_t y = 0; y < src.height(); ++y) {
        for (std::size_t x = 0; x < src.width(); ++x) {
            out.at(y, x, 0) = static_cast<float>(0.299 * src.at(y, x, 0) + 0.587 * src.at(y, x, 1) +
                                                 0.114 * src.at(y, x, 2));
        }
    }
    return out;
}

}  // namespace wavelift
