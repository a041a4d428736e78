// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#include "wavelift/wavelet.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wavelift {
namespace {

// One 1D analysis pass over a strided line of even length n.
void analyze_line(const double* in, std::size_t n, std::size_t in_stride, double* lo, double* hi,
                  std::size_t out_stride, const std::vector<double>& h, const std::vector<double>& g) {
    const std::size_t taps = h.size();
    for (std::size_t k = 0; k < n / 2; ++k) {
        double a = 0.0;
        double d = 0.0;
        for (std::size_t j = 0; j < taps; ++j) {
            const double x = in[((2 * k + j) % n) * in_stride];
            a += h[j] * x;
            d += g[j] * x;
        }
        lo[k * out_stride] = a;
        hi[k * out_stride] = d;
    }
}

// Transpose of analyze_line; `out` must be zeroed, n = 2 * half.
void synthesize_line(const double* lo, const double* hi, std::size_t half, std::size_t in_stride, double* out,
                     std::size_t out_stride, const std::vector<double>& h, const std::vector<double>& g) {
    const std::size_t n = 2 * half;
    const std::size_t taps = h.size();
    for (std::size_t k = 0; k < half; ++k) {
        const double a = lo[k * in_stride];
        const double d = hi[k * in_stride];
        for (std::size_t j = 0; j < taps; ++j) {
            out[((2 * k + j) % n) * out_stride] += h[j] * a + g[j] * d;
        }
    }
}

std::size_t half_up(std::size_t n) { return (n + 1) / 2; }

// Splits along width: in is H x W x C (W even), outputs H x W/2 x C each.
void analyze_rows(const std::vector<double>& in, std::size_t height, std::size_t width, std::size_t channels,
                  const WaveletFamily& family, std::vector<double>& lo, std::vector<double>& hi) {
    const std::size_t half = width / 2;
    lo.assign(height * half * channels, 0.0);
    hi.assign(height * half * channels, 0.0);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t c = 0; c < channels; ++c) {
            analyze_line(&in[y * width * channels + c], width, channels, &lo[y * half * channels + c],
                         &hi[y * half * channels + c], channels, family.lowpass(), family.highpass());
        }
    }
}

// Splits along height: in is H x W x C (H even), outputs H/2 x W x C each.
void analyze_cols(const std::vector<double>& in, std::size_t height, std::size_t width, std::size_t channels,
                  const WaveletFamily& family, Subband& lo, Subband& hi) {
    const std::size_t half = height / 2;
    lo = Subband(half, width, channels);
    hi = Subband(half, width, channels);
    const std::size_t stride = width * channels;
    for (std::size_t x = 0; x < width; ++x) {
        for (std::size_t c = 0; c < channels; ++c) {
            const std::size_t offset = x * channels + c;
            analyze_line(&in[offset], height, stride, &lo.values[offset], &hi.values[offset], stride,
                         family.lowpass(), family.highpass());
        }
    }
}

std::vector<double> synthesize_cols(const Subband& lo, const Subband& hi, const WaveletFamily& family) {
    const std::size_t width = lo.width;
    const std::size_t channels = lo.channels;
    const std::size_t stride = width * channels;
    std::vector<double> out(2 * lo.height * stride, 0.0);
    for (std::size_t x = 0; x < width; ++x) {
        for (std::size_t c = 0; c < channels; ++c) {
            const std::size_t offset = x * channels + c;
            synthesize_line(&lo.values[offset], &hi.values[offset], lo.height, stride, &out[offset], stride,
                            family.lowpass(), family.highpass());
        }
    }
    return out;
}

std::vector<double> synthesize_rows(const std::vector<double>& lo, const std::vector<double>& hi,
                                    std::size_t height, std::size_t half, std::size_t channels,
                                    const WaveletFamily& family) {
    const std::size_t width = 2 * half;
    std::vector<double> out(height * width * channels, 0.0);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t c = 0; c < channels; ++c) {
            synthesize_line(&lo[y * half * channels + c], &hi[y * half * channels + c], half, channels,
                            &out[y * width * channels + c], channels, family.lowpass(), family.highpass());
        }
    }
    return out;
}

}  // namespace

WaveletFamily::WaveletFamily(Kind kind, std::vector<double> lowpass) : kind_(kind), lowpass_(std::move(lowpass)) {
    const std::size_t taps = lowpass_.size();
    highpass_.resize(taps);
    for (std::size_t j = 0; j < taps; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        highpass_[j] = sign * lowpass_[taps - 1 - j];
    }
}

WaveletFamily WaveletFamily::haar() {
    const double s = 1.0 / std::sqrt(2.0);
    return WaveletFamily(Kind::haar, {s, s});
}

WaveletFamily WaveletFamily::db2() {
    const double r3 = std::sqrt(3.0);
    const double norm = 4.0 * std::sqrt(2.0);
    return WaveletFamily(Kind::db2, {(1.0 + r3) / norm, (3.0 + r3) / norm, (3.0 - r3) / norm, (1.0 - r3) / norm});
}

WaveletFamily WaveletFamily::from_name(std::string_view name) {
    if (name == "haar") return haar();
    if (name == "db2") return db2();
    throw std::invalid_argument("unknown wavelet family '" + std::string(name) + "' (expected haar or db2)");
}

std::string WaveletFamily::name() const {
    return kind_ == Kind::haar ? "haar" : "db2";
}

double Subband::energy() const noexcept {
    return std::inner_product(values.begin(), values.end(), values.begin(), 0.0);
}

double DwtCoeffs::energy() const noexcept {
    return approx.energy() + detail_h.energy() + detail_v.energy() + detail_d.energy();
}

DwtCoeffs dwt2(const Image& src, const WaveletFamily& family) {
    if (src.empty()) {
        throw std::invalid_argument("dwt2: empty image");
    }
    const std::size_t taps = family.filter_length();
    if (src.height() < taps || src.width() < taps) {
        throw std::invalid_argument("dwt2: image " + to_string(src.size2()) + " is smaller than the " +
                                    family.name() + " filter support (" + std::to_string(taps) + ")");
    }
    const std::size_t channels = src.channels();
    const std::size_t height = 2 * half_up(src.height());
    const std::size_t width = 2 * half_up(src.width());

    // Odd sizes: duplicate the last row / column.
    std::vector<double> padded(height * width * channels);
    for (std::size_t y = 0; y < height; ++y) {
        const std::size_t sy = std::min(y, src.height() - 1);
        for (std::size_t x = 0; x < width; ++x) {
            const std::size_t sx = std::min(x, src.width() - 1);
            for (std::size_t c = 0; c < channels; ++c) {
                padded[(y * width + x) * channels + c] = static_cast<double>(src.at(sy, sx, c));
            }
        }
    }

    std::vector<double> row_lo;
    std::vector<double> row_hi;
    analyze_rows(padded, height, width, channels, family, row_lo, row_hi);

    DwtCoeffs coeffs;
    coeffs.family = family;
    coeffs.source_size = src.size2();
    analyze_cols(row_lo, height, width / 2, channels, family, coeffs.approx, coeffs.detail_h);
    analyze_cols(row_hi, height, width / 2, channels, family, coeffs.detail_v, coeffs.detail_d);
    return coeffs;
}

Image idwt2(const DwtCoeffs& coeffs) {
    const Subband& a = coeffs.approx;
    if (!a.same_shape(coeffs.detail_h) || !a.same_shape(coeffs.detail_v) || !a.same_shape(coeffs.detail_d)) {
        throw std::invalid_argument("idwt2: subbands have inconsistent shapes");
    }
    const Size2 source = coeffs.source_size;
    if (a.channels == 0 || a.height != half_up(source.height) || a.width != half_up(source.width) ||
        a.values.size() != a.height * a.width * a.channels) {
        throw std::invalid_argument("idwt2: subband shape does not match source size " + to_string(source));
    }

    const std::vector<double> row_lo = synthesize_cols(coeffs.approx, coeffs.detail_h, coeffs.family);
    const std::vector<double> row_hi = synthesize_cols(coeffs.detail_v, coeffs.detail_d, coeffs.family);
    const std::size_t height = 2 * a.height;
    const std::size_t width = 2 * a.width;
    const std::vector<double> full = synthesize_rows(row_lo, row_hi, height, a.width, a.channels, coeffs.family);

    Image out(source.height, source.width, a.channels);
    for (std::size_t y = 0; y < source.height; ++y) {
        for (std::size_t x = 0; x < source.width; ++x) {
            for (std::size_t c = 0; c < a.channels; ++c) {
                out.at(y, x, c) = static_cast<float>(full[(y * width + x) * a.channels + c]);
            }
        }
    }
    return out;
}

Image swap_low_frequency(const Image& reference, const Image& estimate, const WaveletFamily& family) {
    if (reference.shape() != estimate.shape()) {
        throw std::invalid_argument("swap_low_frequency: reference " + to_string(reference.shape()) +
                                    " and estimate " + to_string(estimate.shape()) + " differ in shape");
    }
    DwtCoeffs mixed = dwt2(estimate, family);
    mixed.approx = dwt2(reference, family).approx;
    return idwt2(mixed);
}

}  // namespace wavelift
