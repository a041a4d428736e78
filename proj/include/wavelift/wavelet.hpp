// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wavelift/tensor.hpp"

namespace wavelift {

/// Orthonormal two-channel filter bank.
///
/// `lowpass` is the analysis scaling filter h; the analysis wavelet filter is
/// derived as g[j] = (-1)^j h[L-1-j]. Synthesis uses the same taps
/// (orthonormal bank), so the transform matrix is orthogonal and energy
/// is preserved.
class WaveletFamily {
public:
    enum class Kind { haar, db2 };

    static WaveletFamily haar();
    static WaveletFamily db2();
    static WaveletFamily from_name(std::string_view name);

    Kind kind() const noexcept { return kind_; }
    std::string name() const;
    std::size_t filter_length() const noexcept { return lowpass_.size(); }
    const std::vector<double>& lowpass() const noexcept { return lowpass_; }
    const std::vector<double>& highpass() const noexcept { return highpass_; }

    friend bool operator==(const WaveletFamily& a, const WaveletFamily& b) noexcept {
        return a.kind_ == b.kind_;
    }

private:
    WaveletFamily(Kind kind, std::vector<double> lowpass);

    Kind kind_;
    std::vector<double> lowpass_;
    std::vector<double> highpass_;
};

/// One subband: height x width x channels doubles, row-major, channel fastest.
struct Subband {
    std::size_t height = 0;
    std::size_t width = 0;
    std::size_t channels = 0;
    std::vector<double> values;

    Subband() = default;
    Subband(std::size_t h, std::size_t w, std::size_t c) : height(h), width(w), channels(c), values(h * w * c, 0.0) {}

    double& at(std::size_t y, std::size_t x, std::size_t c) noexcept { return values[(y * width + x) * channels + c]; }
    double at(std::size_t y, std::size_t x, std::size_t c) const noexcept {
        return values[(y * width + x) * channels + c];
    }
    double energy() const noexcept;
    bool same_shape(const Subband& other) const noexcept {
        return height == other.height && width == other.width && channels == other.channels;
    }
};

/// Single-level 2D DWT coefficients.
///
/// Sign convention for the 2x2 Haar butterfly on [[a, b], [c, d]]:
///   approx   = (a + b + c + d) / 2
///   detail_h = (a + b - c - d) / 2   lowpass along width, highpass along height
///   detail_v = (a - b + c - d) / 2   highpass along width, lowpass along height
///   detail_d = (a - b - c + d) / 2
struct DwtCoeffs {
    Subband approx;
    Subband detail_h;
    Subband detail_v;
    Subband detail_d;
    Size2 source_size;
    WaveletFamily family = WaveletFamily::haar();

    double energy() const noexcept;
};

/// Per-channel single-level orthonormal 2D DWT.
///
/// Odd dimensions are first padded by one duplicated edge row/column, so
/// every band is ceil(h/2) x ceil(w/2). Filters longer than two taps wrap
/// periodically at the (even) padded border, which keeps the transform
/// orthogonal and exactly invertible with critical sampling.
/// Throws std::invalid_argument if either dimension is shorter than the filter.
DwtCoeffs dwt2(const Image& src, const WaveletFamily& family);

/// Inverse of dwt2(); output has exactly coeffs.source_size. Not clamped.
/// Throws std::invalid_argument on inconsistent band shapes.
Image idwt2(const DwtCoeffs& coeffs);

/// Returns iDWT({approx of reference} U {details of estimate}).
/// For even sizes dwt2(result).approx equals dwt2(reference).approx up to
/// rounding; for odd sizes the crop back to the source size makes it approximate.
/// Throws std::invalid_argument if the two images differ in shape.
Image swap_low_frequency(const Image& reference, const Image& estimate, const WaveletFamily& family);

}  // namespace wavelift
