// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "wavelift/tensor.hpp"

namespace wavelift {

enum class Interpolation { bilinear, bicubic, nearest };

Interpolation parse_interpolation(std::string_view name);
std::string to_string(Interpolation method);

/// Resamples `src` to target_height x target_width.
///
/// Pixel centers sit at (i + 0.5) / n on both grids (align-corners false);
/// source taps outside the image are clamped to the border. Output values
/// are clamped to [0, 1]. Downscaling is accepted but does no prefiltering.
Image interpolate(const Image& src, std::size_t target_height, std::size_t target_width,
                  Interpolation method = Interpolation::bilinear);

/// Box-filter downscale: each output pixel averages the source area it
/// covers (fractional coverage at the edges). Target must not exceed the source.
Image resize_area(const Image& src, std::size_t target_height, std::size_t target_width);

/// Separable Gaussian blur with radius ceil(3 sigma), normalized taps and
/// symmetric (edge-duplicating) reflection at the borders. sigma == 0 is a
/// no-op. Does not clamp.
Image gaussian_blur(const Image& src, double sigma);

/// Unsharp masking: (alpha + 1) * src - alpha * gaussian_blur(src, blur_sigma),
/// clamped to [0, 1]. alpha == 0 returns src unchanged.
Image sharpen(const Image& src, double alpha, double blur_sigma);

/// Same as sharpen() without the final clamp.
Image sharpen_unclamped(const Image& src, double alpha, double blur_sigma);

/// BT.601 luma for 3-channel input; 1-channel input passes through.
Image to_grayscale(const Image& src);

/// Normalized 1D Gaussian taps for offsets -radius..radius.
std::vector<double> gaussian_kernel(double sigma);

/// Maps any integer index onto [0, n) by symmetric reflection (edge sample repeated).
std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) noexcept;

}  // namespace wavelift
