// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wavelift/tensor.hpp"

namespace wavelift {

/// Seeded procedural test image: a smooth gradient background overlaid with
/// sinusoidal texture and a handful of hard-edged disks and rectangles.
/// Same arguments give the same image. Values lie in [0, 1].
Image synthetic_texture(std::size_t height, std::size_t width, std::size_t channels, std::uint64_t seed);

/// `count` textures with seeds seed, seed + 1, ...
std::vector<Image> synthetic_set(std::size_t count, std::size_t height, std::size_t width, std::size_t channels,
                                 std::uint64_t seed);

/// Alternating 0/1 pixels.
Image checkerboard(std::size_t height, std::size_t width, std::size_t channels = 1);

}  // namespace wavelift
