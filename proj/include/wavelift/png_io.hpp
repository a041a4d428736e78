// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "wavelift/tensor.hpp"

namespace wavelift {

/// Reads an 8-bit PNG as a 1-channel (gray, gray+alpha) or 3-channel image
/// (everything else; alpha is dropped). Values are v / 255.
/// Throws std::runtime_error on unreadable or malformed files.
Image read_png(const std::filesystem::path& path);

/// Writes an 8-bit gray or RGB PNG; values are clamped and mapped v -> round(v * 255).
void write_png(const std::filesystem::path& path, const Image& image);

}  // namespace wavelift
