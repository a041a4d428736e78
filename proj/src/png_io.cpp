// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#include "wavelift/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace wavelift {
namespace {

// png_image owns internal state until finished or freed.
struct PngImageGuard {
    png_image image{};
    PngImageGuard() { image.version = PNG_IMAGE_VERSION; }
    ~PngImageGuard() { png_image_free(&image); }
    PngImageGuard(const PngImageGuard&) = delete;
    PngImageGuard& operator=(const PngImageGuard&) = delete;
};

}  // namespace

Image read_png(const std::filesystem::path& path) {
    PngImageGuard guard;
    png_image& png = guard.image;
    if (!png_image_begin_read_from_file(&png, path.c_str())) {
        throw std::runtime_error("cannot read PNG '" + path.string() + "': " + png.message);
    }
    const bool color = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
    png.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    const std::size_t channels = color ? 3 : 1;

    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
        throw std::runtime_error("cannot decode PNG '" + path.string() + "': " + png.message);
    }

    std::vector<float> values(buffer.size());
    std::transform(buffer.begin(), buffer.end(), values.begin(),
                   [](std::uint8_t v) { return static_cast<float>(v) / 255.0f; });
    return Image(png.height, png.width, channels, std::move(values));
}

void write_png(const std::filesystem::path& path, const Image& image) {
    if (image.empty()) {
        throw std::invalid_argument("write_png: empty image");
    }
    if (image.channels() != 1 && image.channels() != 3) {
        throw std::invalid_argument("write_png: expected 1 or 3 channels, got " +
                                    std::to_string(image.channels()));
    }
    PngImageGuard guard;
    png_image& png = guard.image;
    png.width = static_cast<png_uint_32>(image.width());
    png.height = static_cast<png_uint_32>(image.height());
    png.format = image.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

    std::vector<std::uint8_t> buffer(image.size());
    const auto values = image.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
        const float v = std::clamp(values[i], 0.0f, 1.0f);
        buffer[i] = static_cast<std::uint8_t>(std::lround(v * 255.0f));
    }
    if (!png_image_write_to_file(&png, path.c_str(), 0, buffer.data(), 0, nullptr)) {
        throw std::runtime_error("cannot write PNG '" + path.string() + "': " + png.message);
    }
}

}  // namespace wavelift
