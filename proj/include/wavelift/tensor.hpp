// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavelift {

/// Spatial size of a raster, height first.
struct Size2 {
    std::size_t height = 0;
    std::size_t width = 0;

    friend bool operator==(const Size2&, const Size2&) = default;
};

std::string to_string(const Size2& size);

/// Full shape of an H x W x C raster.
struct Shape {
    std::size_t height = 0;
    std::size_t width = 0;
    std::size_t channels = 0;

    std::size_t elements() const noexcept { return height * width * channels; }
    Size2 size2() const noexcept { return {height, width}; }

    friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(const Shape& shape);

namespace detail {
void validate_shape(const Shape& shape);
void validate_finite(std::span<const float> values);
}  // namespace detail

/// Dense row-major H x W x C float raster (channel fastest).
///
/// The tag keeps pixel-space images and latent-space tensors apart at
/// compile time. A default-constructed tensor is empty; every other
/// constructor enforces height >= 1, width >= 1 and finite values.
template <class Tag>
class Tensor3 {
public:
    Tensor3() = default;

    Tensor3(std::size_t height, std::size_t width, std::size_t channels, float fill = 0.0f)
        : shape_{height, width, channels} {
        detail::validate_shape(shape_);
        if (!std::isfinite(fill)) {
            throw std::invalid_argument("tensor fill value must be finite");
        }
        data_.assign(shape_.elements(), fill);
    }

    Tensor3(std::size_t height, std::size_t width, std::size_t channels, std::vector<float> data)
        : shape_{height, width, channels}, data_(std::move(data)) {
        detail::validate_shape(shape_);
        if (data_.size() != shape_.elements()) {
            throw std::invalid_argument("tensor data length " + std::to_string(data_.size()) +
                                        " does not match shape " + to_string(shape_));
        }
        detail::validate_finite(data_);
    }

    explicit Tensor3(const Shape& shape, float fill = 0.0f)
        : Tensor3(shape.height, shape.width, shape.channels, fill) {}

    Tensor3(const Shape& shape, std::vector<float> data)
        : Tensor3(shape.height, shape.width, shape.channels, std::move(data)) {}

    std::size_t height() const noexcept { return shape_.height; }
    std::size_t width() const noexcept { return shape_.width; }
    std::size_t channels() const noexcept { return shape_.channels; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }
    const Shape& shape() const noexcept { return shape_; }
    Size2 size2() const noexcept { return shape_.size2(); }

    std::span<float> values() noexcept { return data_; }
    std::span<const float> values() const noexcept { return data_; }

    float& at(std::size_t y, std::size_t x, std::size_t c) noexcept {
        return data_[(y * shape_.width + x) * shape_.channels + c];
    }
    float at(std::size_t y, std::size_t x, std::size_t c) const noexcept {
        return data_[(y * shape_.width + x) * shape_.channels + c];
    }

    /// Throws std::invalid_argument if any element is NaN or infinite.
    void check_finite() const { detail::validate_finite(data_); }

    friend bool operator==(const Tensor3&, const Tensor3&) = default;

private:
    Shape shape_{};
    std::vector<float> data_;
};

struct ImageTag {};
struct LatentTag {};

/// Pixel-space raster, nominal value range [0, 1], 1 or 3 channels.
using Image = Tensor3<ImageTag>;
/// Latent-space tensor produced by a LatentCodec.
using Latent = Tensor3<LatentTag>;

/// Clamps every value into [0, 1].
Image clamp_unit(Image image);

/// Largest absolute elementwise difference; shapes must match.
template <class Tag>
double max_abs_diff(const Tensor3<Tag>& a, const Tensor3<Tag>& b);

extern template double max_abs_diff(const Image&, const Image&);
extern template double max_abs_diff(const Latent&, const Latent&);

}  // namespace wavelift
