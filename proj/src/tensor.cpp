// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#include "wavelift/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace wavelift {

std::string to_string(const Size2& size) {
    return std::to_string(size.height) + "x" + std::to_string(size.width);
}

std::string to_string(const Shape& shape) {
    return std::to_string(shape.height) + "x" + std::to_string(shape.width) + "x" +
           std::to_string(shape.channels);
}

namespace detail {

void validate_shape(const Shape& shape) {
    if (shape.height == 0 || shape.width == 0 || shape.channels == 0) {
        throw std::invalid_argument("tensor dimensions must be positive, got " + to_string(shape));
    }
}

void validate_finite(std::span<const float> values) {
    const auto bad = std::find_if(values.begin(), values.end(),
                                  [](float v) { return !std::isfinite(v); });
    if (bad != values.end()) {
        throw std::invalid_argument("tensor contains a non-finite value at index " +
                                    std::to_string(bad - values.begin()));
    }
}

}  // namespace detail

Image clamp_unit(Image image) {
    for (float& v : image.values()) {
        v = std::clamp(v, 0.0f, 1.0f);
    }
    return image;
}

template <class Tag>
double max_abs_diff(const Tensor3<Tag>& a, const Tensor3<Tag>& b) {
    if (a.shape() != b.shape()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch " + to_string(a.shape()) +
                                    " vs " + to_string(b.shape()));
    }
    double worst = 0.0;
    const auto av = a.values();
    const auto bv = b.values();
    for (std::size_t i = 0; i < av.size(); ++i) {
        worst = std::max(worst, std::abs(static_cast<double>(av[i]) - static_cast<double>(bv[i])));
    }
    return worst;
}

template double max_abs_diff(const Image&, const Image&);
template double max_abs_diff(const Latent&, const Latent&);

}  // namespace wavelift
