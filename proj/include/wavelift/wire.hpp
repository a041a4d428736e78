// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include "wavelift/denoiser.hpp"
#include "wavelift/tensor.hpp"

namespace wavelift::wire {

// Tensors travel as {"shape": [h, w, c], "dtype": "f32", "data": base64(little-endian float32)}.
// Images and latents share the encoding.

template <class Tag>
nlohmann::json encode_tensor(const Tensor3<Tag>& tensor);

/// Throws ProtocolError on a malformed object, wrong dtype, bad base64,
/// a byte count that disagrees with the shape, or non-finite values.
template <class Tag>
Tensor3<Tag> decode_tensor(const nlohmann::json& object);

nlohmann::json encode_conditioning(const Conditioning& conditioning);
Conditioning decode_conditioning(const nlohmann::json& object);

/// GET /v1/info payload.
struct ServerInfo {
    std::size_t latent_channels = 0;
    std::size_t downscale_factor = 1;
    std::size_t dim_granularity = 1;
    std::string model_name;
};

nlohmann::json encode_info(const ServerInfo& info);
ServerInfo decode_info(const nlohmann::json& object);

extern template nlohmann::json encode_tensor(const Image&);
extern template nlohmann::json encode_tensor(const Latent&);
extern template Image decode_tensor<ImageTag>(const nlohmann::json&);
extern template Latent decode_tensor<LatentTag>(const nlohmann::json&);

}  // namespace wavelift::wire
