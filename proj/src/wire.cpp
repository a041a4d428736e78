// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#include "wavelift/wire.hpp"

#include <absl/strings/escaping.h>

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>

#include "wavelift/errors.hpp"

namespace wavelift::wire {
namespace {

std::uint32_t to_little_endian(std::uint32_t v) {
    if constexpr (std::endian::native == std::endian::big) {
        return ((v & 0xFFu) << 24) | ((v & 0xFF00u) << 8) | ((v >> 8) & 0xFF00u) | (v >> 24);
    }
    return v;
}

const nlohmann::json& require(const nlohmann::json& object, const char* key) {
    if (!object.is_object() || !object.contains(key)) {
        throw ProtocolError(std::string("missing field '") + key + "'");
    }
    return object.at(key);
}

}  // namespace

template <class Tag>
nlohmann::json encode_tensor(const Tensor3<Tag>& tensor) {
    const auto values = tensor.values();
    std::string bytes(values.size() * sizeof(float), '\0');
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::uint32_t word = to_little_endian(std::bit_cast<std::uint32_t>(values[i]));
        std::memcpy(bytes.data() + i * sizeof(float), &word, sizeof(word));
    }
    return {
        {"shape", {tensor.height(), tensor.width(), tensor.channels()}},
        {"dtype", "f32"},
        {"data", absl::Base64Escape(bytes)},
    };
}

template <class Tag>
Tensor3<Tag> decode_tensor(const nlohmann::json& object) {
    const auto& shape = require(object, "shape");
    const auto& dtype = require(object, "dtype");
    const auto& data = require(object, "data");
    if (!dtype.is_string() || dtype.get<std::string>() != "f32") {
        throw ProtocolError("unsupported tensor dtype " + dtype.dump());
    }
    if (!shape.is_array() || shape.size() != 3) {
        throw ProtocolError("tensor shape must be [h, w, c], got " + shape.dump());
    }
    for (const auto& dim : shape) {
        if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0) {
            throw ProtocolError("tensor shape entries must be positive integers, got " + shape.dump());
        }
    }
    if (!data.is_string()) {
        throw ProtocolError("tensor data must be a base64 string");
    }
    std::string bytes;
    if (!absl::Base64Unescape(data.get<std::string>(), &bytes)) {
        throw ProtocolError("tensor data is not valid base64");
    }
    const Shape dims{shape[0].get<std::size_t>(), shape[1].get<std::size_t>(), shape[2].get<std::size_t>()};
    if (bytes.size() != dims.elements() * sizeof(float)) {
        throw ProtocolError("tensor data has " + std::to_string(bytes.size()) + " bytes, shape " + to_string(dims) +
                            " needs " + std::to_string(dims.elements() * sizeof(float)));
    }
    std::vector<float> values(dims.elements());
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::uint32_t word = 0;
        std::memcpy(&word, bytes.data() + i * sizeof(float), sizeof(word));
        values[i] = std::bit_cast<float>(to_little_endian(word));
    }
    try {
        return Tensor3<Tag>(dims, std::move(values));
    } catch (const std::invalid_argument& e) {
        throw ProtocolError(std::string("invalid tensor: ") + e.what());
    }
}

nlohmann::json encode_conditioning(const Conditioning& conditioning) {
    return {
        {"prompt", conditioning.prompt},
        {"negative_prompt", conditioning.negative_prompt},
        {"guidance_scale", conditioning.guidance_scale},
        {"extra", conditioning.extra},
    };
}

Conditioning decode_conditioning(const nlohmann::json& object) {
    if (!object.is_object()) {
        throw ProtocolError("conditioning must be an object");
    }
    Conditioning out;
    try {
        out.prompt = object.value("prompt", std::string{});
        out.negative_prompt = object.value("negative_prompt", std::string{});
        out.guidance_scale = object.value("guidance_scale", 1.0);
    } catch (const nlohmann::json::exception& e) {
        throw ProtocolError(std::string("malformed conditioning: ") + e.what());
    }
    if (object.contains("extra")) {
        out.extra = object.at("extra");
    }
    return out;
}

nlohmann::json encode_info(const ServerInfo& info) {
    return {
        {"latent_channels", info.latent_channels},
        {"downscale_factor", info.downscale_factor},
        {"dim_granularity", info.dim_granularity},
        {"model_name", info.model_name},
    };
}

ServerInfo decode_info(const nlohmann::json& object) {
    ServerInfo info;
    try {
        info.latent_channels = require(object, "latent_channels").get<std::size_t>();
        info.downscale_factor = require(object, "downscale_factor").get<std::size_t>();
        info.dim_granularity = require(object, "dim_granularity").get<std::size_t>();
        info.model_name = object.value("model_name", std::string{});
    } catch (const nlohmann::json::exception& e) {
        throw ProtocolError(std::string("malformed /v1/info response: ") + e.what());
    }
    if (info.latent_channels == 0 || info.downscale_factor == 0 || info.dim_granularity == 0) {
        throw ProtocolError("/v1/info reported a zero latent_channels, downscale_factor or dim_granularity");
    }
    return info;
}

template nlohmann::json encode_tensor(const Image&);
template nlohmann::json encode_tensor(const Latent&);
template Image decode_tensor<ImageTag>(const nlohmann::json&);
template Latent decode_tensor<LatentTag>(const nlohmann::json&);

}  // namespace wavelift::wire
