// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#include "wavelift/remote.hpp"

#include <httplib.h>

#include <stdexcept>
#include <thread>

#include "wavelift/errors.hpp"

namespace wavelift {

struct RemoteBackend::Impl {
    explicit Impl(const RemoteOptions& options) : client(options.endpoint) {
        client.set_connection_timeout(options.connect_timeout);
        client.set_read_timeout(options.read_timeout);
        client.set_write_timeout(options.read_timeout);
    }

    httplib::Client client;
    std::optional<wire::ServerInfo> info;
};

namespace {

std::string server_message(const httplib::Response& response) {
    const auto parsed = nlohmann::json::parse(response.body, nullptr, false);
    if (parsed.is_object()) {
        for (const char* key : {"error", "detail", "message"}) {
            if (parsed.contains(key)) {
                const auto& v = parsed.at(key);
                return v.is_string() ? v.get<std::string>() : v.dump();
            }
        }
    }
    return response.body;
}

nlohmann::json parse_body(const httplib::Response& response, const std::string& path) {
    auto parsed = nlohmann::json::parse(response.body, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
        throw ProtocolError(path + ": response body is not a JSON object");
    }
    return parsed;
}

const nlohmann::json& field(const nlohmann::json& body, const char* key, const std::string& path) {
    if (!body.contains(key)) {
        throw ProtocolError(path + ": response has no '" + key + "' field");
    }
    return body.at(key);
}

}  // namespace

RemoteBackend::RemoteBackend(RemoteOptions options)
    : options_(std::move(options)), impl_(std::make_unique<Impl>(options_)) {
    if (options_.max_attempts < 1) {
        throw std::invalid_argument("RemoteBackend: max_attempts must be >= 1");
    }
    impl_->info = options_.info;
}

RemoteBackend::~RemoteBackend() = default;

template <class Send>
static httplib::Result send_with_retry(const RemoteOptions& options, const std::string& path, Send send) {
    auto delay = options.initial_backoff;
    for (int attempt = 1;; ++attempt) {
        httplib::Result result = send();
        if (result) {
            return result;
        }
        if (attempt >= options.max_attempts) {
            throw TransportError(options.endpoint + path + ": " + httplib::to_string(result.error()) + " after " +
                                     std::to_string(attempt) + " attempts",
                                 attempt);
        }
        std::this_thread::sleep_for(delay);
        delay *= 2;
    }
}

nlohmann::json RemoteBackend::post(const std::string& path, const nlohmann::json& body) {
    const std::string payload = body.dump();
    httplib::Result result = send_with_retry(options_, path, [&] {
        return impl_->client.Post(path, payload, "application/json");
    });
    if (result->status != 200) {
        throw ServerError(result->status, server_message(*result));
    }
    return parse_body(*result, path);
}

nlohmann::json RemoteBackend::get(const std::string& path) {
    httplib::Result result = send_with_retry(options_, path, [&] { return impl_->client.Get(path); });
    if (result->status != 200) {
        throw ServerError(result->status, server_message(*result));
    }
    return parse_body(*result, path);
}

const wire::ServerInfo& RemoteBackend::info() {
    if (!impl_->info) {
        impl_->info = wire::decode_info(get("/v1/info"));
    }
    return *impl_->info;
}

Latent RemoteBackend::denoise(const Latent& noisy, double sigma, const Conditioning& conditioning) {
    const nlohmann::json body = {
        {"latent", wire::encode_tensor(noisy)},
        {"sigma", sigma},
        {"conditioning", wire::encode_conditioning(conditioning)},
    };
    const auto response = post("/v1/denoise", body);
    Latent out = wire::decode_tensor<LatentTag>(field(response, "latent", "/v1/denoise"));
    if (out.shape() != noisy.shape()) {
        throw ProtocolError("/v1/denoise: sent " + to_string(noisy.shape()) + ", received " + to_string(out.shape()));
    }
    return out;
}

Latent RemoteBackend::encode(const Image& image) {
    const auto& limits = info();
    const auto response = post("/v1/encode", {{"image", wire::encode_tensor(image)}});
    Latent out = wire::decode_tensor<LatentTag>(field(response, "latent", "/v1/encode"));
    const Shape expected{image.height() / limits.downscale_factor, image.width() / limits.downscale_factor,
                         limits.latent_channels};
    if (out.shape() != expected) {
        throw ProtocolError("/v1/encode: expected latent " + to_string(expected) + ", received " +
                            to_string(out.shape()));
    }
    return out;
}

Image RemoteBackend::decode(const Latent& latent) {
    const auto& limits = info();
    const auto response = post("/v1/decode", {{"latent", wire::encode_tensor(latent)}});
    Image out = wire::decode_tensor<ImageTag>(field(response, "image", "/v1/decode"));
    const Size2 expected{latent.height() * limits.downscale_factor, latent.width() * limits.downscale_factor};
    if (out.size2() != expected) {
        throw ProtocolError("/v1/decode: expected image " + to_string(expected) + ", received " +
                            to_string(out.size2()));
    }
    return out;
}

Image RemoteBackend::txt2img(const Conditioning& conditioning, std::size_t height, std::size_t width,
                             std::size_t steps, std::uint64_t seed) {
    const auto& limits = info();
    const std::size_t multiple = limits.downscale_factor * limits.dim_granularity;
    if (height == 0 || width == 0 || height % multiple != 0 || width % multiple != 0) {
        throw std::invalid_argument("txt2img: " + std::to_string(height) + "x" + std::to_string(width) +
                                    " is not a positive multiple of " + std::to_string(multiple));
    }
    const nlohmann::json body = {
        {"conditioning", wire::encode_conditioning(conditioning)},
        {"height", height},
        {"width", width},
        {"steps", steps},
        {"seed", seed},
    };
    const auto response = post("/v1/txt2img", body);
    Image out = wire::decode_tensor<ImageTag>(field(response, "image", "/v1/txt2img"));
    if (out.size2() != Size2{height, width}) {
        throw ProtocolError("/v1/txt2img: requested " + std::to_string(height) + "x" + std::to_string(width) +
                            ", received " + to_string(out.size2()));
    }
    return out;
}

}  // namespace wavelift
