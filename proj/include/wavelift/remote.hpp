// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "wavelift/denoiser.hpp"
#include "wavelift/wire.hpp"

namespace wavelift {

struct RemoteOptions {
    /// Base URL of the model server, e.g. "http://127.0.0.1:8000".
    std::string endpoint;
    /// Total attempts per request on transport failure.
    int max_attempts = 3;
    /// Delay before the first retry; doubles after each failed attempt.
    std::chrono::milliseconds initial_backoff{500};
    std::chrono::seconds connect_timeout{10};
    /// Generous by default: a 4K decode on a busy GPU is slow.
    std::chrono::seconds read_timeout{600};
    /// Skips GET /v1/info when the server's limits are already known.
    std::optional<wire::ServerInfo> info;
};

/// HTTP client for the model server. Implements the denoiser, the latent
/// codec and text-to-image over the JSON wire protocol.
///
/// Transport failures are retried up to max_attempts with exponential
/// backoff, then surface as TransportError. Non-200 answers surface as
/// ServerError carrying the server's message; responses that break the
/// protocol (bad tensor, wrong shape) surface as ProtocolError.
/// One request in flight at a time; not safe for concurrent use.
class RemoteBackend final : public Denoiser, public LatentCodec, public TextToImage {
public:
    explicit RemoteBackend(RemoteOptions options);
    ~RemoteBackend() override;

    RemoteBackend(const RemoteBackend&) = delete;
    RemoteBackend& operator=(const RemoteBackend&) = delete;

    /// Fetched on first use and cached.
    const wire::ServerInfo& info();

    Latent denoise(const Latent& noisy, double sigma, const Conditioning& conditioning) override;
    Latent encode(const Image& image) override;
    Image decode(const Latent& latent) override;

    /// Validates the requested size against the advertised granularity
    /// (std::invalid_argument) before the request is sent.
    Image txt2img(const Conditioning& conditioning, std::size_t height, std::size_t width, std::size_t steps,
                  std::uint64_t seed) override;

private:
    nlohmann::json post(const std::string& path, const nlohmann::json& body);
    nlohmann::json get(const std::string& path);

    struct Impl;
    RemoteOptions options_;
    std::unique_ptr<Impl> impl_;
};

}  // namespace wavelift
