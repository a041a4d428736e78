// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace wavelift {

/// Bad run configuration, e.g. a prompt without a text-to-image backend.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Network-level failure talking to a model server. Safe to retry.
class TransportError : public std::runtime_error {
public:
    TransportError(const std::string& what, int attempts)
        : std::runtime_error(what), attempts_(attempts) {}

    bool retryable() const noexcept { return true; }
    int attempts() const noexcept { return attempts_; }

private:
    int attempts_;
};

/// The server answered, but with something that violates the wire protocol.
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The server answered with a non-200 status.
class ServerError : public std::runtime_error {
public:
    ServerError(int status, std::string message)
        : std::runtime_error("server returned " + std::to_string(status) + ": " + message),
          status_(status),
          message_(std::move(message)) {}

    int status() const noexcept { return status_; }
    const std::string& server_message() const noexcept { return message_; }

private:
    int status_;
    std::string message_;
};

/// Wraps any failure inside a pipeline stage with the stage it happened in.
class StageError : public std::runtime_error {
public:
    StageError(std::size_t stage_index, const std::string& what)
        : std::runtime_error("stage " + std::to_string(stage_index) + ": " + what),
          stage_index_(stage_index) {}

    std::size_t stage_index() const noexcept { return stage_index_; }

private:
    std::size_t stage_index_;
};

}  // namespace wavelift
