// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavelift/tensor.hpp"
#include "wavelift/wavelet.hpp"

namespace wavelift {

/// Shannon entropy in bits of the 256-bin histogram of round(gray * 255).
double entropy(const Image& image);

/// Population variance of the 4-neighbour Laplacian response of the
/// grayscale image on the 0-255 scale, with symmetric reflection at the
/// borders. Throws std::invalid_argument below 3x3.
double variance_of_laplacian(const Image& image);

struct Patch {
    std::size_t top = 0;
    std::size_t left = 0;
    Image image;
};

/// `count` patch x patch crops at uniformly random positions, seeded.
/// Throws std::invalid_argument if the patch does not fit.
std::vector<Patch> extract_patches(const Image& image, std::size_t patch, std::size_t count, std::uint64_t seed);

/// Pearson correlation of the DWT approximation bands of two same-shape images.
double low_frequency_correlation(const Image& a, const Image& b, const WaveletFamily& family);

struct MetricSelection {
    bool entropy = true;
    bool mvol = true;
};

struct MetricReport {
    struct Row {
        std::string path;
        std::optional<double> entropy;
        std::optional<double> mvol;
    };
    struct Failure {
        std::string path;
        std::string error;
    };

    std::vector<Row> images;
    std::vector<Failure> errors;
    std::optional<double> mean_entropy;
    std::optional<double> mean_mvol;

    /// {images: [{path, entropy, mvol}], mean_entropy, mean_mvol, errors: [{path, error}]}
    nlohmann::json to_json() const;
};

/// Scores every PNG in `paths` (processed in sorted order). Unreadable
/// files are recorded in `errors` and skipped.
MetricReport dataset_report(std::vector<std::filesystem::path> paths, MetricSelection selection = {});

/// Sorted *.png files directly inside `directory`.
std::vector<std::filesystem::path> list_png_files(const std::filesystem::path& directory);

}  // namespace wavelift
