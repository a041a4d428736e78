// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#include "wavelift/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "wavelift/image_ops.hpp"
#include "wavelift/png_io.hpp"

namespace wavelift {

double entropy(const Image& image) {
    const Image gray = to_grayscale(image);
    std::array<std::size_t, 256> histogram{};
    for (const float v : gray.values()) {
        const long bin = std::lround(std::clamp(static_cast<double>(v), 0.0, 1.0) * 255.0);
        ++histogram[static_cast<std::size_t>(bin)];
    }
    const double total = static_cast<double>(gray.size());
    double bits = 0.0;
    for (const std::size_t count : histogram) {
        if (count == 0) continue;
        const double p = static_cast<double>(count) / total;
        bits -= p * std::log2(p);
    }
    return bits;
}

double variance_of_laplacian(const Image& image) {
    if (image.height() < 3 || image.width() < 3) {
        throw std::invalid_argument("variance_of_laplacian: image must be at least 3x3, got " +
                                    to_string(image.size2()));
    }
    const Image gray = to_grayscale(image);
    const std::size_t h = gray.height();
    const std::size_t w = gray.width();
    auto pixel = [&](std::ptrdiff_t y, std::ptrdiff_t x) {
        return 255.0 * static_cast<double>(gray.at(reflect_index(y, h), reflect_index(x, w), 0));
    };
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t yy = 0; yy < h; ++yy) {
        for (std::size_t xx = 0; xx < w; ++xx) {
            const auto y = static_cast<std::ptrdiff_t>(yy);
            const auto x = static_cast<std::ptrdiff_t>(xx);
            const double response =
                pixel(y - 1, x) + pixel(y + 1, x) + pixel(y, x - 1) + pixel(y, x + 1) - 4.0 * pixel(y, x);
            sum += response;
            sum_sq += response * response;
        }
    }
    const double n = static_cast<double>(h * w);
    const double mean = sum / n;
    return std::max(0.0, sum_sq / n - mean * mean);
}

std::vector<Patch> extract_patches(const Image& image, std::size_t patch, std::size_t count, std::uint64_t seed) {
    if (patch == 0 || patch > std::min(image.height(), image.width())) {
        throw std::invalid_argument("extract_patches: patch size " + std::to_string(patch) + " does not fit " +
                                    to_string(image.size2()));
    }
    std::mt19937_64 engine(seed);
    std::uniform_int_distribution<std::size_t> rows(0, image.height() - patch);
    std::uniform_int_distribution<std::size_t> cols(0, image.width() - patch);
    std::vector<Patch> patches;
    patches.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Patch p;
        p.top = rows(engine);
        p.left = cols(engine);
        p.image = Image(patch, patch, image.channels());
        for (std::size_t y = 0; y < patch; ++y)
            for (std::size_t x = 0; x < patch; ++x)
                for (std::size_t c = 0; c < image.channels(); ++c)
                    p.image.at(y, x, c) = image.at(p.top + y, p.left + x, c);
        patches.push_back(std::move(p));
    }
    return patches;
}

double low_frequency_correlation(const Image& a, const Image& b, const WaveletFamily& family) {
    if (a.shape() != b.shape()) {
        throw std::invalid_argument("low_frequency_correlation: shape mismatch");
    }
    const auto la = dwt2(a, family).approx.values;
    const auto lb = dwt2(b, family).approx.values;
    const double n = static_cast<double>(la.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < la.size(); ++i) {
        ma += la[i];
        mb += lb[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < la.size(); ++i) {
        cov += (la[i] - ma) * (lb[i] - mb);
        va += (la[i] - ma) * (la[i] - ma);
        vb += (lb[i] - mb) * (lb[i] - mb);
    }
    if (va == 0.0 || vb == 0.0) {
        return 0.0;
    }
    return cov / std::sqrt(va * vb);
}

nlohmann::json MetricReport::to_json() const {
    auto optional_number = [](const std::optional<double>& v) -> nlohmann::json {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : images) {
        nlohmann::json r = {{"path", row.path}};
        if (row.entropy) r["entropy"] = *row.entropy;
        if (row.mvol) r["mvol"] = *row.mvol;
        rows.push_back(std::move(r));
    }
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : errors) {
        failures.push_back({{"path", f.path}, {"error", f.error}});
    }
    return {
        {"images", std::move(rows)},
        {"mean_entropy", optional_number(mean_entropy)},
        {"mean_mvol", optional_number(mean_mvol)},
        {"errors", std::move(failures)},
    };
}

MetricReport dataset_report(std::vector<std::filesystem::path> paths, MetricSelection selection) {
    std::sort(paths.begin(), paths.end());
    MetricReport report;
    double entropy_sum = 0.0;
    double mvol_sum = 0.0;
    for (const auto& path : paths) {
        MetricReport::Row row{path.string(), std::nullopt, std::nullopt};
        try {
            const Image image = read_png(path);
            if (selection.entropy) row.entropy = entropy(image);
            if (selection.mvol) row.mvol = variance_of_laplacian(image);
        } catch (const std::exception& e) {
            report.errors.push_back({path.string(), e.what()});
            continue;
        }
        entropy_sum += row.entropy.value_or(0.0);
        mvol_sum += row.mvol.value_or(0.0);
        report.images.push_back(std::move(row));
    }
    if (!report.images.empty()) {
        const double n = static_cast<double>(report.images.size());
        if (selection.entropy) report.mean_entropy = entropy_sum / n;
        if (selection.mvol) report.mean_mvol = mvol_sum / n;
    }
    return report;
}

std::vector<std::filesystem::path> list_png_files(const std::filesystem::path& directory) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(directory)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext == ".png") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace wavelift
