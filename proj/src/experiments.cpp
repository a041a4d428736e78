// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#include "wavelift/experiments.hpp"

#include <algorithm>
#include <stdexcept>

#include "wavelift/errors.hpp"
#include "wavelift/image_ops.hpp"
#include "wavelift/metrics.hpp"
#include "wavelift/png_io.hpp"

namespace wavelift {
namespace {

Image band_image(const Subband& band, double scale, double offset) {
    Image out(band.height, band.width, band.channels);
    auto dst = out.values();
    for (std::size_t i = 0; i < band.values.size(); ++i) {
        dst[i] = static_cast<float>(std::clamp(band.values[i] * scale + offset, 0.0, 1.0));
    }
    return out;
}

Image down_up(const Image& image) {
    const std::size_t h = std::max<std::size_t>(1, image.height() / 2);
    const std::size_t w = std::max<std::size_t>(1, image.width() / 2);
    const Image small = interpolate(image, h, w, Interpolation::bilinear);
    return interpolate(small, image.height(), image.width(), Interpolation::bilinear);
}

class GuideImageSource final : public TextToImage {
public:
    explicit GuideImageSource(Image guide) : guide_(std::move(guide)) {}

    Image txt2img(const Conditioning&, std::size_t height, std::size_t width, std::size_t, std::uint64_t) override {
        if (height <= guide_.height() && width <= guide_.width()) return resize_area(guide_, height, width);
        return interpolate(guide_, height, width, Interpolation::bilinear);
    }

private:
    Image guide_;
};

}  // namespace

BackendSpec parse_backend_spec(std::string_view text) {
    BackendSpec spec;
    if (text == "analytic") return spec;
    if (text.starts_with("analytic:")) {
        const auto path = text.substr(9);
        if (path.empty()) throw ConfigError("backend 'analytic:' needs an image path");
        spec.guide_path = std::string(path);
        return spec;
    }
    if (text.starts_with("remote:")) {
        const auto url = text.substr(7);
        if (url.empty()) throw ConfigError("backend 'remote:' needs a URL");
        spec.kind = BackendSpec::Kind::remote;
        spec.url = std::string(url);
        return spec;
    }
    throw ConfigError("unknown backend '" + std::string(text) + "' (expected analytic, analytic:<png> or remote:<url>)");
}

OwnedBackend OwnedBackend::create(const BackendSpec& spec, double analytic_variance) {
    OwnedBackend owned;
    if (spec.kind == BackendSpec::Kind::remote) {
        RemoteOptions options;
        options.endpoint = spec.url;
        owned.remote_ = std::make_unique<RemoteBackend>(std::move(options));
        owned.denoiser_ = owned.remote_.get();
        owned.codec_ = owned.remote_.get();
        owned.txt2img_ = owned.remote_.get();
        return owned;
    }
    if (!(analytic_variance > 0.0)) {
        throw ConfigError("analytic prior variance must be positive");
    }
    std::optional<Image> guide;
    if (spec.guide_path) {
        guide = read_png(*spec.guide_path);
        owned.guide_source_ = std::make_unique<GuideImageSource>(*guide);
        owned.txt2img_ = owned.guide_source_.get();
    }
    owned.analytic_ = std::make_unique<GuideImageDenoiser>(std::move(guide), analytic_variance);
    owned.identity_ = std::make_unique<IdentityCodec>();
    owned.denoiser_ = owned.analytic_.get();
    owned.codec_ = owned.identity_.get();
    return owned;
}

std::vector<ToyRow> run_toy_experiment(const std::vector<Image>& images, const ToyOptions& options,
                                       Denoiser* denoiser, LatentCodec& codec) {
    if (images.empty()) {
        throw std::invalid_argument("toy experiment needs at least one image");
    }
    PipelineConfig config = options.config;
    config.guidance_enabled = false;
    config.sharpen_enabled = false;
    const SigmaSchedule schedule = config.schedule();

    std::vector<ToyRow> rows;
    for (const auto name : kToyVariants) rows.push_back({std::string(name), 0.0, 0.0, 0});

    for (std::size_t i = 0; i < images.size(); ++i) {
        const Image& image = images[i];
        const Image blurred = gaussian_blur(image, options.degrade_sigma);
        const Image downup = down_up(image);
        const Image variants[4] = {
            clamp_unit(blurred),
            sharpen(blurred, config.alpha, config.blur_sigma),
            downup,
            sharpen(downup, config.alpha, config.blur_sigma),
        };
        StageOptions stage_options;
        stage_options.stage_index = i;
        for (std::size_t v = 0; v < 4; ++v) {
            std::optional<AnalyticGaussianDenoiser> self_prior;
            if (denoiser == nullptr) {
                Latent mu = codec.encode(variants[v]);
                Latent var(mu.shape(), static_cast<float>(options.self_prior_variance));
                self_prior.emplace(std::move(mu), std::move(var));
            }
            Denoiser& active = denoiser ? *denoiser : static_cast<Denoiser&>(*self_prior);
            const StageResult result =
                run_stage(variants[v], variants[v].size2(), config, active, codec, schedule, stage_options);
            rows[v].mean_entropy += result.report.entropy;
            rows[v].mean_mvol += result.report.mvol;
            ++rows[v].images;
        }
    }
    for (auto& row : rows) {
        row.mean_entropy /= static_cast<double>(row.images);
        row.mean_mvol /= static_cast<double>(row.images);
    }
    return rows;
}

nlohmann::json toy_rows_to_json(const std::vector<ToyRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : rows) {
        out.push_back({{"variant", row.variant},
                       {"mean_entropy", row.mean_entropy},
                       {"mean_mvol", row.mean_mvol},
                       {"images", row.images}});
    }
    return out;
}

std::vector<SweepRow> run_alpha_sweep(const PipelineInput& input, const PipelineConfig& config,
                                      const std::vector<double>& alphas, Backend backend) {
    if (alphas.empty()) {
        throw std::invalid_argument("alpha sweep needs at least one alpha");
    }
    std::vector<double> distinct;
    for (const double a : alphas) {
        if (std::find(distinct.begin(), distinct.end(), a) == distinct.end()) distinct.push_back(a);
    }
    std::vector<SweepRow> rows;
    for (const double alpha : distinct) {
        PipelineConfig run_config = config;
        run_config.alpha = alpha;
        run_config.sharpen_enabled = true;
        PipelineResult result = run_pipeline(input, run_config, backend);
        SweepRow row;
        row.alpha = alpha;
        row.output = result.final_image();
        row.entropy = entropy(row.output);
        row.mvol = variance_of_laplacian(row.output);
        row.reference_mvol = result.reports.empty() ? row.mvol : result.reports.front().reference_mvol;
        row.reports = std::move(result.reports);
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json sweep_rows_to_json(const std::vector<SweepRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : rows) {
        out.push_back({{"alpha", row.alpha},
                       {"entropy", row.entropy},
                       {"mvol", row.mvol},
                       {"reference_mvol", row.reference_mvol}});
    }
    return out;
}

Image contact_sheet(const std::vector<Image>& images, std::size_t gap) {
    if (images.empty()) {
        throw std::invalid_argument("contact_sheet: no images");
    }
    const std::size_t channels = images.front().channels();
    std::size_t height = 0;
    std::size_t width = 0;
    for (const auto& image : images) {
        if (image.channels() != channels) {
            throw std::invalid_argument("contact_sheet: channel counts differ");
        }
        height = std::max(height, image.height());
        width += image.width();
    }
    width += gap * (images.size() - 1);
    Image sheet(height, width, channels, 1.0f);
    std::size_t left = 0;
    for (const auto& image : images) {
        for (std::size_t y = 0; y < image.height(); ++y)
            for (std::size_t x = 0; x < image.width(); ++x)
                for (std::size_t c = 0; c < channels; ++c) sheet.at(y, left + x, c) = image.at(y, x, c);
        left += image.width() + gap;
    }
    return sheet;
}

DwtInspection inspect_dwt(const Image& image, const WaveletFamily& family) {
    const DwtCoeffs coeffs = dwt2(image, family);
    DwtInspection out;
    out.approx = band_image(coeffs.approx, 0.5, 0.0);
    out.detail_h = band_image(coeffs.detail_h, 1.0, 0.5);
    out.detail_v = band_image(coeffs.detail_v, 1.0, 0.5);
    out.detail_d = band_image(coeffs.detail_d, 1.0, 0.5);
    out.roundtrip = idwt2(coeffs);
    out.max_roundtrip_error = max_abs_diff(out.roundtrip, image);
    out.energies = {coeffs.approx.energy(), coeffs.detail_h.energy(), coeffs.detail_v.energy(),
                    coeffs.detail_d.energy()};
    return out;
}

}  // namespace wavelift
