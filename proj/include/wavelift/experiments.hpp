// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wavelift/denoiser.hpp"
#include "wavelift/pipeline.hpp"
#include "wavelift/remote.hpp"
#include "wavelift/wavelet.hpp"

namespace wavelift {

// ---------------------------------------------------------------- backends

/// Textual backend selector:
///   "analytic"          Gaussian prior, zero latent mean (mid gray)
///   "analytic:<png>"    Gaussian prior whose mean is the image, resampled per shape;
///                       its text-to-image ignores the prompt and returns the image
///                       resampled to the requested size
///   "remote:<url>"      model server
struct BackendSpec {
    enum class Kind { analytic, remote };
    Kind kind = Kind::analytic;
    std::optional<std::string> guide_path;
    std::string url;
};

/// Throws ConfigError on an unrecognised spec.
BackendSpec parse_backend_spec(std::string_view text);

/// Owns the objects a Backend view points into.
class OwnedBackend {
public:
    /// `analytic_variance` is the per-element prior variance of analytic backends.
    static OwnedBackend create(const BackendSpec& spec, double analytic_variance = 1.0);

    Backend view() { return Backend{*denoiser_, *codec_, txt2img_}; }
    bool is_remote() const noexcept { return remote_ != nullptr; }

private:
    std::unique_ptr<Denoiser> analytic_;
    std::unique_ptr<LatentCodec> identity_;
    std::unique_ptr<TextToImage> guide_source_;
    std::unique_ptr<RemoteBackend> remote_;
    Denoiser* denoiser_ = nullptr;
    LatentCodec* codec_ = nullptr;
    TextToImage* txt2img_ = nullptr;
};

// ---------------------------------------------------------- toy experiment

struct ToyOptions {
    /// tau, alpha, blur_sigma, schedule and seed are taken from here;
    /// guidance and the ladder are ignored.
    PipelineConfig config;
    /// Strength of the Gaussian-blur degradation.
    double degrade_sigma = 2.0;
    /// Prior variance of the self-centred analytic denoiser (see run_toy_experiment).
    double self_prior_variance = 1e-4;
};

struct ToyRow {
    std::string variant;
    double mean_entropy = 0.0;
    double mean_mvol = 0.0;
    std::size_t images = 0;
};

/// Variant names in report order.
inline constexpr std::array<std::string_view, 4> kToyVariants{"Gaussian Blur", "Gaussian Blur + Sharp", "DownUp",
                                                              "DownUp + Sharp"};

/// Degrades every image two ways (Gaussian blur; bilinear x0.5 then x2),
/// optionally sharpens, then noises to sigma[N - tau] and denoises tau steps
/// at the same size. All four variants of image i share the noise seed
/// config.seed + i. Returns one row per entry of kToyVariants.
///
/// A null `denoiser` selects the analytic stand-in: a Gaussian prior centred
/// on encode(variant) with variance options.self_prior_variance. A zero-mean
/// iid prior would instead replace every image by prior samples (noise).
std::vector<ToyRow> run_toy_experiment(const std::vector<Image>& images, const ToyOptions& options,
                                       Denoiser* denoiser, LatentCodec& codec);

nlohmann::json toy_rows_to_json(const std::vector<ToyRow>& rows);

// ------------------------------------------------------------- alpha sweep

struct SweepRow {
    double alpha = 0.0;
    double entropy = 0.0;
    double mvol = 0.0;
    /// mVoL of the first stage's sharpened interpolation.
    double reference_mvol = 0.0;
    Image output;
    std::vector<StageReport> reports;
};

/// One full pipeline run per distinct alpha (first occurrence order), with
/// sharpening enabled. Throws std::invalid_argument on an empty list.
std::vector<SweepRow> run_alpha_sweep(const PipelineInput& input, const PipelineConfig& config,
                                      const std::vector<double>& alphas, Backend backend);

nlohmann::json sweep_rows_to_json(const std::vector<SweepRow>& rows);

/// Images placed left to right with `gap` white columns between them;
/// shorter images are top-aligned on white.
Image contact_sheet(const std::vector<Image>& images, std::size_t gap = 4);

// -------------------------------------------------------------- dwt inspect

struct DwtInspection {
    Image approx;    ///< approx / 2
    Image detail_h;  ///< detail + 0.5
    Image detail_v;
    Image detail_d;
    Image roundtrip;
    double max_roundtrip_error = 0.0;
    std::array<double, 4> energies{};  ///< approx, detail_h, detail_v, detail_d
};

/// Visualisable bands (clamped to [0, 1]) plus reconstruction error.
DwtInspection inspect_dwt(const Image& image, const WaveletFamily& family);

}  // namespace wavelift
