// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

// wavelift command-line front end.
// Exit codes: 0 success, 1 usage or configuration error, 2 runtime failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wavelift/config_io.hpp"
#include "wavelift/errors.hpp"
#include "wavelift/experiments.hpp"
#include "wavelift/metrics.hpp"
#include "wavelift/pipeline.hpp"
#include "wavelift/png_io.hpp"
#include "wavelift/synthetic.hpp"

namespace fs = std::filesystem;
using namespace wavelift;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flags that map onto PipelineConfig. Values apply only when given on the
/// command line, so they override a --config file field by field.
struct PipelineFlags {
    std::string config_path;
    std::string ladder;
    std::size_t tau = 0;
    std::size_t delta = 0;
    double alpha = 0.0;
    double blur_sigma = 0.0;
    std::size_t steps = 0;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double rho = 0.0;
    std::string wavelet;
    std::string interpolation;
    std::uint64_t seed = 0;
    bool no_guidance = false;
    bool no_sharpen = false;

    std::string backend = "analytic";
    double analytic_var = 1.0;
    std::string report;

    std::vector<std::pair<std::string, CLI::Option*>> options;
};

void add_backend_flags(CLI::App* app, PipelineFlags& f) {
    app->add_option("--backend", f.backend, "analytic | analytic:<png> | remote:<url>")
        ->envname("WAVELIFT_BACKEND")
        ->capture_default_str();
    app->add_option("--analytic-var", f.analytic_var, "Prior variance of the analytic backend")
        ->capture_default_str();
}

void add_pipeline_flags(CLI::App* app, PipelineFlags& f, bool with_ladder) {
    auto track = [&](const char* key, CLI::Option* opt) { f.options.emplace_back(key, opt); };
    app->add_option("--config", f.config_path, "JSON file with PipelineConfig fields")->check(CLI::ExistingFile);
    if (with_ladder) track("ladder", app->add_option("--ladder", f.ladder, "Resolutions, e.g. 1024x1024,2048x2048"));
    track("tau", app->add_option("--tau", f.tau, "Denoising steps re-run per stage (default 15)"));
    track("delta", app->add_option("--delta", f.delta, "Leading steps with low-band guidance (default 5)"));
    track("alpha", app->add_option("--alpha", f.alpha, "Sharpness factor (default 1.0)"));
    track("blur_sigma", app->add_option("--blur-sigma", f.blur_sigma, "Unsharp-mask blur sigma (default 2.0)"));
    track("num_steps", app->add_option("--steps", f.steps, "Schedule length N (default 50)"));
    track("sigma_min", app->add_option("--sigma-min", f.sigma_min, "Smallest nonzero noise level (default 0.002)"));
    track("sigma_max", app->add_option("--sigma-max", f.sigma_max, "Largest noise level (default 80)"));
    track("rho", app->add_option("--rho", f.rho, "Schedule curvature (default 7)"));
    track("wavelet", app->add_option("--wavelet", f.wavelet, "haar | db2"));
    track("interpolation", app->add_option("--interpolation", f.interpolation, "bilinear | bicubic | nearest"));
    track("seed", app->add_option("--seed", f.seed, "Base seed (default 0)"));
    track("guidance_enabled", app->add_flag("--no-guidance", f.no_guidance, "Disable low-band guidance"));
    track("sharpen_enabled", app->add_flag("--no-sharpen", f.no_sharpen, "Disable sharpening"));
    add_backend_flags(app, f);
    app->add_option("--report", f.report, "JSON-lines stage report (default <output stem>.report.jsonl)");
}

PipelineConfig resolve_config(const PipelineFlags& f) {
    PipelineConfig config = f.config_path.empty() ? PipelineConfig{} : load_config(f.config_path);
    nlohmann::json overrides = nlohmann::json::object();
    for (const auto& [key, opt] : f.options) {
        if (opt->count() == 0) continue;
        if (key == "ladder") overrides[key] = f.ladder;
        else if (key == "tau") overrides[key] = f.tau;
        else if (key == "delta") overrides[key] = f.delta;
        else if (key == "alpha") overrides[key] = f.alpha;
        else if (key == "blur_sigma") overrides[key] = f.blur_sigma;
        else if (key == "num_steps") overrides[key] = f.steps;
        else if (key == "sigma_min") overrides[key] = f.sigma_min;
        else if (key == "sigma_max") overrides[key] = f.sigma_max;
        else if (key == "rho") overrides[key] = f.rho;
        else if (key == "wavelet") overrides[key] = f.wavelet;
        else if (key == "interpolation") overrides[key] = f.interpolation;
        else if (key == "seed") overrides[key] = f.seed;
        else if (key == "guidance_enabled") overrides[key] = !f.no_guidance;
        else if (key == "sharpen_enabled") overrides[key] = !f.no_sharpen;
    }
    merge_config(config, overrides);
    if (!overrides.contains("delta") && config.delta > config.tau) {
        std::cerr << "warning: delta " << config.delta << " lowered to tau " << config.tau << '\n';
        config.delta = config.tau;
    }
    return config;
}

fs::path sibling(const fs::path& output, const std::string& suffix) {
    return output.parent_path() / (output.stem().string() + suffix);
}

void warn_config(const PipelineConfig& config) {
    for (const auto& note : config.warnings()) std::cerr << "warning: " << note << '\n';
}

void write_run(const PipelineResult& result, const fs::path& output, const std::string& report_flag) {
    if (!output.parent_path().empty()) fs::create_directories(output.parent_path());
    write_png(sibling(output, ".stage0.png"), result.base);
    for (std::size_t k = 0; k < result.stages.size(); ++k) {
        write_png(sibling(output, ".stage" + std::to_string(k + 1) + ".png"), result.stages[k]);
    }
    write_png(output, result.final_image());
    const fs::path report = report_flag.empty() ? sibling(output, ".report.jsonl") : fs::path(report_flag);
    write_reports_jsonl(report, result.reports);
    for (const auto& r : result.reports) {
        std::cerr << "stage " << r.stage_index << ": " << to_string(r.input_size) << " -> "
                  << to_string(r.output_size) << "  " << r.denoiser_calls << " denoiser calls, "
                  << r.guidance_steps << " guided, mVoL " << r.mvol << ", " << r.total_ms << " ms\n";
    }
}

Size2 enhance_target(const Size2& input, double scale, const std::string& target) {
    if (!target.empty()) return parse_size(target);
    if (!(scale >= 1.0)) throw UsageError("--scale must be >= 1");
    return {static_cast<std::size_t>(std::lround(static_cast<double>(input.height) * scale)),
            static_cast<std::size_t>(std::lround(static_cast<double>(input.width) * scale))};
}

std::vector<Size2> enhance_ladder(const Size2& input, double scale, const std::string& target) {
    const Size2 to = enhance_target(input, scale, target);
    try {
        return build_ladder(input, to);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::vector<double> parse_alphas(const std::string& text) {
    std::vector<double> alphas;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            const double a = std::stod(item, &used);
            if (used != item.size() || !(a >= 0.0)) throw std::invalid_argument(item);
            alphas.push_back(a);
        } catch (const std::exception&) {
            throw UsageError("invalid alpha '" + item + "'");
        }
    }
    if (alphas.empty()) throw UsageError("--alphas needs at least one value");
    return alphas;
}

void print_exception(const std::exception& e, int depth = 0) {
    std::cerr << (depth == 0 ? "error: " : "  caused by: ") << e.what() << '\n';
    try {
        std::rethrow_if_nested(e);
    } catch (const std::exception& inner) {
        print_exception(inner, depth + 1);
    } catch (...) {
    }
}

std::string format_alpha(double alpha) {
    std::ostringstream s;
    s << alpha;
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavelift: progressive high-resolution synthesis with wavelet-guided denoising"};
    app.require_subcommand(1);

    // generate
    PipelineFlags gen;
    std::string gen_prompt, gen_negative, gen_output;
    double gen_guidance_scale = 1.0;
    auto* generate = app.add_subcommand("generate", "Run the progressive pipeline from a prompt or guide image");
    generate->add_option("--prompt", gen_prompt, "Text prompt (forwarded to the backend)");
    generate->add_option("--negative-prompt", gen_negative, "Negative prompt");
    generate->add_option("--guidance-scale", gen_guidance_scale, "Classifier-free guidance scale")->capture_default_str();
    generate->add_option("--output", gen_output, "Final PNG")->required();
    add_pipeline_flags(generate, gen, true);

    // enhance
    PipelineFlags enh;
    std::string enh_input, enh_output, enh_target, enh_prompt;
    double enh_scale = 2.0;
    auto* enhance = app.add_subcommand("enhance", "Upscale an existing image through a x2 ladder");
    enhance->add_option("--input", enh_input, "Input PNG")->required()->check(CLI::ExistingFile);
    auto* enh_scale_opt = enhance->add_option("--scale", enh_scale, "Overall scale factor")->capture_default_str();
    enhance->add_option("--target", enh_target, "Target size HxW")->excludes(enh_scale_opt);
    enhance->add_option("--prompt", enh_prompt, "Text prompt (forwarded to the backend)");
    enhance->add_option("--output", enh_output, "Final PNG")->required();
    add_pipeline_flags(enhance, enh, false);

    // toy-experiment
    PipelineFlags toy;
    std::string toy_dir, toy_report;
    std::size_t toy_synthetic = 0, toy_size = 128;
    double toy_degrade = 2.0;
    auto* toy_cmd = app.add_subcommand("toy-experiment", "Blur / down-up degradations with and without sharpening");
    auto* toy_dir_opt = toy_cmd->add_option("--input-dir", toy_dir, "Directory of PNGs");
    toy_cmd->add_option("--synthetic", toy_synthetic, "Use N procedural images instead of --input-dir")
        ->excludes(toy_dir_opt);
    toy_cmd->add_option("--size", toy_size, "Side of the procedural images")->capture_default_str();
    toy_cmd->add_option("--degrade-sigma", toy_degrade, "Blur sigma of the Gaussian degradation")
        ->capture_default_str();
    toy_cmd->add_option("--out-report", toy_report, "JSON report path (default: stdout)");
    double toy_prior_var = ToyOptions{}.self_prior_variance;
    toy_cmd->add_option("--prior-var", toy_prior_var,
                        "Variance of the analytic prior centred on each degraded input")
        ->capture_default_str();
    add_pipeline_flags(toy_cmd, toy, false);

    // sweep-alpha
    PipelineFlags swp;
    std::string swp_input, swp_outdir, swp_alphas, swp_target;
    double swp_scale = 2.0;
    auto* sweep = app.add_subcommand("sweep-alpha", "Enhance once per sharpness factor and compare");
    sweep->add_option("--alphas", swp_alphas, "Comma-separated sharpness factors")->required();
    sweep->add_option("--input", swp_input, "Input PNG")->required()->check(CLI::ExistingFile);
    auto* swp_scale_opt = sweep->add_option("--scale", swp_scale, "Overall scale factor")->capture_default_str();
    sweep->add_option("--target", swp_target, "Target size HxW")->excludes(swp_scale_opt);
    sweep->add_option("--outdir", swp_outdir, "Output directory")->required();
    add_pipeline_flags(sweep, swp, false);

    // dwt-inspect
    std::string dwt_input, dwt_outdir, dwt_wavelet = "haar";
    auto* dwt_cmd = app.add_subcommand("dwt-inspect", "Dump single-level DWT bands as PNGs");
    dwt_cmd->add_option("--input", dwt_input, "Input PNG")->required();
    dwt_cmd->add_option("--wavelet", dwt_wavelet, "haar | db2")->capture_default_str();
    dwt_cmd->add_option("--outdir", dwt_outdir, "Output directory")->required();

    // metrics
    std::vector<std::string> met_paths;
    std::string met_dir, met_output;
    bool met_no_entropy = false, met_no_mvol = false;
    auto* met_cmd = app.add_subcommand("metrics", "Entropy and variance of Laplacian over PNG files");
    met_cmd->add_option("paths", met_paths, "PNG files");
    met_cmd->add_option("--input-dir", met_dir, "Directory of PNGs")->check(CLI::ExistingDirectory);
    met_cmd->add_option("--output", met_output, "JSON report path (default: stdout)");
    met_cmd->add_flag("--no-entropy", met_no_entropy, "Skip entropy");
    met_cmd->add_flag("--no-mvol", met_no_mvol, "Skip variance of Laplacian");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (generate->parsed()) {
            PipelineConfig config = resolve_config(gen);
            config.validate();
            warn_config(config);
            OwnedBackend owned = OwnedBackend::create(parse_backend_spec(gen.backend), gen.analytic_var);
            PipelineInput input;
            input.conditioning.prompt = gen_prompt;
            input.conditioning.negative_prompt = gen_negative;
            input.conditioning.guidance_scale = gen_guidance_scale;
            const PipelineResult result = run_pipeline(input, config, owned.view());
            write_run(result, gen_output, gen.report);
        } else if (enhance->parsed()) {
            PipelineConfig config = resolve_config(enh);
            PipelineInput input;
            input.image = read_png(enh_input);
            input.conditioning.prompt = enh_prompt;
            config.ladder = enhance_ladder(input.image->size2(), enh_scale, enh_target);
            config.validate();
            warn_config(config);
            OwnedBackend owned = OwnedBackend::create(parse_backend_spec(enh.backend), enh.analytic_var);
            const PipelineResult result = run_pipeline(input, config, owned.view());
            write_run(result, enh_output, enh.report);
        } else if (toy_cmd->parsed()) {
            ToyOptions options;
            options.config = resolve_config(toy);
            options.degrade_sigma = toy_degrade;
            options.self_prior_variance = toy_prior_var;
            std::vector<Image> images;
            if (toy_synthetic > 0) {
                images = synthetic_set(toy_synthetic, toy_size, toy_size, 3, options.config.seed);
            } else {
                if (toy_dir.empty()) throw UsageError("toy-experiment needs --input-dir or --synthetic");
                if (!fs::is_directory(toy_dir)) throw UsageError("not a directory: " + toy_dir);
                for (const auto& path : list_png_files(toy_dir)) images.push_back(read_png(path));
                if (images.empty()) throw UsageError("no PNG files in " + toy_dir);
            }
            PipelineConfig check = options.config;
            check.ladder = {{1, 1}};
            check.validate();
            const BackendSpec spec = parse_backend_spec(toy.backend);
            if (spec.kind == BackendSpec::Kind::analytic && spec.guide_path) {
                throw UsageError("toy-experiment takes 'analytic' or 'remote:<url>'; a guide image does not apply");
            }
            OwnedBackend owned = OwnedBackend::create(spec, toy.analytic_var);
            Backend backend = owned.view();
            const auto rows = run_toy_experiment(images, options, owned.is_remote() ? &backend.denoiser : nullptr,
                                                 backend.codec);
            nlohmann::json doc = {{"tau", options.config.tau},
                                  {"alpha", options.config.alpha},
                                  {"blur_sigma", options.config.blur_sigma},
                                  {"degrade_sigma", options.degrade_sigma},
                                  {"images", images.size()},
                                  {"variants", toy_rows_to_json(rows)}};
            if (toy_report.empty()) {
                std::cout << doc.dump(2) << '\n';
            } else {
                std::ofstream(toy_report) << doc.dump(2) << '\n';
            }
            for (const auto& row : rows) {
                std::fprintf(stderr, "%-24s entropy %.4f  mVoL %.2f\n", row.variant.c_str(), row.mean_entropy,
                             row.mean_mvol);
            }
        } else if (sweep->parsed()) {
            PipelineConfig config = resolve_config(swp);
            const std::vector<double> alphas = parse_alphas(swp_alphas);
            PipelineInput input;
            input.image = read_png(swp_input);
            config.ladder = enhance_ladder(input.image->size2(), swp_scale, swp_target);
            config.validate();
            warn_config(config);
            OwnedBackend owned = OwnedBackend::create(parse_backend_spec(swp.backend), swp.analytic_var);
            const auto rows = run_alpha_sweep(input, config, alphas, owned.view());
            fs::create_directories(swp_outdir);
            std::vector<Image> outputs;
            std::vector<StageReport> reports;
            for (const auto& row : rows) {
                write_png(fs::path(swp_outdir) / ("alpha_" + format_alpha(row.alpha) + ".png"), row.output);
                outputs.push_back(row.output);
                reports.insert(reports.end(), row.reports.begin(), row.reports.end());
            }
            write_png(fs::path(swp_outdir) / "contact_sheet.png", contact_sheet(outputs));
            std::ofstream(fs::path(swp_outdir) / "sweep.json") << sweep_rows_to_json(rows).dump(2) << '\n';
            write_reports_jsonl(swp.report.empty() ? fs::path(swp_outdir) / "report.jsonl" : fs::path(swp.report),
                                reports);
            for (const auto& row : rows) {
                std::fprintf(stderr, "alpha %-6s entropy %.4f  mVoL %.2f  sharpened-input mVoL %.2f\n",
                             format_alpha(row.alpha).c_str(), row.entropy, row.mvol, row.reference_mvol);
            }
        } else if (dwt_cmd->parsed()) {
            WaveletFamily family = WaveletFamily::haar();
            try {
                family = WaveletFamily::from_name(dwt_wavelet);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const DwtInspection inspection = inspect_dwt(read_png(dwt_input), family);
            const fs::path dir(dwt_outdir);
            fs::create_directories(dir);
            write_png(dir / "approx.png", inspection.approx);
            write_png(dir / "detail_h.png", inspection.detail_h);
            write_png(dir / "detail_v.png", inspection.detail_v);
            write_png(dir / "detail_d.png", inspection.detail_d);
            write_png(dir / "roundtrip.png", inspection.roundtrip);
            std::printf("max_roundtrip_error %.3e\n", inspection.max_roundtrip_error);
            std::printf("energy approx %.6g detail_h %.6g detail_v %.6g detail_d %.6g\n", inspection.energies[0],
                        inspection.energies[1], inspection.energies[2], inspection.energies[3]);
        } else if (met_cmd->parsed()) {
            std::vector<fs::path> paths(met_paths.begin(), met_paths.end());
            if (!met_dir.empty()) {
                const auto listed = list_png_files(met_dir);
                paths.insert(paths.end(), listed.begin(), listed.end());
            }
            const MetricReport report = dataset_report(paths, {!met_no_entropy, !met_no_mvol});
            const std::string json = report.to_json().dump(2);
            if (met_output.empty()) {
                std::cout << json << '\n';
            } else {
                std::ofstream(met_output) << json << '\n';
            }
            for (const auto& failure : report.errors) {
                std::cerr << "warning: " << failure.path << ": " << failure.error << '\n';
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        print_exception(e);
        return kExitRuntime;
    }
    return 0;
}
