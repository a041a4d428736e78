// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#include "wavelift/config_io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "wavelift/errors.hpp"

namespace wavelift {
namespace {

std::size_t parse_dimension(std::string_view text, std::string_view context) {
    std::size_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end || value == 0) {
        throw ConfigError("invalid dimension '" + std::string(text) + "' in '" + std::string(context) + "'");
    }
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

template <class T>
T get_as(const nlohmann::json& value, const std::string& key) {
    try {
        return value.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("config field '" + key + "' has the wrong type");
    }
}

std::size_t get_count(const nlohmann::json& value, const std::string& key) {
    if (!value.is_number_integer() || value.get<long long>() < 0) {
        throw ConfigError("config field '" + key + "' must be a non-negative integer");
    }
    return value.get<std::size_t>();
}

}  // namespace

Size2 parse_size(std::string_view text) {
    text = trim(text);
    const auto x = text.find_first_of("xX");
    if (x == std::string_view::npos) {
        const std::size_t side = parse_dimension(text, text);
        return {side, side};
    }
    return {parse_dimension(text.substr(0, x), text), parse_dimension(text.substr(x + 1), text)};
}

std::vector<Size2> parse_ladder(std::string_view text) {
    std::vector<Size2> ladder;
    while (true) {
        const auto comma = text.find(',');
        const std::string_view item = trim(text.substr(0, comma));
        if (item.find_first_of("xX") == std::string_view::npos) {
            throw ConfigError("ladder entry '" + std::string(item) + "' must be HEIGHTxWIDTH");
        }
        ladder.push_back(parse_size(item));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return ladder;
}

std::string format_ladder(const std::vector<Size2>& ladder) {
    std::string out;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (i) out += ',';
        out += to_string(ladder[i]);
    }
    return out;
}

nlohmann::json config_to_json(const PipelineConfig& config) {
    nlohmann::json ladder = nlohmann::json::array();
    for (const Size2& rung : config.ladder) ladder.push_back({rung.height, rung.width});
    return {
        {"ladder", std::move(ladder)},
        {"tau", config.tau},
        {"delta", config.delta},
        {"alpha", config.alpha},
        {"blur_sigma", config.blur_sigma},
        {"num_steps", config.num_steps},
        {"sigma_min", config.sigma_min},
        {"sigma_max", config.sigma_max},
        {"rho", config.rho},
        {"wavelet", config.wavelet.name()},
        {"interpolation", to_string(config.interpolation)},
        {"seed", config.seed},
        {"guidance_enabled", config.guidance_enabled},
        {"sharpen_enabled", config.sharpen_enabled},
    };
}

void merge_config(PipelineConfig& config, const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw ConfigError("config document must be a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
        if (key == "ladder") {
            if (value.is_string()) {
                config.ladder = parse_ladder(value.get<std::string>());
                continue;
            }
            if (!value.is_array()) throw ConfigError("config field 'ladder' must be an array or string");
            std::vector<Size2> ladder;
            for (const auto& rung : value) {
                if (!rung.is_array() || rung.size() != 2) {
                    throw ConfigError("ladder entries must be [height, width]");
                }
                ladder.push_back({get_count(rung[0], "ladder"), get_count(rung[1], "ladder")});
            }
            config.ladder = std::move(ladder);
        } else if (key == "tau") {
            config.tau = get_count(value, key);
        } else if (key == "delta") {
            config.delta = get_count(value, key);
        } else if (key == "num_steps") {
            config.num_steps = get_count(value, key);
        } else if (key == "seed") {
            config.seed = get_count(value, key);
        } else if (key == "alpha") {
            config.alpha = get_as<double>(value, key);
        } else if (key == "blur_sigma") {
            config.blur_sigma = get_as<double>(value, key);
        } else if (key == "sigma_min") {
            config.sigma_min = get_as<double>(value, key);
        } else if (key == "sigma_max") {
            config.sigma_max = get_as<double>(value, key);
        } else if (key == "rho") {
            config.rho = get_as<double>(value, key);
        } else if (key == "wavelet") {
            try {
                config.wavelet = WaveletFamily::from_name(get_as<std::string>(value, key));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        } else if (key == "interpolation") {
            try {
                config.interpolation = parse_interpolation(get_as<std::string>(value, key));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        } else if (key == "guidance_enabled") {
            config.guidance_enabled = get_as<bool>(value, key);
        } else if (key == "sharpen_enabled") {
            config.sharpen_enabled = get_as<bool>(value, key);
        } else {
            throw ConfigError("unknown config field '" + key + "'");
        }
    }
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file " + path.string() + ": " + e.what());
    }
    PipelineConfig config;
    merge_config(config, doc);
    return config;
}

nlohmann::json report_to_json(const StageReport& report) {
    return {
        {"stage_index", report.stage_index},
        {"input_size", {report.input_size.height, report.input_size.width}},
        {"output_size", {report.output_size.height, report.output_size.width}},
        {"sigmas", report.sigmas},
        {"step_ms", report.step_ms},
        {"total_ms", report.total_ms},
        {"guidance_steps", report.guidance_steps},
        {"denoiser_calls", report.denoiser_calls},
        {"encode_calls", report.encode_calls},
        {"decode_calls", report.decode_calls},
        {"entropy", report.entropy},
        {"mvol", report.mvol},
        {"reference_mvol", report.reference_mvol},
        {"seed", report.seed},
        {"tau", report.tau},
        {"delta", report.delta},
        {"alpha", report.alpha},
        {"num_steps", report.num_steps},
    };
}

void write_reports_jsonl(const std::filesystem::path& path, const std::vector<StageReport>& reports) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write report " + path.string());
    }
    for (const auto& report : reports) {
        out << report_to_json(report).dump() << '\n';
    }
    if (!out) {
        throw std::runtime_error("failed writing report " + path.string());
    }
}

}  // namespace wavelift
