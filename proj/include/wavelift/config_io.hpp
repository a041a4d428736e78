// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wavelift/pipeline.hpp"

namespace wavelift {

/// "64x64,128x128" -> {{64,64},{128,128}}. Entries are HEIGHTxWIDTH.
/// Throws ConfigError on malformed input.
std::vector<Size2> parse_ladder(std::string_view text);
std::string format_ladder(const std::vector<Size2>& ladder);

/// Size given as "HxW" or a single number for a square.
Size2 parse_size(std::string_view text);

/// Every PipelineConfig field under its own name; ladder as [[h, w], ...].
nlohmann::json config_to_json(const PipelineConfig& config);

/// Overwrites the fields present in `doc`. Unknown keys and wrong types throw ConfigError.
void merge_config(PipelineConfig& config, const nlohmann::json& doc);

/// Reads a JSON config file and merges it over the defaults.
PipelineConfig load_config(const std::filesystem::path& path);

nlohmann::json report_to_json(const StageReport& report);

/// One compact JSON object per line.
void write_reports_jsonl(const std::filesystem::path& path, const std::vector<StageReport>& reports);

}  // namespace wavelift
