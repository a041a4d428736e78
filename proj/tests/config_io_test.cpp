// Copyright 2026 The Wavelift Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <fstream>

#include "test_support.hpp"
#include "wavelift/config_io.hpp"
#include "wavelift/errors.hpp"

using namespace wavelift;

TEST(ParseLadder, HeightByWidthList) {
    EXPECT_EQ(parse_ladder("64x64,128x256"), (std::vector<Size2>{{64, 64}, {128, 256}}));
    EXPECT_EQ(parse_ladder(" 8X8 , 16x16 "), (std::vector<Size2>{{8, 8}, {16, 16}}));
    EXPECT_EQ(format_ladder({{64, 64}, {128, 256}}), "64x64,128x256");
    for (const char* bad : {"", "64", "64x", "x64", "64x64,", "0x8", "8x-1", "axb"}) {
        EXPECT_THROW(parse_ladder(bad), ConfigError) << bad;
    }
}

TEST(ParseSize, SquareShorthand) {
    EXPECT_EQ(parse_size("512"), (Size2{512, 512}));
    EXPECT_EQ(parse_size("256x512"), (Size2{256, 512}));
}

TEST(ConfigJson, RoundTripsEveryField) {
    PipelineConfig c;
    c.ladder = {{32, 48}, {64, 96}};
    c.tau = 7;
    c.delta = 2;
    c.alpha = 1.5;
    c.blur_sigma = 1.25;
    c.num_steps = 30;
    c.sigma_min = 0.01;
    c.sigma_max = 50.0;
    c.rho = 5.0;
    c.wavelet = WaveletFamily::db2();
    c.interpolation = Interpolation::bicubic;
    c.seed = 99;
    c.guidance_enabled = false;
    c.sharpen_enabled = false;
    PipelineConfig back;
    merge_config(back, config_to_json(c));
    EXPECT_EQ(config_to_json(back), config_to_json(c));
    EXPECT_EQ(back.ladder, c.ladder);
    EXPECT_EQ(back.wavelet, WaveletFamily::db2());
}

TEST(ConfigJson, MergeOverridesOnlyPresentFields) {
    PipelineConfig c;
    merge_config(c, {{"tau", 10}, {"ladder", "64x64,128x128"}});
    EXPECT_EQ(c.tau, 10u);
    EXPECT_EQ(c.delta, 5u);
    EXPECT_EQ(c.ladder.size(), 2u);
}

TEST(ConfigJson, RejectsUnknownAndMistypedFields) {
    PipelineConfig c;
    EXPECT_THROW(merge_config(c, {{"taus", 3}}), ConfigError);
    EXPECT_THROW(merge_config(c, {{"tau", -1}}), ConfigError);
    EXPECT_THROW(merge_config(c, {{"tau", "x"}}), ConfigError);
    EXPECT_THROW(merge_config(c, {{"alpha", "x"}}), ConfigError);
    EXPECT_THROW(merge_config(c, {{"wavelet", "sym4"}}), ConfigError);
    EXPECT_THROW(merge_config(c, {{"ladder", {{1, 2, 3}}}}), ConfigError);
    EXPECT_THROW(merge_config(c, nlohmann::json::array()), ConfigError);
}

TEST(ConfigJson, LoadFromFile) {
    wavelift::testing::TempDir dir("config");
    std::ofstream(dir / "run.json") << R"({"alpha": 2.0, "wavelet": "db2"})";
    const PipelineConfig c = load_config(dir / "run.json");
    EXPECT_EQ(c.alpha, 2.0);
    EXPECT_EQ(c.wavelet, WaveletFamily::db2());
    std::ofstream(dir / "bad.json") << "{";
    EXPECT_THROW(load_config(dir / "bad.json"), ConfigError);
    EXPECT_THROW(load_config(dir / "missing.json"), ConfigError);
}

TEST(ReportJson, CarriesHyperparametersAndCounts) {
    StageReport r;
    r.stage_index = 1;
    r.tau = 15;
    r.delta = 5;
    r.alpha = 1.0;
    r.num_steps = 50;
    r.denoiser_calls = 15;
    r.input_size = {64, 64};
    r.output_size = {128, 128};
    const auto j = report_to_json(r);
    EXPECT_EQ(j.at("tau"), 15);
    EXPECT_EQ(j.at("delta"), 5);
    EXPECT_EQ(j.at("alpha"), 1.0);
    EXPECT_EQ(j.at("num_steps"), 50);
    EXPECT_EQ(j.at("output_size"), nlohmann::json::array({128, 128}));

    wavelift::testing::TempDir dir("report");
    write_reports_jsonl(dir / "r.jsonl", {r, r});
    std::ifstream in(dir / "r.jsonl");
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
        EXPECT_EQ(nlohmann::json::parse(line), j);
        ++lines;
    }
    EXPECT_EQ(lines, 2);
}
