// Copyright 2026 The entdepth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entdepth/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "gtest/gtest.h"

using namespace entdepth;

TEST(ScanConfig, FullDefaults) {
    const ScanConfig c = ScanConfig::full_defaults();
    EXPECT_EQ(c.ensemble.n_realizations, 500u);
    EXPECT_EQ(c.ensemble.coarse_b, 2u);
    EXPECT_EQ(c.ensemble.steps_per_site, 4u);
    EXPECT_FALSE(c.ensemble.periodic);
    ASSERT_EQ(c.box_sizes.size(), 19u);
    EXPECT_EQ(c.box_sizes.front(), 2u);
    EXPECT_EQ(c.box_sizes.back(), 20u);
    EXPECT_EQ(c.ensemble.L_values.back(), 240u);
}

TEST(ScanConfig, DefaultGridSpacing) {
    // 0.04 steps up to the transition, 0.08 steps above it.
    const std::vector<double> grid = default_p_grid();
    ASSERT_GE(grid.size(), 3u);
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const double step = grid[k] - grid[k - 1];
        const double expected = grid[k] <= EnsembleSpec::kCriticalP + 1e-9 ? 0.04 : 0.08;
        EXPECT_NEAR(step, expected, 1e-9) << grid[k];
    }
    EXPECT_NEAR(grid.front(), 0.04, 1e-12);
    EXPECT_LE(grid.back(), 1.0);
}

TEST(ScanConfig, ParsesKeysListsAndRanges) {
    const ScanConfig c = parse_scan_config(
        "# desk scan\n"
        "preset = desk\n"
        "p_values = 0.1, 0.3\n"
        "L_values = 8,16\n"
        "n_realizations = 7   # trailing comment\n"
        "box_sizes = 2..4, 8\n"
        "master_seed = 99\n"
        "periodic = true\n"
        "escalation_budget = 5\n"
        "threads = 3\n"
        "\n");
    EXPECT_EQ(c.preset, "desk");
    EXPECT_EQ(c.ensemble.p_values, (std::vector<double>{0.1, 0.3}));
    EXPECT_EQ(c.ensemble.L_values, (std::vector<std::size_t>{8, 16}));
    EXPECT_EQ(c.ensemble.n_realizations, 7u);
    EXPECT_EQ(c.box_sizes, (std::vector<std::size_t>{2, 3, 4, 8}));
    EXPECT_EQ(c.ensemble.master_seed, 99u);
    EXPECT_TRUE(c.ensemble.periodic);
    EXPECT_EQ(c.ensemble.structure.escalation_budget, 5u);
    EXPECT_EQ(c.threads, 3u);
}

TEST(ScanConfig, PresetSuppliesUnsetKeys) {
    const ScanConfig c = parse_scan_config("preset = desk\n");
    const ScanConfig d = ScanConfig::desk_defaults();
    EXPECT_EQ(c.ensemble.L_values, d.ensemble.L_values);
    EXPECT_EQ(c.ensemble.n_realizations, d.ensemble.n_realizations);
}

TEST(ScanConfig, Errors) {
    EXPECT_THROW(parse_scan_config("bogus = 1\n"), ConfigError);
    EXPECT_THROW(parse_scan_config("n_realizations = 1\nn_realizations = 2\n"), ConfigError);
    EXPECT_THROW(parse_scan_config("p_values = 1.5\n"), ConfigError);
    EXPECT_THROW(parse_scan_config("L_values = 8..4\n"), ConfigError);
    EXPECT_THROW(parse_scan_config("no equals sign\n"), ConfigError);
    EXPECT_THROW(parse_scan_config("preset = huge\n"), ConfigError);
    EXPECT_THROW(parse_scan_config("periodic = maybe\n"), ConfigError);
    EXPECT_THROW(parse_scan_config("n_realizations = -3\n"), ConfigError);
    EXPECT_THROW(load_scan_config("/nonexistent/dir/scan.cfg"), ConfigError);
}

TEST(ScanConfig, TextRoundTripIgnoresMetadata) {
    ScanConfig c = ScanConfig::desk_defaults();
    c.ensemble.p_values = {0.12, 0.1 + 0.2};
    c.ensemble.master_seed = 18446744073709551615ULL;
    c.box_sizes = {2, 5, 9};
    const std::string text = to_config_text(c) + "tool_version = 0.1.0\nstarted = 2026-01-01T00:00:00Z\n";
    const ScanConfig back = parse_scan_config(text);
    EXPECT_EQ(back.ensemble.p_values, c.ensemble.p_values);
    EXPECT_EQ(back.ensemble.L_values, c.ensemble.L_values);
    EXPECT_EQ(back.ensemble.master_seed, c.ensemble.master_seed);
    EXPECT_EQ(back.box_sizes, c.box_sizes);
    EXPECT_EQ(to_config_text(back), to_config_text(c));
}

TEST(ScanConfig, LoadsFromFile) {
    const std::string path = ::testing::TempDir() + "entdepth_config_test.cfg";
    {
        std::ofstream f(path);
        f << "preset = desk\nn_realizations = 3\n";
    }
    EXPECT_EQ(load_scan_config(path).ensemble.n_realizations, 3u);
    std::remove(path.c_str());
}
