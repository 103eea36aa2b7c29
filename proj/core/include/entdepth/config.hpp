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

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "entdepth/analysis.hpp"
#include "entdepth/circuit.hpp"

namespace entdepth {

/// Settings for the scan commands, read from a flat "key = value" file.
///
/// Recognised keys (defaults are the full preset):
///   preset           full | desk      (applied first, other keys override)
///   p_values         0.04,0.08,...     comma list
///   L_values         16,24,...         comma list or a..b range
///   n_realizations   500
///   coarse_b         2                 box size for depth extraction
///   box_sizes        2..20             box sizes for box counting
///   steps_per_site   4                 steps = steps_per_site * L
///   master_seed      1
///   periodic         false
///   escalation_budget 20000
///   threads          0                 0 = all hardware threads
/// A '#' starts a comment. Manifest metadata keys
/// (tool_version, command, started, finished, output) are accepted and ignored.
struct ScanConfig {
    EnsembleSpec ensemble;
    std::vector<std::size_t> box_sizes;
    std::size_t threads = 0;
    std::string preset = "full";

    static ScanConfig full_defaults();
    static ScanConfig desk_defaults();
};

class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Parses the key-value text; throws ConfigError on unknown keys or bad values.
ScanConfig parse_scan_config(std::string_view text);
ScanConfig load_scan_config(const std::string &path);

/// Key-value text that parses back to the same configuration.
std::string to_config_text(const ScanConfig &config);

/// Default p grid: steps of 0.04 up to 0.16, then steps of 0.08.
std::vector<double> default_p_grid();

}  // namespace entdepth
