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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "entdepth/records_io.hpp"

namespace entdepth {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_list(std::string_view value) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t pos = value.find(',', start);
        if (pos == std::string_view::npos) {
            pos = value.size();
        }
        std::string_view item = trim(value.substr(start, pos - start));
        if (!item.empty()) {
            out.push_back(item);
        }
        start = pos + 1;
    }
    return out;
}

std::size_t parse_count(std::string_view key, std::string_view value) {
    try {
        return static_cast<std::size_t>(parse_u64(value));
    } catch (const FormatError &) {
        throw ConfigError("'" + std::string(key) + "' expects a non-negative integer, got '" + std::string(value) + "'");
    }
}

std::vector<std::size_t> parse_sizes(std::string_view key, std::string_view value) {
    std::vector<std::size_t> out;
    for (std::string_view item : split_list(value)) {
        const std::size_t dots = item.find("..");
        if (dots != std::string_view::npos) {
            const std::size_t lo = parse_count(key, trim(item.substr(0, dots)));
            const std::size_t hi = parse_count(key, trim(item.substr(dots + 2)));
            if (lo > hi) {
                throw ConfigError("'" + std::string(key) + "' has an empty range");
            }
            for (std::size_t v = lo; v <= hi; ++v) {
                out.push_back(v);
            }
        } else {
            out.push_back(parse_count(key, item));
        }
    }
    if (out.empty()) {
        throw ConfigError("'" + std::string(key) + "' must not be empty");
    }
    return out;
}

std::vector<double> parse_probabilities(std::string_view key, std::string_view value) {
    std::vector<double> out;
    for (std::string_view item : split_list(value)) {
        double p = 0.0;
        try {
            p = parse_double(item);
        } catch (const FormatError &) {
            throw ConfigError("'" + std::string(key) + "' expects numbers, got '" + std::string(item) + "'");
        }
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ConfigError("'" + std::string(key) + "' values must lie in [0, 1]");
        }
        out.push_back(p);
    }
    if (out.empty()) {
        throw ConfigError("'" + std::string(key) + "' must not be empty");
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no") {
        return false;
    }
    throw ConfigError("'" + std::string(key) + "' expects true or false");
}

template <typename T>
std::string join(const std::vector<T> &values) {
    std::string out;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k > 0) {
            out += ',';
        }
        if constexpr (std::is_floating_point_v<T>) {
            out += format_double(values[k]);
        } else {
            out += std::to_string(values[k]);
        }
    }
    return out;
}

const std::set<std::string, std::less<>> kMetadataKeys = {"tool_version", "command", "started", "finished", "output"};

}  // namespace

std::vector<double> default_p_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 4; ++k) {
        grid.push_back(std::round(0.04 * k * 100.0) / 100.0);
    }
    for (int k = 3; k <= 12; ++k) {
        grid.push_back(std::round(0.08 * k * 100.0) / 100.0);
    }
    return grid;
}

ScanConfig ScanConfig::full_defaults() {
    ScanConfig config;
    config.preset = "full";
    config.ensemble.p_values = default_p_grid();
    config.ensemble.L_values = {16, 24, 32, 48, 64, 96, 120, 160, 240};
    config.ensemble.n_realizations = 500;
    config.ensemble.coarse_b = 2;
    config.ensemble.steps_per_site = 4;
    config.ensemble.master_seed = 1;
    for (std::size_t b = 2; b <= 20; ++b) {
        config.box_sizes.push_back(b);
    }
    return config;
}

ScanConfig ScanConfig::desk_defaults() {
    ScanConfig config = full_defaults();
    config.preset = "desk";
    config.ensemble.L_values = {16, 24, 32, 48, 64};
    config.ensemble.n_realizations = 50;
    return config;
}

ScanConfig parse_scan_config(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    std::string preset = "full";
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + " is not 'key = value'");
        }
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key == "preset") {
            preset = value;
        }
        entries.emplace_back(std::move(key), std::move(value));
    }

    ScanConfig config;
    if (preset == "full") {
        config = ScanConfig::full_defaults();
    } else if (preset == "desk") {
        config = ScanConfig::desk_defaults();
    } else {
        throw ConfigError("unknown preset '" + preset + "' (expected full or desk)");
    }

    std::set<std::string> seen;
    for (const auto &[key, value] : entries) {
        if (!seen.insert(key).second) {
            throw ConfigError("duplicate config key '" + key + "'");
        }
        EnsembleSpec &e = config.ensemble;
        if (key == "preset" || kMetadataKeys.count(key)) {
            continue;
        } else if (key == "p_values") {
            e.p_values = parse_probabilities(key, value);
        } else if (key == "L_values") {
            e.L_values = parse_sizes(key, value);
        } else if (key == "n_realizations") {
            e.n_realizations = parse_count(key, value);
        } else if (key == "coarse_b") {
            e.coarse_b = parse_count(key, value);
        } else if (key == "box_sizes") {
            config.box_sizes = parse_sizes(key, value);
        } else if (key == "steps_per_site") {
            e.steps_per_site = parse_count(key, value);
        } else if (key == "master_seed") {
            e.master_seed = parse_count(key, value);
        } else if (key == "periodic") {
            e.periodic = parse_bool(key, value);
        } else if (key == "escalation_budget") {
            e.structure.escalation_budget = parse_count(key, value);
        } else if (key == "threads") {
            config.threads = parse_count(key, value);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    try {
        config.ensemble.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    if (std::any_of(config.box_sizes.begin(), config.box_sizes.end(), [](std::size_t b) { return b == 0; })) {
        throw ConfigError("box sizes must be positive");
    }
    return config;
}

ScanConfig load_scan_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scan_config(text.str());
}

std::string to_config_text(const ScanConfig &config) {
    const EnsembleSpec &e = config.ensemble;
    std::ostringstream out;
    out << "preset = " << config.preset << '\n'
        << "p_values = " << join(e.p_values) << '\n'
        << "L_values = " << join(e.L_values) << '\n'
        << "n_realizations = " << e.n_realizations << '\n'
        << "coarse_b = " << e.coarse_b << '\n'
        << "box_sizes = " << join(config.box_sizes) << '\n'
        << "steps_per_site = " << e.steps_per_site << '\n'
        << "master_seed = " << e.master_seed << '\n'
        << "periodic = " << (e.periodic ? "true" : "false") << '\n'
        << "escalation_budget = " << e.structure.escalation_budget << '\n'
        << "threads = " << config.threads << '\n';
    return out.str();
}

}  // namespace entdepth
