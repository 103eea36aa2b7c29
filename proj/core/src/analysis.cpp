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

#include "entdepth/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace entdepth {

double median(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("median of an empty list");
    }
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

FitResult theil_sen(std::span<const Point> points) {
    std::vector<double> slopes;
    slopes.reserve(points.size() * (points.size() - (points.empty() ? 0 : 1)) / 2);
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i].x != points[j].x) {
                slopes.push_back((points[j].y - points[i].y) / (points[j].x - points[i].x));
            }
        }
    }
    if (slopes.empty()) {
        throw std::invalid_argument("Theil-Sen fit needs at least two distinct x values");
    }
    FitResult fit;
    fit.n_points = points.size();
    fit.slope = median(slopes);
    std::vector<double> deviations;
    deviations.reserve(slopes.size());
    for (double m : slopes) {
        deviations.push_back(std::abs(fit.slope - m));
    }
    fit.slope_err = median(std::move(deviations));
    std::vector<double> residuals;
    residuals.reserve(points.size());
    for (const Point &pt : points) {
        residuals.push_back(pt.y - fit.slope * pt.x);
    }
    fit.intercept = median(std::move(residuals));
    return fit;
}

std::size_t count_occupied_boxes(const std::vector<bool> &membership, std::size_t box_size) {
    if (box_size == 0) {
        throw std::invalid_argument("box size must be positive");
    }
    std::size_t count = 0;
    for (std::size_t start = 0; start < membership.size(); start += box_size) {
        const std::size_t stop = std::min(membership.size(), start + box_size);
        if (std::any_of(membership.begin() + static_cast<std::ptrdiff_t>(start),
                        membership.begin() + static_cast<std::ptrdiff_t>(stop), [](bool v) { return v; })) {
            ++count;
        }
    }
    return count;
}

std::size_t box_count_state(const StabilizerTableau &state, std::size_t box_size, const StructureOptions &options) {
    const std::vector<Element> boxes = coarse_grain(state.n_qubits(), box_size);
    const EntanglementStructure structure = build_structure(state, boxes, options);
    const DepthReport report = depth_report(structure);
    for (const Cluster &c : structure.final_clusters) {
        if (c.qubits == report.largest_cluster) {
            return c.element_ids.size();
        }
    }
    throw std::logic_error("largest cluster missing from structure");
}

namespace {

template <typename Record, typename Key, typename Value>
std::vector<std::pair<std::size_t, double>> group_means(std::span<const Record> records, Key key, Value value) {
    std::map<std::size_t, std::pair<double, std::size_t>> sums;
    for (const Record &r : records) {
        auto &[sum, count] = sums[key(r)];
        sum += static_cast<double>(value(r));
        ++count;
    }
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(sums.size());
    for (const auto &[k, sc] : sums) {
        out.emplace_back(k, sc.first / static_cast<double>(sc.second));
    }
    return out;
}

template <typename Record>
void require_single_p(std::span<const Record> records, const char *what) {
    if (records.empty()) {
        throw std::invalid_argument(std::string(what) + ": no records");
    }
    for (const Record &r : records) {
        if (r.p != records.front().p) {
            throw std::invalid_argument(std::string(what) + ": records mix several p values");
        }
    }
}

FitResult log_log_fit(const std::vector<std::pair<std::size_t, double>> &means, const char *what) {
    if (means.size() < 2) {
        throw std::invalid_argument(std::string(what) + ": need at least two distinct sizes");
    }
    std::vector<Point> points;
    points.reserve(means.size());
    for (const auto &[size, mean] : means) {
        points.push_back({std::log(static_cast<double>(size)), std::log(mean)});
    }
    return theil_sen(points);
}

}  // namespace

std::vector<std::pair<std::size_t, double>> mean_depth_by_size(std::span<const DepthRecord> records) {
    return group_means(records, [](const DepthRecord &r) { return r.L; },
                       [](const DepthRecord &r) { return r.depth_qubits; });
}

std::vector<std::pair<std::size_t, double>> mean_boxes_by_size(std::span<const BoxCountRecord> records) {
    return group_means(records, [](const BoxCountRecord &r) { return r.b; },
                       [](const BoxCountRecord &r) { return r.n_boxes; });
}

FitResult fit_gamma(std::span<const DepthRecord> records) {
    require_single_p(records, "fit_gamma");
    return log_log_fit(mean_depth_by_size(records), "fit_gamma");
}

FitResult fit_fractal_dim(std::span<const BoxCountRecord> records, BoxRange range) {
    require_single_p(records, "fit_fractal_dim");
    for (const BoxCountRecord &r : records) {
        if (r.L != records.front().L) {
            throw std::invalid_argument("fit_fractal_dim: records mix several system sizes");
        }
    }
    std::vector<std::pair<std::size_t, double>> means = mean_boxes_by_size(records);
    std::erase_if(means, [&range](const auto &m) { return m.first < range.min_b || m.first > range.max_b; });
    return log_log_fit(means, "fit_fractal_dim");
}

}  // namespace entdepth
