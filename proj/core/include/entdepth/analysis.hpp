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
#include <optional>
#include <span>
#include <vector>

#include "entdepth/records.hpp"
#include "entdepth/structure.hpp"
#include "entdepth/tableau.hpp"

namespace entdepth {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct FitResult {
    /// Theil-Sen slope: the median of all pairwise slopes.
    double slope = 0.0;
    /// Median absolute deviation of the pairwise slopes from `slope`.
    double slope_err = 0.0;
    /// Median of y - slope * x. For plotting only.
    double intercept = 0.0;
    std::size_t n_points = 0;
};

/// Median; even-length input averages the two middle values. Throws on
/// empty input.
double median(std::vector<double> values);

/// Theil-Sen line fit over all point pairs with distinct x. Throws
/// std::invalid_argument with fewer than two distinct x values.
FitResult theil_sen(std::span<const Point> points);

/// Number of length-b boxes (in the ceil(L/b) tiling) holding at least one
/// member of `membership`.
std::size_t count_occupied_boxes(const std::vector<bool> &membership, std::size_t box_size);

/// Box count of the largest cluster found after coarse-graining into boxes
/// of b qubits. Uses the same tie-break as depth_report.
std::size_t box_count_state(const StabilizerTableau &state, std::size_t box_size,
                            const StructureOptions &options = {});

/// Power-law exponent of mean depth against L, for records sharing one p.
/// Fits ln(mean depth) against ln L.
FitResult fit_gamma(std::span<const DepthRecord> records);

struct BoxRange {
    std::size_t min_b = 2;
    std::size_t max_b = 20;
};

/// Box-counting fit for records sharing one p (and L): ln(mean N_b) against
/// ln b over box sizes inside `range`. The fractal dimension is -slope.
FitResult fit_fractal_dim(std::span<const BoxCountRecord> records, BoxRange range = {});

/// Ensemble means keyed by L (depth) or b (box count), ascending.
std::vector<std::pair<std::size_t, double>> mean_depth_by_size(std::span<const DepthRecord> records);
std::vector<std::pair<std::size_t, double>> mean_boxes_by_size(std::span<const BoxCountRecord> records);

}  // namespace entdepth
