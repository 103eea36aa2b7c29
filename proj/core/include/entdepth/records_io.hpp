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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "entdepth/records.hpp"

namespace entdepth {

// CSV schemas. Headers are fixed; rows are written in persisted order by the
// scan commands. Doubles use the shortest round-tripping representation.
inline constexpr std::string_view kDepthHeader = "p,L,realization,seed,depth_qubits,n_clusters";
inline constexpr std::string_view kBoxCountHeader = "p,L,b,realization,seed,n_boxes";
inline constexpr std::string_view kFitsHeader = "p,gamma,gamma_err,d,d_err,n_L_points,n_b_points";

class FormatError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// One row of fits.csv. Exponents are NaN when the matching input was absent.
struct FitRow {
    double p = 0.0;
    double gamma = 0.0;
    double gamma_err = 0.0;
    double d = 0.0;
    double d_err = 0.0;
    std::size_t n_L_points = 0;
    std::size_t n_b_points = 0;

    bool operator==(const FitRow &) const = default;
};

std::string format_double(double value);
double parse_double(std::string_view text);
std::uint64_t parse_u64(std::string_view text);

void write_depth_csv(std::ostream &out, std::span<const DepthRecord> records);
void write_boxcount_csv(std::ostream &out, std::span<const BoxCountRecord> records);
void write_fits_csv(std::ostream &out, std::span<const FitRow> rows);

/// Readers locate columns by header name, so extra columns are ignored and
/// missing ones raise FormatError.
std::vector<DepthRecord> read_depth_csv(std::istream &in);
std::vector<BoxCountRecord> read_boxcount_csv(std::istream &in);
std::vector<FitRow> read_fits_csv(std::istream &in);

/// Plain-text table of p, gamma, gamma_err, d, d_err.
std::string render_fit_table(std::span<const FitRow> rows);

/// Largest-cluster membership of one realization at one box size.
struct SnapshotBitmap {
    std::size_t b = 0;
    std::vector<bool> membership;
};

struct Snapshot {
    double p = 0.0;
    std::size_t L = 0;
    std::uint64_t seed = 0;
    std::vector<SnapshotBitmap> bitmaps;
};

/// Header "p=<> L=<> seed=<>", then "b=<k> <L characters of 0/1>" per box size.
void write_snapshot(std::ostream &out, const Snapshot &snapshot);
Snapshot read_snapshot(std::istream &in);

}  // namespace entdepth
