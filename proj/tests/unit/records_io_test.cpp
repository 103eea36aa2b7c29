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

#include "entdepth/records_io.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gtest/gtest.h"

using namespace entdepth;

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(format_double(0.08), "0.08");
    EXPECT_EQ(format_double(1.0), "1");
    EXPECT_EQ(format_double(0.1 + 0.2), "0.30000000000000004");
    EXPECT_EQ(format_double(std::nan("")), "nan");
    std::mt19937_64 rng(1);
    for (int k = 0; k < 1000; ++k) {
        const double v = std::ldexp(static_cast<double>(rng() >> 11), -53) * (k % 2 ? 1e5 : 1.0);
        ASSERT_EQ(parse_double(format_double(v)), v);
    }
    EXPECT_TRUE(std::isnan(parse_double("nan")));
}

TEST(FormatDouble, ParseErrors) {
    EXPECT_THROW(parse_double(""), FormatError);
    EXPECT_THROW(parse_double("1.5x"), FormatError);
    EXPECT_THROW(parse_u64("-1"), FormatError);
    EXPECT_THROW(parse_u64("12a"), FormatError);
    EXPECT_EQ(parse_u64("18446744073709551615"), std::numeric_limits<std::uint64_t>::max());
}

TEST(DepthCsv, ExactHeaderAndRoundTrip) {
    const std::vector<DepthRecord> recs = {{0.08, 16, 0, 123456789012345ULL, 16, 1},
                                           {0.24, 120, 499, 18446744073709551615ULL, 7, 40}};
    std::ostringstream out;
    write_depth_csv(out, recs);
    EXPECT_EQ(out.str(),
              "p,L,realization,seed,depth_qubits,n_clusters\n"
              "0.08,16,0,123456789012345,16,1\n"
              "0.24,120,499,18446744073709551615,7,40\n");
    std::istringstream in(out.str());
    EXPECT_EQ(read_depth_csv(in), recs);
}

TEST(DepthCsv, ReadsColumnsByName) {
    std::istringstream in("seed,p,n_clusters,L,depth_qubits,realization\n9,0.5,3,8,4,2\n");
    const auto recs = read_depth_csv(in);
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0], (DepthRecord{0.5, 8, 2, 9, 4, 3}));
}

TEST(DepthCsv, RejectsMalformedInput) {
    std::istringstream missing("p,L,realization,seed,depth_qubits\n0.1,8,0,1,4\n");
    EXPECT_THROW(read_depth_csv(missing), FormatError);
    std::istringstream short_row("p,L,realization,seed,depth_qubits,n_clusters\n0.1,8,0\n");
    EXPECT_THROW(read_depth_csv(short_row), FormatError);
    std::istringstream bad_value("p,L,realization,seed,depth_qubits,n_clusters\n0.1,eight,0,1,4,1\n");
    EXPECT_THROW(read_depth_csv(bad_value), FormatError);
    std::istringstream empty("");
    EXPECT_THROW(read_depth_csv(empty), FormatError);
}

TEST(BoxCountCsv, RoundTrip) {
    const std::vector<BoxCountRecord> recs = {{0.4, 120, 2, 0, 5, 31}, {0.4, 120, 20, 0, 5, 4}};
    std::ostringstream out;
    write_boxcount_csv(out, recs);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), kBoxCountHeader);
    std::istringstream in(out.str());
    EXPECT_EQ(read_boxcount_csv(in), recs);
}

TEST(FitsCsv, RoundTripWithMissingFit) {
    const std::vector<FitRow> rows = {{0.08, 1.01, 0.02, 0.98, 0.03, 5, 19}};
    std::ostringstream out;
    write_fits_csv(out, rows);
    EXPECT_EQ(out.str(), "p,gamma,gamma_err,d,d_err,n_L_points,n_b_points\n0.08,1.01,0.02,0.98,0.03,5,19\n");
    std::istringstream in(out.str());
    EXPECT_EQ(read_fits_csv(in), rows);

    const std::vector<FitRow> partial = {{0.5, 0.3, 0.01, std::nan(""), std::nan(""), 4, 0}};
    std::ostringstream out2;
    write_fits_csv(out2, partial);
    std::istringstream in2(out2.str());
    const auto back = read_fits_csv(in2);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_TRUE(std::isnan(back[0].d));
    EXPECT_EQ(back[0].gamma, 0.3);
}

TEST(FitsCsv, TableRendering) {
    const std::vector<FitRow> rows = {{0.08, 1.0, 0.02, 0.98, 0.03, 5, 19}};
    const std::string table = render_fit_table(rows);
    EXPECT_NE(table.find("gamma"), std::string::npos);
    EXPECT_NE(table.find("0.08"), std::string::npos);
}

TEST(Snapshot, FormatAndRoundTrip) {
    Snapshot s{0.2, 6, 99, {{1, {true, false, true, true, false, false}}, {2, {true, true, true, true, false, false}}}};
    std::ostringstream out;
    write_snapshot(out, s);
    EXPECT_EQ(out.str(), "p=0.2 L=6 seed=99\nb=1 101100\nb=2 111100\n");
    std::istringstream in(out.str());
    const Snapshot back = read_snapshot(in);
    EXPECT_EQ(back.p, 0.2);
    EXPECT_EQ(back.L, 6u);
    EXPECT_EQ(back.seed, 99u);
    ASSERT_EQ(back.bitmaps.size(), 2u);
    EXPECT_EQ(back.bitmaps[1].b, 2u);
    EXPECT_EQ(back.bitmaps[0].membership, s.bitmaps[0].membership);
}

TEST(Snapshot, RejectsWrongLength) {
    std::istringstream in("p=0.2 L=6 seed=99\nb=1 10110\n");
    EXPECT_THROW(read_snapshot(in), FormatError);
    std::istringstream bad_header("L=6 seed=99\n");
    EXPECT_THROW(read_snapshot(bad_header), FormatError);
}
