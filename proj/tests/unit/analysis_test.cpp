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
#include <random>

#include "gtest/gtest.h"
#include "test_states.hpp"

using namespace entdepth;
using namespace entdepth::testing;

namespace {

// Straightforward reference: sort everything, no selection tricks.
double sorted_median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::pair<double, double> reference_fit(const std::vector<Point> &pts) {
    std::vector<double> slopes;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (pts[i].x != pts[j].x) {
                slopes.push_back((pts[i].y - pts[j].y) / (pts[i].x - pts[j].x));
            }
        }
    }
    const double m = sorted_median(slopes);
    std::vector<double> dev;
    for (double s : slopes) {
        dev.push_back(std::abs(s - m));
    }
    return {m, sorted_median(dev)};
}

std::vector<bool> cantor(int level) {
    std::vector<bool> cells{true};
    for (int k = 0; k < level; ++k) {
        std::vector<bool> next;
        for (bool c : cells) {
            next.push_back(c);
            next.push_back(false);
            next.push_back(c);
        }
        cells = std::move(next);
    }
    return cells;
}

std::vector<BoxCountRecord> records_for(const std::vector<bool> &membership, std::span<const std::size_t> sizes) {
    std::vector<BoxCountRecord> out;
    for (std::size_t b : sizes) {
        out.push_back({0.5, membership.size(), b, 0, 0, count_occupied_boxes(membership, b)});
    }
    return out;
}

std::vector<std::size_t> range_sizes(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> out;
    for (std::size_t b = lo; b <= hi; ++b) {
        out.push_back(b);
    }
    return out;
}

}  // namespace

TEST(Median, OddAndEvenLengths) {
    EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
    EXPECT_EQ(median({4.0, 1.0, 3.0, 2.0}), 2.5);
    EXPECT_EQ(median({7.0}), 7.0);
    EXPECT_THROW(median({}), std::invalid_argument);
}

TEST(TheilSen, ExactLine) {
    const std::vector<Point> pts = {{0, 0}, {1, 2}, {2, 4}};
    const FitResult f = theil_sen(pts);
    EXPECT_EQ(f.slope, 2.0);
    EXPECT_EQ(f.slope_err, 0.0);
    EXPECT_EQ(f.intercept, 0.0);
    EXPECT_EQ(f.n_points, 3u);
}

TEST(TheilSen, FivePointsWithOneOutlier) {
    // Pairwise slopes are {-3, -1, -1/3, 0, 1, 1, 1, 1, 1, 1}; six of the ten
    // deviations from the median slope are zero, so the MAD is zero.
    const std::vector<Point> pts = {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 0}};
    const FitResult f = theil_sen(pts);
    const auto [m, mad] = reference_fit(pts);
    EXPECT_EQ(m, 1.0);
    EXPECT_EQ(mad, 0.0);
    EXPECT_EQ(f.slope, m);
    EXPECT_EQ(f.slope_err, mad);
}

TEST(TheilSen, TwoPoints) {
    const std::vector<Point> pts = {{0, 0}, {1, 3}};
    const FitResult f = theil_sen(pts);
    EXPECT_EQ(f.slope, 3.0);
    EXPECT_EQ(f.slope_err, 0.0);
}

TEST(TheilSen, RejectsDegenerateInput) {
    const std::vector<Point> same_x = {{1, 0}, {1, 5}, {1, 2}};
    EXPECT_THROW(theil_sen(same_x), std::invalid_argument);
    EXPECT_THROW(theil_sen(std::vector<Point>{}), std::invalid_argument);
    EXPECT_THROW(theil_sen(std::vector<Point>{{0, 0}}), std::invalid_argument);
}

TEST(TheilSen, SkipsPairsWithEqualX) {
    const std::vector<Point> pts = {{0, 0}, {0, 10}, {1, 1}};
    const auto [m, mad] = reference_fit(pts);
    EXPECT_EQ(theil_sen(pts).slope, m);
    EXPECT_EQ(theil_sen(pts).slope_err, mad);
}

TEST(TheilSenProperty, MatchesReferenceOnRandomData) {
    std::mt19937_64 rng(71);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Point> pts(2 + rng() % 30);
        for (Point &p : pts) {
            p = {static_cast<double>(rng() % 20), noise(rng)};
        }
        pts[1].x = pts[0].x + 1;
        const auto [m, mad] = reference_fit(pts);
        const FitResult f = theil_sen(pts);
        ASSERT_EQ(f.slope, m);
        ASSERT_EQ(f.slope_err, mad);
        ASSERT_GE(f.slope_err, 0.0);
    }
}

TEST(TheilSenProperty, PermutationInvariant) {
    std::mt19937_64 rng(73);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Point> pts(3 + rng() % 20);
        for (std::size_t k = 0; k < pts.size(); ++k) {
            pts[k] = {static_cast<double>(k), 0.7 * k + noise(rng)};
        }
        const FitResult a = theil_sen(pts);
        std::shuffle(pts.begin(), pts.end(), rng);
        const FitResult b = theil_sen(pts);
        EXPECT_EQ(a.slope, b.slope);
        EXPECT_EQ(a.slope_err, b.slope_err);
        EXPECT_EQ(a.intercept, b.intercept);
    }
}

TEST(TheilSenProperty, ScaleAndShiftInY) {
    std::mt19937_64 rng(79);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Point> pts(3 + rng() % 20);
        for (std::size_t k = 0; k < pts.size(); ++k) {
            pts[k] = {static_cast<double>(k), -1.3 * k + noise(rng)};
        }
        const double slope = theil_sen(pts).slope;
        auto scaled = pts, shifted = pts;
        for (Point &p : scaled) {
            p.y *= 4.0;  // power of two keeps the arithmetic exact
        }
        for (Point &p : shifted) {
            p.y += 3.0;
        }
        EXPECT_EQ(theil_sen(scaled).slope, 4.0 * slope);
        EXPECT_NEAR(theil_sen(shifted).slope, slope, 1e-12);
    }
}

TEST(TheilSenProperty, OneOutlierLeavesSlopeUnchanged) {
    for (std::size_t bad = 0; bad < 10; ++bad) {
        for (double corruption : {-1e6, -5.0, 0.5, 42.0, 1e9}) {
            std::vector<Point> pts;
            for (int k = 0; k < 10; ++k) {
                pts.push_back({static_cast<double>(k), 2.0 * k - 1.0});
            }
            pts[bad].y += corruption;
            EXPECT_EQ(theil_sen(pts).slope, 2.0) << bad << " " << corruption;
        }
    }
}

TEST(BoxCount, OccupiedBoxes) {
    const std::vector<bool> m = {false, true, true, false, false, false, true};
    EXPECT_EQ(count_occupied_boxes(m, 1), 3u);
    EXPECT_EQ(count_occupied_boxes(m, 2), 3u);
    EXPECT_EQ(count_occupied_boxes(m, 3), 2u);
    EXPECT_EQ(count_occupied_boxes(m, 7), 1u);
    EXPECT_EQ(count_occupied_boxes(m, 100), 1u);
    EXPECT_THROW(count_occupied_boxes(m, 0), std::invalid_argument);
}

TEST(BoxCount, StateExamples) {
    const StabilizerTableau bells = bell_pairs(8, {{0, 1}, {2, 3}});
    EXPECT_EQ(box_count_state(bells, 2), 1u);
    EXPECT_EQ(box_count_state(ghz(8), 2), 4u);
    EXPECT_EQ(box_count_state(ghz(8), 8), 1u);
    EXPECT_EQ(box_count_state(ghz(8), 3), 3u);
    EXPECT_THROW(box_count_state(ghz(8), 9), std::invalid_argument);
}

TEST(FitGamma, LinearDepth) {
    std::vector<DepthRecord> recs;
    for (std::size_t L : {16u, 32u, 64u, 128u}) {
        recs.push_back({0.1, L, 0, 0, L, 1});
    }
    const FitResult f = fit_gamma(recs);
    EXPECT_NEAR(f.slope, 1.0, 1e-12);
    EXPECT_NEAR(f.slope_err, 0.0, 1e-12);
}

TEST(FitGamma, SquareRootDepth) {
    std::vector<DepthRecord> recs;
    for (std::size_t L = 16; L <= 256; L += 8) {
        const auto d = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(L))));
        recs.push_back({0.3, L, 0, 0, d, 1});
    }
    EXPECT_NEAR(fit_gamma(recs).slope, 0.5, 0.05);
}

TEST(FitGamma, AveragesBeforeTakingLogs) {
    // Means 2 and 8 give slope 2 exactly; means of logs would not.
    std::vector<DepthRecord> recs = {{0.2, 2, 0, 0, 1, 1}, {0.2, 2, 1, 0, 3, 1},
                                     {0.2, 4, 0, 0, 6, 1}, {0.2, 4, 1, 0, 10, 1}};
    EXPECT_NEAR(fit_gamma(recs).slope, 2.0, 1e-12);
}

TEST(FitGamma, Errors) {
    std::vector<DepthRecord> one_size = {{0.1, 16, 0, 0, 4, 1}, {0.1, 16, 1, 0, 5, 1}};
    EXPECT_THROW(fit_gamma(one_size), std::invalid_argument);
    std::vector<DepthRecord> mixed = {{0.1, 16, 0, 0, 4, 1}, {0.2, 32, 0, 0, 5, 1}};
    EXPECT_THROW(fit_gamma(mixed), std::invalid_argument);
    EXPECT_THROW(fit_gamma(std::vector<DepthRecord>{}), std::invalid_argument);
}

TEST(FitFractalDim, CantorSet) {
    const std::vector<bool> set = cantor(7);
    ASSERT_EQ(set.size(), 2187u);
    const std::vector<std::size_t> sizes = {3, 9, 27, 81};
    const auto recs = records_for(set, sizes);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(recs[k].n_boxes, std::size_t{1} << (6 - k));
    }
    const FitResult f = fit_fractal_dim(recs, {3, 81});
    EXPECT_NEAR(-f.slope, std::log(2.0) / std::log(3.0), 1e-12);
}

TEST(FitFractalDim, FullBlockAndSingleBox) {
    const auto sizes = range_sizes(2, 20);
    const auto full = records_for(std::vector<bool>(240, true), sizes);
    EXPECT_NEAR(-fit_fractal_dim(full).slope, 1.0, 0.02);
    std::vector<bool> point(240, false);
    point[17] = true;
    EXPECT_NEAR(fit_fractal_dim(records_for(point, sizes)).slope, 0.0, 1e-12);
}

TEST(FitFractalDim, RangeFilterAndErrors) {
    auto recs = records_for(std::vector<bool>(64, true), range_sizes(1, 64));
    const FitResult f = fit_fractal_dim(recs, {2, 4});
    EXPECT_EQ(f.n_points, 3u);
    EXPECT_THROW(fit_fractal_dim(recs, {5, 5}), std::invalid_argument);
    recs.push_back({0.5, 65, 2, 0, 0, 33});
    EXPECT_THROW(fit_fractal_dim(recs), std::invalid_argument);
}

TEST(FitFractalDimProperty, LongContiguousBlocksAreOneDimensional) {
    // With b up to 20 the partial end boxes bias short blocks downward; blocks
    // of 300 cells or more stay within 0.05 at every offset.
    const auto sizes = range_sizes(2, 20);
    for (std::size_t L : {200u, 240u, 333u, 600u, 1000u}) {
        const FitResult whole = fit_fractal_dim(records_for(std::vector<bool>(L, true), sizes));
        EXPECT_NEAR(-whole.slope, 1.0, 0.05) << L;
        for (std::size_t len = 300; len <= L; len += 13) {
            for (std::size_t start = 0; start + len <= L; start += 7) {
                std::vector<bool> m(L, false);
                std::fill(m.begin() + static_cast<std::ptrdiff_t>(start),
                          m.begin() + static_cast<std::ptrdiff_t>(start + len), true);
                ASSERT_NEAR(-fit_fractal_dim(records_for(m, sizes)).slope, 1.0, 0.05)
                    << "L=" << L << " len=" << len << " start=" << start;
            }
        }
    }
}
