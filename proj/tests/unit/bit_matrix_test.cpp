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

#include "entdepth/bit_matrix.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "gtest/gtest.h"

using namespace entdepth;

namespace {

BitMatrix from_rows(std::initializer_list<const char *> rows) {
    const std::size_t cols = std::string(*rows.begin()).size();
    BitMatrix m(rows.size(), cols);
    std::size_t r = 0;
    for (const char *row : rows) {
        for (std::size_t c = 0; c < cols; ++c) {
            m.set(r, c, row[c] == '1');
        }
        ++r;
    }
    return m;
}

// Rank over GF(2) by brute force: the size of the row span is 2^rank.
std::size_t span_rank(const BitMatrix &m) {
    std::vector<std::vector<bool>> span{std::vector<bool>(m.cols(), false)};
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::vector<bool> row(m.cols());
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row[c] = m.get(r, c);
        }
        if (std::find(span.begin(), span.end(), row) != span.end()) {
            continue;
        }
        const std::size_t old = span.size();
        for (std::size_t k = 0; k < old; ++k) {
            std::vector<bool> v = span[k];
            for (std::size_t c = 0; c < v.size(); ++c) {
                v[c] = v[c] != row[c];
            }
            span.push_back(v);
        }
    }
    std::size_t rank = 0;
    while ((std::size_t{1} << rank) < span.size()) {
        ++rank;
    }
    return rank;
}

}  // namespace

TEST(BitMatrix, IdentityHasFullRank) {
    for (std::size_t n : {1u, 5u, 64u, 65u, 130u}) {
        EXPECT_EQ(gf2_rank(BitMatrix::identity(n)), n);
    }
}

TEST(BitMatrix, ZeroMatrixHasRankZero) { EXPECT_EQ(gf2_rank(BitMatrix(7, 90)), 0u); }

TEST(BitMatrix, DependentThirdRow) { EXPECT_EQ(gf2_rank(from_rows({"110", "011", "101"})), 2u); }

TEST(BitMatrix, RankLeavesInputUntouched) {
    BitMatrix m = from_rows({"110", "011", "101"});
    const BitMatrix copy = m;
    gf2_rank(m);
    EXPECT_EQ(m, copy);
}

TEST(BitMatrix, RankMatchesSpanEnumeration) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 70;
        BitMatrix m(rows, cols);
        const double density = (rng() % 4 + 1) / 8.0;
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                m.set(r, c, static_cast<double>(rng() % 1000) / 1000.0 < density);
            }
        }
        ASSERT_EQ(gf2_rank(m), span_rank(m)) << "trial " << trial;
    }
}

TEST(BitMatrix, ReduceGivesReducedEchelonForm) {
    std::mt19937_64 rng(11);
    BitMatrix m(12, 40);
    for (std::size_t r = 0; r < 12; ++r) {
        for (std::size_t c = 0; c < 40; ++c) {
            m.set(r, c, rng() & 1);
        }
    }
    for (std::size_t c = 0; c < 40; ++c) {
        m.set(3, c, m.get(4, c) != m.get(5, c));
    }
    const std::size_t rank = gf2_rank(m);
    std::vector<std::size_t> pivots = gf2_reduce(m);
    ASSERT_EQ(pivots.size(), rank);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (r > 0) {
            EXPECT_LT(pivots[r - 1], pivots[r]);
        }
        for (std::size_t other = 0; other < m.rows(); ++other) {
            EXPECT_EQ(m.get(other, pivots[r]), other == r);
        }
    }
    for (std::size_t r = rank; r < m.rows(); ++r) {
        EXPECT_TRUE(m.row_is_zero(r));
    }
}
