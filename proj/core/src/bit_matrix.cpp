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
#include <utility>

namespace entdepth {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_(words_for_bits(cols)), data_(rows * words_per_row_, 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        m.set(k, k, true);
    }
    return m;
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) {
    Word *d = data_.data() + dst * words_per_row_;
    const Word *s = data_.data() + src * words_per_row_;
    for (std::size_t k = 0; k < words_per_row_; ++k) {
        d[k] ^= s[k];
    }
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    std::swap_ranges(
        data_.begin() + static_cast<std::ptrdiff_t>(a * words_per_row_),
        data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * words_per_row_),
        data_.begin() + static_cast<std::ptrdiff_t>(b * words_per_row_));
}

bool BitMatrix::row_is_zero(std::size_t r) const {
    auto words = row(r);
    return std::all_of(words.begin(), words.end(), [](Word w) { return w == 0; });
}

std::vector<std::size_t> gf2_reduce(BitMatrix &matrix) {
    std::vector<std::size_t> pivots;
    std::size_t next_row = 0;
    for (std::size_t c = 0; c < matrix.cols() && next_row < matrix.rows(); ++c) {
        std::size_t found = matrix.rows();
        for (std::size_t r = next_row; r < matrix.rows(); ++r) {
            if (matrix.get(r, c)) {
                found = r;
                break;
            }
        }
        if (found == matrix.rows()) {
            continue;
        }
        matrix.swap_rows(found, next_row);
        for (std::size_t r = 0; r < matrix.rows(); ++r) {
            if (r != next_row && matrix.get(r, c)) {
                matrix.xor_row(r, next_row);
            }
        }
        pivots.push_back(c);
        ++next_row;
    }
    return pivots;
}

std::size_t gf2_rank_inplace(std::span<Word> vectors, std::size_t words) {
    if (words == 0) {
        return 0;
    }
    const std::size_t n = vectors.size() / words;
    std::size_t rank = 0;
    // Eliminate on the lowest set bit of each surviving vector.
    for (std::size_t i = 0; i < n; ++i) {
        Word *vi = vectors.data() + i * words;
        std::size_t lead_word = words;
        for (std::size_t k = 0; k < words; ++k) {
            if (vi[k] != 0) {
                lead_word = k;
                break;
            }
        }
        if (lead_word == words) {
            continue;
        }
        ++rank;
        const Word lead_mask = vi[lead_word] & (~vi[lead_word] + 1);
        for (std::size_t j = i + 1; j < n; ++j) {
            Word *vj = vectors.data() + j * words;
            if (vj[lead_word] & lead_mask) {
                for (std::size_t k = lead_word; k < words; ++k) {
                    vj[k] ^= vi[k];
                }
            }
        }
    }
    return rank;
}

std::size_t gf2_rank(BitMatrix matrix) {
    std::vector<Word> packed;
    packed.reserve(matrix.rows() * matrix.words_per_row());
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        auto row = matrix.row(r);
        packed.insert(packed.end(), row.begin(), row.end());
    }
    return gf2_rank_inplace(packed, matrix.words_per_row());
}

}  // namespace entdepth
