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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace entdepth {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for_bits(std::size_t n_bits) {
    return (n_bits + kWordBits - 1) / kWordBits;
}

/// Dense GF(2) matrix, word-packed by rows.
///
/// Every row occupies `words_per_row()` consecutive words; bits past `cols()`
/// in the last word of a row are always zero.
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return words_per_row_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * words_per_row_ + c / kWordBits] >> (c % kWordBits)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool value) {
        Word &w = data_[r * words_per_row_ + c / kWordBits];
        Word mask = Word{1} << (c % kWordBits);
        w = value ? (w | mask) : (w & ~mask);
    }
    void flip(std::size_t r, std::size_t c) {
        data_[r * words_per_row_ + c / kWordBits] ^= Word{1} << (c % kWordBits);
    }

    std::span<Word> row(std::size_t r) {
        return {data_.data() + r * words_per_row_, words_per_row_};
    }
    std::span<const Word> row(std::size_t r) const {
        return {data_.data() + r * words_per_row_, words_per_row_};
    }

    /// row(dst) ^= row(src)
    void xor_row(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);
    bool row_is_zero(std::size_t r) const;

    bool operator==(const BitMatrix &other) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<Word> data_;
};

/// GF(2) row rank. Takes a copy; the caller's matrix is untouched.
std::size_t gf2_rank(BitMatrix matrix);

/// In-place reduced row echelon form. Returns the pivot column of each
/// nonzero row, in row order; rows past the rank are zero afterwards.
std::vector<std::size_t> gf2_reduce(BitMatrix &matrix);

/// Rank of a set of equal-length packed vectors stored back to back in
/// `vectors` (each `words` long). Destroys the contents.
std::size_t gf2_rank_inplace(std::span<Word> vectors, std::size_t words);

inline void xor_into(std::span<Word> dst, std::span<const Word> src) {
    for (std::size_t k = 0; k < dst.size(); ++k) {
        dst[k] ^= src[k];
    }
}

inline std::size_t popcount(std::span<const Word> words) {
    std::size_t n = 0;
    for (Word w : words) {
        n += static_cast<std::size_t>(std::popcount(w));
    }
    return n;
}

}  // namespace entdepth
