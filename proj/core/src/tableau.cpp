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

#include "entdepth/tableau.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace entdepth {

int pauli_string_product_phase(std::span<const Word> x1, std::span<const Word> z1,
                               std::span<const Word> x2, std::span<const Word> z2) {
    // Per qubit, P1 * P2 = i^g P, g in {-1, 0, +1}. Count the +1 and -1
    // positions word by word.
    int total = 0;
    for (std::size_t k = 0; k < x1.size(); ++k) {
        const Word a = x1[k], b = z1[k], c = x2[k], d = z2[k];
        const Word plus = (a & b & d & ~c) | (a & ~b & c & d) | (~a & b & c & ~d);
        const Word minus = (a & b & c & ~d) | (a & ~b & ~c & d) | (~a & b & c & d);
        total += std::popcount(plus) - std::popcount(minus);
    }
    return ((total % 4) + 4) % 4;
}

StabilizerTableau::StabilizerTableau(std::size_t n_qubits)
    : n_(n_qubits), xs_(2 * n_qubits, n_qubits), zs_(2 * n_qubits, n_qubits), signs_(2 * n_qubits, 0) {}

StabilizerTableau StabilizerTableau::product_state(std::size_t n_qubits) {
    if (n_qubits == 0) {
        throw std::invalid_argument("a stabilizer state needs at least one qubit");
    }
    StabilizerTableau t(n_qubits);
    for (std::size_t q = 0; q < n_qubits; ++q) {
        t.xs_.set(q, q, true);
        t.zs_.set(n_qubits + q, q, true);
    }
    return t;
}

StabilizerTableau StabilizerTableau::from_stabilizers(const BitMatrix &paulis, const std::vector<bool> &signs) {
    const std::size_t n = paulis.rows();
    if (n == 0 || paulis.cols() != 2 * n || signs.size() != n) {
        throw std::invalid_argument("stabilizer description must be L x 2L with L signs");
    }
    StabilizerTableau t(n);
    for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t q = 0; q < n; ++q) {
            t.xs_.set(n + g, q, paulis.get(g, q));
            t.zs_.set(n + g, q, paulis.get(g, n + q));
        }
        t.signs_[n + g] = signs[g];
    }

    // Destabilizers: solve <d_i, s_j> = delta_ij. With s_j written as
    // (x | z), the symplectic product with d = (dx | dz) is z_j.dx + x_j.dz,
    // so the coefficient rows are s_j with halves swapped.
    BitMatrix system(n, 3 * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t q = 0; q < n; ++q) {
            system.set(j, q, paulis.get(j, n + q));
            system.set(j, n + q, paulis.get(j, q));
        }
        system.set(j, 2 * n + j, true);
    }
    std::vector<std::size_t> pivots = gf2_reduce(system);
    if (pivots.size() != n || pivots.back() >= 2 * n) {
        throw std::invalid_argument("stabilizer generators are not independent");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < n; ++r) {
            if (system.get(r, 2 * n + i)) {
                const std::size_t col = pivots[r];
                if (col < n) {
                    t.xs_.flip(i, col);
                } else {
                    t.zs_.flip(i, col - n);
                }
            }
        }
    }
    // Make destabilizers mutually commute: adding s_j to d_i toggles only
    // <d_i, d_j>.
    auto symplectic = [&t](std::size_t a, std::size_t b) {
        std::size_t count = 0;
        auto xa = t.xs_.row(a), za = t.zs_.row(a), xb = t.xs_.row(b), zb = t.zs_.row(b);
        for (std::size_t k = 0; k < xa.size(); ++k) {
            count += static_cast<std::size_t>(std::popcount((xa[k] & zb[k]) ^ (za[k] & xb[k])));
        }
        return (count & 1u) != 0;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (symplectic(i, j)) {
                t.xs_.xor_row(i, n + j);
                t.zs_.xor_row(i, n + j);
            }
        }
    }
    if (auto problem = t.check_invariants()) {
        throw std::invalid_argument("invalid stabilizer state: " + *problem);
    }
    return t;
}

StabilizerTableau StabilizerTableau::from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line.rfind("L=", 0) != 0) {
        throw std::invalid_argument("tableau text must start with \"L=<n>\"");
    }
    std::size_t n = 0;
    try {
        std::size_t used = 0;
        n = std::stoul(line.substr(2), &used);
        if (used != line.size() - 2) {
            throw std::invalid_argument("trailing characters");
        }
    } catch (const std::exception &) {
        throw std::invalid_argument("bad tableau header: " + line);
    }
    if (n == 0) {
        throw std::invalid_argument("tableau needs at least one qubit");
    }
    BitMatrix paulis(n, 2 * n);
    std::vector<bool> signs(n);
    for (std::size_t g = 0; g < n; ++g) {
        if (!std::getline(in, line) || line.size() != 2 * n + 1) {
            throw std::invalid_argument("tableau row " + std::to_string(g) + " must have " +
                                        std::to_string(2 * n + 1) + " characters");
        }
        for (std::size_t c = 0; c <= 2 * n; ++c) {
            if (line[c] != '0' && line[c] != '1') {
                throw std::invalid_argument("tableau rows may only contain 0 and 1");
            }
        }
        for (std::size_t c = 0; c < 2 * n; ++c) {
            paulis.set(g, c, line[c] == '1');
        }
        signs[g] = line[2 * n] == '1';
    }
    return from_stabilizers(paulis, signs);
}

BitMatrix StabilizerTableau::stabilizer_matrix() const {
    BitMatrix m(n_, 2 * n_);
    for (std::size_t g = 0; g < n_; ++g) {
        for (std::size_t q = 0; q < n_; ++q) {
            if (xs_.get(n_ + g, q)) {
                m.set(g, q, true);
            }
            if (zs_.get(n_ + g, q)) {
                m.set(g, n_ + q, true);
            }
        }
    }
    return m;
}

std::string StabilizerTableau::generator_string(std::size_t generator) const {
    std::string out(1, sign(generator) ? '-' : '+');
    for (std::size_t q = 0; q < n_; ++q) {
        const bool xb = x(generator, q), zb = z(generator, q);
        out += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    return out;
}

std::string StabilizerTableau::to_text() const {
    std::string out = "L=" + std::to_string(n_) + "\n";
    out.reserve(out.size() + n_ * (2 * n_ + 2));
    for (std::size_t g = 0; g < n_; ++g) {
        for (std::size_t q = 0; q < n_; ++q) {
            out += x(g, q) ? '1' : '0';
        }
        for (std::size_t q = 0; q < n_; ++q) {
            out += z(g, q) ? '1' : '0';
        }
        out += sign(g) ? '1' : '0';
        out += '\n';
    }
    return out;
}

void StabilizerTableau::check_qubit(std::size_t q) const {
    if (q >= n_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(n_) +
                                " qubits");
    }
}

void StabilizerTableau::apply(const TwoQubitClifford &gate, std::size_t i, std::size_t j) {
    check_qubit(i);
    check_qubit(j);
    if (i == j) {
        throw std::invalid_argument("two-qubit gate needs distinct qubits");
    }
    const std::size_t wi = i / kWordBits, wj = j / kWordBits;
    const unsigned bi = i % kWordBits, bj = j % kWordBits;
    const Word mi = Word{1} << bi, mj = Word{1} << bj;
    for (std::size_t r = 0; r < 2 * n_; ++r) {
        Word *xr = xs_.row(r).data();
        Word *zr = zs_.row(r).data();
        const PauliPattern in = static_cast<PauliPattern>(((xr[wi] >> bi) & 1u) | (((zr[wi] >> bi) & 1u) << 1) |
                                                          (((xr[wj] >> bj) & 1u) << 2) |
                                                          (((zr[wj] >> bj) & 1u) << 3));
        if (in == 0) {
            continue;
        }
        bool minus = false;
        const PauliPattern out = gate.conjugate(in, minus);
        xr[wi] = pattern_x1(out) ? (xr[wi] | mi) : (xr[wi] & ~mi);
        zr[wi] = pattern_z1(out) ? (zr[wi] | mi) : (zr[wi] & ~mi);
        xr[wj] = pattern_x2(out) ? (xr[wj] | mj) : (xr[wj] & ~mj);
        zr[wj] = pattern_z2(out) ? (zr[wj] | mj) : (zr[wj] & ~mj);
        signs_[r] ^= static_cast<std::uint8_t>(minus);
    }
}

std::optional<std::size_t> StabilizerTableau::first_anticommuting_stabilizer(std::size_t q) const {
    for (std::size_t r = n_; r < 2 * n_; ++r) {
        if (xs_.get(r, q)) {
            return r;
        }
    }
    return std::nullopt;
}

void StabilizerTableau::multiply_row(std::size_t dst, std::size_t src) {
    const int phase = pauli_string_product_phase(xs_.row(dst), zs_.row(dst), xs_.row(src), zs_.row(src));
    const int total = (2 * signs_[dst] + 2 * signs_[src] + phase) % 4;
    signs_[dst] = static_cast<std::uint8_t>(total >= 2);
    xs_.xor_row(dst, src);
    zs_.xor_row(dst, src);
}

bool StabilizerTableau::deterministic_outcome(std::size_t q) const {
    // Z_q is (up to sign) the product of the stabilizers whose destabilizer
    // anticommutes with Z_q.
    const std::size_t words = xs_.words_per_row();
    std::vector<Word> sx(words, 0), sz(words, 0);
    int sign2 = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        if (!xs_.get(i, q)) {
            continue;
        }
        const std::size_t src = n_ + i;
        sign2 += pauli_string_product_phase(sx, sz, xs_.row(src), zs_.row(src)) + 2 * signs_[src];
        xor_into(sx, xs_.row(src));
        xor_into(sz, zs_.row(src));
    }
    return (sign2 % 4) >= 2;
}

void StabilizerTableau::collapse(std::size_t q, std::size_t pivot_row, bool value) {
    for (std::size_t r = 0; r < 2 * n_; ++r) {
        if (r != pivot_row && xs_.get(r, q)) {
            multiply_row(r, pivot_row);
        }
    }
    const std::size_t destab = pivot_row - n_;
    std::copy(xs_.row(pivot_row).begin(), xs_.row(pivot_row).end(), xs_.row(destab).begin());
    std::copy(zs_.row(pivot_row).begin(), zs_.row(pivot_row).end(), zs_.row(destab).begin());
    signs_[destab] = signs_[pivot_row];
    std::fill(xs_.row(pivot_row).begin(), xs_.row(pivot_row).end(), Word{0});
    std::fill(zs_.row(pivot_row).begin(), zs_.row(pivot_row).end(), Word{0});
    zs_.set(pivot_row, q, true);
    signs_[pivot_row] = static_cast<std::uint8_t>(value);
}

std::optional<std::string> StabilizerTableau::check_invariants() const {
    auto anticommute = [this](std::size_t a, std::size_t b) {
        std::size_t count = 0;
        auto xa = xs_.row(a), za = zs_.row(a), xb = xs_.row(b), zb = zs_.row(b);
        for (std::size_t k = 0; k < xa.size(); ++k) {
            count += static_cast<std::size_t>(std::popcount((xa[k] & zb[k]) ^ (za[k] & xb[k])));
        }
        return (count & 1u) != 0;
    };
    for (std::size_t a = n_; a < 2 * n_; ++a) {
        for (std::size_t b = a + 1; b < 2 * n_; ++b) {
            if (anticommute(a, b)) {
                return "stabilizers " + std::to_string(a - n_) + " and " + std::to_string(b - n_) +
                       " anticommute";
            }
        }
    }
    if (gf2_rank(stabilizer_matrix()) != n_) {
        return "stabilizer generators are not independent";
    }
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t r = 0; r < 2 * n_; ++r) {
            if (r == i) {
                continue;
            }
            const bool expected = (r == n_ + i);
            if (anticommute(i, r) != expected) {
                return "destabilizer " + std::to_string(i) + " is not paired with its stabilizer";
            }
        }
    }
    return std::nullopt;
}

std::size_t StabilizerTableau::subset_entropy(const QubitSet &subset) const {
    if (subset.empty()) {
        throw std::invalid_argument("subset entropy needs a nonempty qubit set");
    }
    subset.check_within(n_);
    // Columns of the stabilizer matrix restricted to the subset, packed over
    // generators; column rank equals row rank.
    const std::size_t words = words_for_bits(n_);
    std::vector<Word> columns(2 * subset.size() * words, 0);
    std::size_t c = 0;
    for (Qubit q : subset) {
        Word *xc = columns.data() + (2 * c) * words;
        Word *zc = columns.data() + (2 * c + 1) * words;
        for (std::size_t g = 0; g < n_; ++g) {
            const Word bit = Word{1} << (g % kWordBits);
            if (xs_.get(n_ + g, q)) {
                xc[g / kWordBits] |= bit;
            }
            if (zs_.get(n_ + g, q)) {
                zc[g / kWordBits] |= bit;
            }
        }
        ++c;
    }
    return gf2_rank_inplace(columns, words) - subset.size();
}

std::size_t StabilizerTableau::total_correlation(std::span<const QubitSet> parts) const {
    if (parts.empty()) {
        throw std::invalid_argument("total correlation needs at least one part");
    }
    QubitSet all = QubitSet::disjoint_union(parts);
    std::size_t sum = 0;
    for (const QubitSet &part : parts) {
        sum += subset_entropy(part);
    }
    return sum - subset_entropy(all);
}

}  // namespace entdepth
