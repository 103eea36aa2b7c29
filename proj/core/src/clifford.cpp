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

#include "entdepth/clifford.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace entdepth {

namespace {

constexpr std::array<PauliPattern, 4> kBasis{0b0001, 0b0010, 0b0100, 0b1000};

std::uint16_t encode(const std::array<PauliPattern, 4> &images) {
    return static_cast<std::uint16_t>(images[0] | (images[1] << 4) | (images[2] << 8) | (images[3] << 12));
}

std::array<PauliPattern, 4> decode(std::uint16_t code) {
    return {static_cast<PauliPattern>(code & 0xF), static_cast<PauliPattern>((code >> 4) & 0xF),
            static_cast<PauliPattern>((code >> 8) & 0xF), static_cast<PauliPattern>((code >> 12) & 0xF)};
}

bool preserves_form(const std::array<PauliPattern, 4> &images) {
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = a + 1; b < 4; ++b) {
            if (pattern_anticommute(images[a], images[b]) != pattern_anticommute(kBasis[a], kBasis[b])) {
                return false;
            }
        }
    }
    return true;
}

// Sorted encodings of every element of Sp(4,2), found by filtering all 2^16
// candidate matrices.
const std::vector<std::uint16_t> &symplectic_codes() {
    static const std::vector<std::uint16_t> codes = [] {
        std::vector<std::uint16_t> out;
        out.reserve(TwoQubitClifford::kSymplecticOrder);
        for (std::uint32_t code = 0; code < (1u << 16); ++code) {
            if (preserves_form(decode(static_cast<std::uint16_t>(code)))) {
                out.push_back(static_cast<std::uint16_t>(code));
            }
        }
        if (out.size() != TwoQubitClifford::kSymplecticOrder) {
            throw std::logic_error("Sp(4,2) enumeration produced the wrong order");
        }
        return out;
    }();
    return codes;
}

const std::vector<TwoQubitClifford> &group_elements() {
    static const std::vector<TwoQubitClifford> elements = [] {
        std::vector<TwoQubitClifford> out;
        out.reserve(TwoQubitClifford::kGroupOrder);
        for (std::uint16_t code : symplectic_codes()) {
            for (std::uint8_t signs = 0; signs < 16; ++signs) {
                out.emplace_back(decode(code), signs);
            }
        }
        return out;
    }();
    return elements;
}

int two_qubit_phase(PauliPattern a, PauliPattern b) {
    return pauli_product_phase(pattern_x1(a), pattern_z1(a), pattern_x1(b), pattern_z1(b)) +
           pauli_product_phase(pattern_x2(a), pattern_z2(a), pattern_x2(b), pattern_z2(b));
}

char pauli_char(bool x, bool z) {
    if (x && z) {
        return 'Y';
    }
    if (x) {
        return 'X';
    }
    return z ? 'Z' : 'I';
}

}  // namespace

TwoQubitClifford::TwoQubitClifford() : images_(kBasis), sign_flips_(0) { build_table(); }

TwoQubitClifford::TwoQubitClifford(std::array<PauliPattern, 4> images, std::uint8_t sign_flips)
    : images_(images), sign_flips_(sign_flips & 0xF) {
    for (PauliPattern &p : images_) {
        p &= 0xF;
    }
    if (!preserves_form(images_)) {
        throw std::invalid_argument("two-qubit Clifford images do not preserve the symplectic form");
    }
    build_table();
}

void TwoQubitClifford::build_table() {
    for (std::uint8_t in = 0; in < 16; ++in) {
        int phase = (pattern_x1(in) && pattern_z1(in) ? 1 : 0) + (pattern_x2(in) && pattern_z2(in) ? 1 : 0);
        PauliPattern acc = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            if ((in >> k) & 1u) {
                phase += two_qubit_phase(acc, images_[k]);
                acc ^= images_[k];
            }
        }
        phase = ((phase % 4) + 4) % 4;
        // Conjugation maps Hermitian Paulis to Hermitian Paulis.
        assert(phase % 2 == 0);
        table_[in] = static_cast<std::uint8_t>(acc | (phase == 2 ? 0x10 : 0));
    }
}

TwoQubitClifford TwoQubitClifford::hadamard_first() { return {{0b0010, 0b0001, 0b0100, 0b1000}, 0}; }
TwoQubitClifford TwoQubitClifford::hadamard_second() { return {{0b0001, 0b0010, 0b1000, 0b0100}, 0}; }
TwoQubitClifford TwoQubitClifford::phase_first() { return {{0b0011, 0b0010, 0b0100, 0b1000}, 0}; }
TwoQubitClifford TwoQubitClifford::phase_second() { return {{0b0001, 0b0010, 0b1100, 0b1000}, 0}; }
TwoQubitClifford TwoQubitClifford::cnot() { return {{0b0101, 0b0010, 0b0100, 0b1010}, 0}; }
TwoQubitClifford TwoQubitClifford::swap() { return {{0b0100, 0b1000, 0b0001, 0b0010}, 0}; }

TwoQubitClifford TwoQubitClifford::pauli(PauliPattern pattern) {
    std::uint8_t flips = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        if (pattern_anticommute(pattern, kBasis[k])) {
            flips |= static_cast<std::uint8_t>(1u << k);
        }
    }
    return {kBasis, flips};
}

TwoQubitClifford TwoQubitClifford::from_index(std::size_t index) {
    const auto &all = group_elements();
    if (index >= all.size()) {
        throw std::out_of_range("two-qubit Clifford index out of range");
    }
    return all[index];
}

TwoQubitClifford TwoQubitClifford::then(const TwoQubitClifford &next) const {
    std::array<PauliPattern, 4> images{};
    std::uint8_t flips = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        bool minus = false;
        images[k] = next.conjugate(images_[k], minus);
        if (minus != static_cast<bool>((sign_flips_ >> k) & 1u)) {
            flips |= static_cast<std::uint8_t>(1u << k);
        }
    }
    return {images, flips};
}

bool TwoQubitClifford::is_symplectic() const { return preserves_form(images_); }

std::size_t TwoQubitClifford::symplectic_index() const {
    const auto &codes = symplectic_codes();
    auto it = std::lower_bound(codes.begin(), codes.end(), encode(images_));
    return static_cast<std::size_t>(it - codes.begin());
}

std::string TwoQubitClifford::describe() const {
    static constexpr const char *kNames[4] = {"X1", "Z1", "X2", "Z2"};
    std::ostringstream out;
    for (std::size_t k = 0; k < 4; ++k) {
        if (k > 0) {
            out << ' ';
        }
        PauliPattern p = images_[k];
        out << kNames[k] << "->" << (((sign_flips_ >> k) & 1u) ? '-' : '+')
            << pauli_char(pattern_x1(p), pattern_z1(p)) << pauli_char(pattern_x2(p), pattern_z2(p));
    }
    return out.str();
}

}  // namespace entdepth
