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

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "entdepth/pauli.hpp"

namespace entdepth {

/// A two-qubit Clifford unitary modulo global phase, stored by its
/// conjugation action: the images of X1, Z1, X2, Z2.
///
/// `images()[k]` is the image of basis generator k as a PauliPattern
/// (rows of the 4x4 symplectic matrix); bit k of `sign_flips()` is set when
/// that image carries a minus sign.
class TwoQubitClifford {
   public:
    /// Number of two-qubit Cliffords modulo global phase (720 * 16).
    static constexpr std::size_t kGroupOrder = 11520;
    /// |Sp(4, 2)|.
    static constexpr std::size_t kSymplecticOrder = 720;

    TwoQubitClifford();  // identity
    TwoQubitClifford(std::array<PauliPattern, 4> images, std::uint8_t sign_flips);

    static TwoQubitClifford identity() { return {}; }
    static TwoQubitClifford hadamard_first();
    static TwoQubitClifford hadamard_second();
    static TwoQubitClifford phase_first();
    static TwoQubitClifford phase_second();
    /// Control on the first qubit, target on the second.
    static TwoQubitClifford cnot();
    static TwoQubitClifford swap();
    /// Pauli operator P(pattern) as a Clifford (flips signs, no permutation).
    static TwoQubitClifford pauli(PauliPattern pattern);

    /// Element `index` in [0, kGroupOrder) of a fixed enumeration of the group.
    static TwoQubitClifford from_index(std::size_t index);

    const std::array<PauliPattern, 4> &images() const { return images_; }
    std::uint8_t sign_flips() const { return sign_flips_; }

    /// Conjugation image of an arbitrary Hermitian Pauli pattern; returns the
    /// output pattern and writes its sign bit.
    PauliPattern conjugate(PauliPattern in, bool &minus) const {
        const std::uint8_t entry = table_[in];
        minus = ((entry >> 4) & 1u) != static_cast<bool>(std::popcount(static_cast<unsigned>(in & sign_flips_)) & 1);
        return entry & 0xFu;
    }

    /// First `*this`, then `next` (conjugation composition).
    TwoQubitClifford then(const TwoQubitClifford &next) const;

    /// M Omega M^T == Omega over GF(2).
    bool is_symplectic() const;

    /// Position of the symplectic part in the fixed enumeration of Sp(4,2).
    std::size_t symplectic_index() const;

    std::string describe() const;

    bool operator==(const TwoQubitClifford &other) const {
        return images_ == other.images_ && sign_flips_ == other.sign_flips_;
    }

   private:
    void build_table();

    std::array<PauliPattern, 4> images_;
    std::uint8_t sign_flips_;
    // For each input pattern: low nibble = output pattern, bit 4 = sign of the
    // image when all four basis images are taken with a plus sign.
    std::array<std::uint8_t, 16> table_{};
};

/// Draws a uniformly random two-qubit Clifford (modulo global phase).
template <typename Rng>
TwoQubitClifford sample_two_qubit_clifford(Rng &rng) {
    std::uniform_int_distribution<std::size_t> pick(0, TwoQubitClifford::kGroupOrder - 1);
    return TwoQubitClifford::from_index(pick(rng));
}

}  // namespace entdepth
