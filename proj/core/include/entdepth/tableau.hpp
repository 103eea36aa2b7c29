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
#include <string>
#include <string_view>
#include <vector>

#include "entdepth/bit_matrix.hpp"
#include "entdepth/clifford.hpp"
#include "entdepth/qubit_set.hpp"

namespace entdepth {

struct MeasurementOutcome {
    /// 0 for the +1 eigenvalue of Z, 1 for -1.
    bool value = false;
    bool was_deterministic = false;

    bool operator==(const MeasurementOutcome &) const = default;
};

/// Pure stabilizer state on L qubits.
///
/// Internally this is an Aaronson-Gottesman tableau: rows [0, L) hold
/// destabilizers and rows [L, 2L) the stabilizer generators. Only the
/// stabilizer half is part of the public state description; destabilizers
/// exist to make deterministic Z measurements O(L^2 / 64).
class StabilizerTableau {
   public:
    /// |0...0>, stabilized by +Z_0 ... +Z_{L-1}. Throws on L == 0.
    static StabilizerTableau product_state(std::size_t n_qubits);

    /// State stabilized by the given generators. `paulis` is L x 2L with row
    /// g = [x bits | z bits] of generator g, `signs[g]` set for a minus sign.
    /// Throws std::invalid_argument if the generators are not an independent
    /// commuting set of size L.
    static StabilizerTableau from_stabilizers(const BitMatrix &paulis, const std::vector<bool> &signs);

    /// Parses the text form written by to_text().
    static StabilizerTableau from_text(std::string_view text);

    std::size_t n_qubits() const { return n_; }

    bool x(std::size_t generator, std::size_t qubit) const { return xs_.get(n_ + generator, qubit); }
    bool z(std::size_t generator, std::size_t qubit) const { return zs_.get(n_ + generator, qubit); }
    bool sign(std::size_t generator) const { return signs_[n_ + generator]; }

    /// L x 2L matrix [x | z] of the stabilizer generators.
    BitMatrix stabilizer_matrix() const;

    /// Generator g as a signed Pauli string, e.g. "+XZI".
    std::string generator_string(std::size_t generator) const;

    /// "L=<n>" followed by one "<x bits><z bits><sign>" line per generator.
    std::string to_text() const;

    /// Conjugates the state by `gate` acting with its first qubit on `i` and
    /// its second on `j`.
    void apply(const TwoQubitClifford &gate, std::size_t i, std::size_t j);

    /// Projective Z measurement on qubit q. A random outcome consumes exactly
    /// one draw from `rng` (its lowest bit); a deterministic one consumes none.
    template <typename Rng>
    MeasurementOutcome measure_z(std::size_t q, Rng &rng) {
        check_qubit(q);
        std::optional<std::size_t> pivot = first_anticommuting_stabilizer(q);
        if (!pivot) {
            return {deterministic_outcome(q), true};
        }
        bool value = (rng() & 1u) != 0;
        collapse(q, *pivot, value);
        return {value, false};
    }

    /// Empty if the state is a valid pure stabilizer state; otherwise a
    /// description of the first violated invariant.
    std::optional<std::string> check_invariants() const;

    /// Entanglement entropy (bits) of qubit subset A:
    /// rank of the generators restricted to A's columns, minus |A|.
    /// Throws on an empty or out-of-range subset.
    std::size_t subset_entropy(const QubitSet &subset) const;

    /// Sum of part entropies minus the entropy of their union.
    std::size_t total_correlation(std::span<const QubitSet> parts) const;

    bool operator==(const StabilizerTableau &other) const = default;

   private:
    explicit StabilizerTableau(std::size_t n_qubits);

    void check_qubit(std::size_t q) const;
    std::optional<std::size_t> first_anticommuting_stabilizer(std::size_t q) const;
    bool deterministic_outcome(std::size_t q) const;
    void collapse(std::size_t q, std::size_t pivot_row, bool value);
    /// row(dst) <- row(dst) * row(src), tracking the sign of dst.
    void multiply_row(std::size_t dst, std::size_t src);

    std::size_t n_ = 0;
    BitMatrix xs_;
    BitMatrix zs_;
    std::vector<std::uint8_t> signs_;
};

/// Phase exponent (mod 4) of i in the product of two packed Pauli strings,
/// not counting their signs.
int pauli_string_product_phase(std::span<const Word> x1, std::span<const Word> z1,
                               std::span<const Word> x2, std::span<const Word> z2);

}  // namespace entdepth
