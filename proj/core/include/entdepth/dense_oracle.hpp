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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <vector>

#include <Eigen/Dense>

#include "entdepth/clifford.hpp"
#include "entdepth/qubit_set.hpp"
#include "entdepth/structure.hpp"
#include "entdepth/tableau.hpp"

namespace entdepth {

using Complex = std::complex<double>;
using Matrix4 = Eigen::Matrix4cd;

/// Brute-force statevector on at most kMaxQubits qubits. Basis index bit q
/// is the Z value of qubit q.
class DenseState {
   public:
    static constexpr std::size_t kMaxQubits = 10;

    /// |0...0>. Throws for n == 0 or n > kMaxQubits.
    static DenseState zero_state(std::size_t n_qubits);

    std::size_t n_qubits() const { return n_; }
    const std::vector<Complex> &amplitudes() const { return amps_; }
    std::vector<Complex> &amplitudes() { return amps_; }
    double norm() const;

    /// Applies a 4x4 unitary whose basis index is (bit of i) + 2 * (bit of j).
    void apply(const Matrix4 &unitary, std::size_t i, std::size_t j);

    /// Multiplies by a signed Pauli string given per qubit as (x, z) bits.
    void apply_pauli(const std::vector<bool> &xs, const std::vector<bool> &zs, bool minus);

    /// Probability of reading 0 on qubit q.
    double probability_zero(std::size_t q) const;
    /// Projects qubit q onto |value> and renormalises.
    void project(std::size_t q, bool value);

   private:
    std::size_t n_ = 0;
    std::vector<Complex> amps_;
};

/// Hermitian Pauli matrix for a two-qubit pattern (qubit 1 is the low bit).
Matrix4 pauli_matrix(PauliPattern pattern, bool minus = false);

/// A unitary whose conjugation action matches `gate`, up to global phase.
/// Column |b1 b2> is X1^b1 X2^b2 (in the image frame) applied to the joint
/// +1 eigenvector of the images of Z1 and Z2.
Matrix4 clifford_to_unitary(const TwoQubitClifford &gate);

/// Von Neumann entropy (bits) of the reduced state on `subset`. The spectrum
/// is taken from whichever of rho_A and rho_complement is smaller; the two
/// share their nonzero eigenvalues. Eigenvalues below 1e-12 count as zero.
double oracle_entropy(const DenseState &state, const QubitSet &subset);

/// Born-rule Z measurement. Consumes no draw when the outcome is certain,
/// the low bit of one draw when it is a fair coin (as measure_z on a
/// tableau does), and one draw as a uniform variate otherwise.
template <typename Rng>
MeasurementOutcome oracle_measure_z(DenseState &state, std::size_t q, Rng &rng) {
    constexpr double kTol = 1e-9;
    const double p0 = state.probability_zero(q);
    if (p0 > 1.0 - kTol) {
        state.project(q, false);
        return {false, true};
    }
    if (p0 < kTol) {
        state.project(q, true);
        return {true, true};
    }
    const auto draw = static_cast<std::uint64_t>(rng());
    bool value;
    if (std::abs(p0 - 0.5) < kTol) {
        value = (draw & 1u) != 0;
    } else {
        value = static_cast<double>(draw >> 11) * 0x1.0p-53 >= p0;
    }
    state.project(q, value);
    return {value, false};
}

/// Statevector of a stabilizer state (L <= kMaxQubits), obtained by
/// projecting a computational basis state onto the stabilizer group.
DenseState dense_from_tableau(const StabilizerTableau &state);

/// EntropySource backed by a statevector; entropies are rounded to integers
/// and must lie within 1e-9 of one. Results are memoised per subset.
class DenseEntropy final : public EntropySource {
   public:
    explicit DenseEntropy(const DenseState &state) : state_(state) {}

    std::size_t n_qubits() const override { return state_.n_qubits(); }
    std::size_t entropy(const QubitSet &subset) const override;

   private:
    const DenseState &state_;
    mutable std::mutex mutex_;
    mutable std::map<std::uint32_t, std::size_t> cache_;
};

}  // namespace entdepth
