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

#include <cstdint>

namespace entdepth {

// Single-qubit Pauli encoding shared across the project: x bit, z bit, with
// (1,1) meaning Y = i X Z. Hermitian Pauli strings carry a separate sign bit.

/// Exponent (mod 4, as -1/0/+1) of i in P(x1,z1) * P(x2,z2) = i^g P(x1^x2, z1^z2).
constexpr int pauli_product_phase(bool x1, bool z1, bool x2, bool z2) {
    if (!x1 && !z1) {
        return 0;
    }
    if (x1 && z1) {
        return static_cast<int>(z2) - static_cast<int>(x2);
    }
    if (x1) {
        return z2 ? (x2 ? 1 : -1) : 0;
    }
    return x2 ? (z2 ? -1 : 1) : 0;
}

/// Packed two-qubit Pauli pattern: bit0 = x on first qubit, bit1 = z on first,
/// bit2 = x on second, bit3 = z on second.
using PauliPattern = std::uint8_t;

constexpr bool pattern_x1(PauliPattern p) { return p & 1u; }
constexpr bool pattern_z1(PauliPattern p) { return (p >> 1) & 1u; }
constexpr bool pattern_x2(PauliPattern p) { return (p >> 2) & 1u; }
constexpr bool pattern_z2(PauliPattern p) { return (p >> 3) & 1u; }

/// Symplectic inner product of two-qubit patterns (1 iff they anticommute).
constexpr bool pattern_anticommute(PauliPattern a, PauliPattern b) {
    bool s = (pattern_x1(a) && pattern_z1(b)) != (pattern_z1(a) && pattern_x1(b));
    bool t = (pattern_x2(a) && pattern_z2(b)) != (pattern_z2(a) && pattern_x2(b));
    return s != t;
}

}  // namespace entdepth
