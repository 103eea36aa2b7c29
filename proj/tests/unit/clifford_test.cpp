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

#include <cmath>
#include <queue>
#include <random>
#include <set>

#include "gtest/gtest.h"

using namespace entdepth;

namespace {

std::uint32_t key(const TwoQubitClifford &c) {
    std::uint32_t k = c.sign_flips();
    for (std::size_t i = 0; i < 4; ++i) {
        k |= static_cast<std::uint32_t>(c.images()[i]) << (4 + 4 * i);
    }
    return k;
}

// Closure of the group generated by H, S on either qubit and CNOT.
std::set<std::uint32_t> closure() {
    const std::vector<TwoQubitClifford> gens = {TwoQubitClifford::hadamard_first(), TwoQubitClifford::hadamard_second(),
                                                TwoQubitClifford::phase_first(), TwoQubitClifford::phase_second(),
                                                TwoQubitClifford::cnot()};
    std::set<std::uint32_t> seen{key(TwoQubitClifford::identity())};
    std::queue<TwoQubitClifford> frontier;
    frontier.push(TwoQubitClifford::identity());
    while (!frontier.empty()) {
        TwoQubitClifford c = frontier.front();
        frontier.pop();
        for (const auto &g : gens) {
            TwoQubitClifford next = c.then(g);
            if (seen.insert(key(next)).second) {
                frontier.push(next);
            }
        }
    }
    return seen;
}

// Upper chi-square quantile via the Wilson-Hilferty approximation.
double chi_square_critical(double dof, double z) {
    const double a = 2.0 / (9.0 * dof);
    return dof * std::pow(1.0 - a + z * std::sqrt(a), 3.0);
}

}  // namespace

TEST(TwoQubitClifford, GroupGeneratedByHSCnotHas11520Elements) {
    const auto elements = closure();
    EXPECT_EQ(elements.size(), TwoQubitClifford::kGroupOrder);
    std::set<std::uint32_t> symplectic;
    for (std::uint32_t k : elements) {
        symplectic.insert(k >> 4);
    }
    EXPECT_EQ(symplectic.size(), TwoQubitClifford::kSymplecticOrder);
}

TEST(TwoQubitClifford, EnumerationCoversTheClosure) {
    const auto elements = closure();
    std::set<std::uint32_t> enumerated;
    for (std::size_t i = 0; i < TwoQubitClifford::kGroupOrder; ++i) {
        const TwoQubitClifford c = TwoQubitClifford::from_index(i);
        EXPECT_TRUE(c.is_symplectic());
        enumerated.insert(key(c));
    }
    EXPECT_EQ(enumerated, elements);
    EXPECT_THROW(TwoQubitClifford::from_index(TwoQubitClifford::kGroupOrder), std::out_of_range);
}

TEST(TwoQubitClifford, IdentityFixesGenerators) {
    const TwoQubitClifford id = TwoQubitClifford::identity();
    const PauliPattern basis[4] = {0b0001, 0b0010, 0b0100, 0b1000};
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(id.images()[k], basis[k]);
    }
    EXPECT_EQ(id.sign_flips(), 0);
    for (PauliPattern p = 0; p < 16; ++p) {
        bool minus = true;
        EXPECT_EQ(id.conjugate(p, minus), p);
        EXPECT_FALSE(minus);
    }
}

TEST(TwoQubitClifford, RejectsNonSymplecticImages) {
    EXPECT_THROW(TwoQubitClifford({0b0001, 0b0001, 0b0100, 0b1000}, 0), std::invalid_argument);
}

TEST(TwoQubitClifford, PhaseGateSendsYToMinusX) {
    bool minus = false;
    EXPECT_EQ(TwoQubitClifford::phase_first().conjugate(0b0011, minus), 0b0001);
    EXPECT_TRUE(minus);
}

TEST(TwoQubitClifford, CnotConjugatesYIToYX) {
    bool minus = false;
    EXPECT_EQ(TwoQubitClifford::cnot().conjugate(0b0011, minus), 0b0111);
    EXPECT_FALSE(minus);
    // Y1 Y2 -> -X1 Z2
    EXPECT_EQ(TwoQubitClifford::cnot().conjugate(0b1111, minus), 0b1001);
    EXPECT_TRUE(minus);
}

TEST(TwoQubitClifford, CompositionIsAssociative) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
        const auto a = sample_two_qubit_clifford(rng), b = sample_two_qubit_clifford(rng),
                   c = sample_two_qubit_clifford(rng);
        EXPECT_EQ(a.then(b).then(c), a.then(b.then(c)));
    }
}

TEST(TwoQubitClifford, SymplecticClassesAreUniform) {
    std::mt19937_64 rng(20240601);
    constexpr std::size_t kSamples = 1'000'000;
    std::vector<std::size_t> sym_counts(TwoQubitClifford::kSymplecticOrder, 0);
    std::vector<std::size_t> sign_counts(16, 0);
    for (std::size_t k = 0; k < kSamples; ++k) {
        const TwoQubitClifford c = sample_two_qubit_clifford(rng);
        ++sym_counts[c.symplectic_index()];
        ++sign_counts[c.sign_flips()];
    }
    auto chi2 = [](const std::vector<std::size_t> &counts, double expected) {
        double s = 0.0;
        for (std::size_t c : counts) {
            s += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
        }
        return s;
    };
    const double z99 = 2.3263478740;
    EXPECT_LT(chi2(sym_counts, kSamples / 720.0), chi_square_critical(719, z99));
    EXPECT_LT(chi2(sign_counts, kSamples / 16.0), chi_square_critical(15, z99));
}
