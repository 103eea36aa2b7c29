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
#include <cstdint>
#include <string>

#include "entdepth/structure.hpp"
#include "entdepth/tableau.hpp"

namespace entdepth {

struct CoupledCheckOptions {
    std::size_t n_qubits = 4;
    double p = 0.0;
    /// 0 means 4L.
    std::size_t steps = 0;
    std::uint64_t seed = 0;
    bool periodic = false;
    /// Also compare decoupled-cluster partitions at box sizes 1 and 2.
    bool compare_structures = true;
    /// Added to every tableau entropy before comparison. Nonzero values exist
    /// only to demonstrate that the check catches a broken entropy formula.
    int entropy_offset = 0;
};

struct CoupledCheckResult {
    bool passed = true;
    std::string failure;
    std::size_t subsets_compared = 0;
    std::size_t measurements = 0;
    std::size_t random_outcomes = 0;
    /// Final tableau; equal to run_realization() for the same circuit config.
    StabilizerTableau final_state = StabilizerTableau::product_state(1);
};

/// Drives a tableau and a statevector through the same brickwork circuit,
/// with one random stream deciding gates and measurement sites and the
/// tableau's outcome coins replayed into the statevector. Checks outcome
/// agreement at every measurement, then compares entropies of every proper
/// subset and (optionally) the decoupled-cluster partitions.
CoupledCheckResult run_coupled_check(const CoupledCheckOptions &options);

}  // namespace entdepth
