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
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "entdepth/records.hpp"
#include "entdepth/structure.hpp"
#include "entdepth/tableau.hpp"

namespace entdepth {

using Rng = std::mt19937_64;

/// One realization of the brickwork monitored circuit.
struct CircuitConfig {
    std::size_t n_qubits = 0;
    /// Per-qubit, per-step measurement probability.
    double p = 0.0;
    /// Number of steps; 0 means 4L.
    std::size_t steps = 0;
    /// Seed of this realization's random stream (see realization_seed).
    std::uint64_t seed = 0;
    /// Adds the bond (L-1, 0) to the even-step layer when L is even.
    bool periodic = false;

    std::size_t resolved_steps() const { return steps == 0 ? 4 * n_qubits : steps; }
    /// Throws std::invalid_argument on L == 0 or p outside [0, 1].
    void validate() const;
};

/// Counter-based seed for realization `realization` at grid point
/// (p_index, l_index): independent of the order in which realizations run.
std::uint64_t realization_seed(std::uint64_t master_seed, std::size_t p_index, std::size_t l_index,
                               std::size_t realization);

/// Uniform draw in [0, 1) from the top 53 bits of one generator output.
inline double uniform_unit(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Brickwork circuit driven step by step. Step t (1-based) applies random
/// two-qubit Cliffords on bonds (0,1),(2,3),... when t is odd and on
/// (1,2),(3,4),... when t is even, then sweeps qubits 0..L-1 measuring each
/// in Z with probability p.
class MonitoredCircuit {
   public:
    explicit MonitoredCircuit(const CircuitConfig &config);

    void step();
    void run(std::size_t n_steps) {
        for (std::size_t k = 0; k < n_steps; ++k) {
            step();
        }
    }

    std::size_t steps_done() const { return steps_done_; }
    /// Qubits measured during the most recent step, ascending.
    const std::vector<Qubit> &last_measured() const { return last_measured_; }
    const StabilizerTableau &state() const { return state_; }
    StabilizerTableau &&take_state() && { return std::move(state_); }

    /// Bonds used at step t.
    static std::vector<std::pair<Qubit, Qubit>> bonds(std::size_t n_qubits, std::size_t t, bool periodic);

   private:
    CircuitConfig config_;
    Rng rng_;
    StabilizerTableau state_;
    std::size_t steps_done_ = 0;
    std::vector<std::pair<Qubit, Qubit>> odd_bonds_;
    std::vector<std::pair<Qubit, Qubit>> even_bonds_;
    std::vector<Qubit> last_measured_;
};

/// Runs config.resolved_steps() steps from the Z product state.
StabilizerTableau run_realization(const CircuitConfig &config);

/// Grid of (p, L) points and ensemble parameters.
struct EnsembleSpec {
    /// Reference location of the measurement-induced transition; metadata only.
    static constexpr double kCriticalP = 0.16;

    std::vector<double> p_values;
    std::vector<std::size_t> L_values;
    std::size_t n_realizations = 500;
    /// Box size used when extracting depth.
    std::size_t coarse_b = 2;
    std::uint64_t master_seed = 0;
    /// steps = steps_per_site * L.
    std::size_t steps_per_site = 4;
    bool periodic = false;
    StructureOptions structure;

    void validate() const;
};

struct ParallelOptions {
    /// 0 means std::thread::hardware_concurrency().
    std::size_t threads = 0;
};

struct EnsembleSummary {
    std::size_t realizations = 0;
    std::size_t records = 0;
    /// Structure builds in which a level w >= 3 merge occurred.
    std::size_t builds_with_escalation = 0;
    /// Structure builds finished by the exact factorization.
    std::size_t builds_with_factorization = 0;
    std::size_t structure_builds = 0;
};

/// Raised when a sink fails; reports how many realizations had completed.
class EnsembleAborted : public std::runtime_error {
   public:
    EnsembleAborted(const std::string &what, std::size_t completed, std::size_t total)
        : std::runtime_error(what), completed_(completed), total_(total) {}
    std::size_t completed() const { return completed_; }
    std::size_t total() const { return total_; }

   private:
    std::size_t completed_;
    std::size_t total_;
};

/// One DepthRecord per (p, L, realization), coarse-grained at spec.coarse_b.
EnsembleSummary run_ensemble(const EnsembleSpec &spec, RecordSink<DepthRecord> &sink,
                             const ParallelOptions &parallel = {});

/// One BoxCountRecord per (p, L, realization, b) for every b <= L in `box_sizes`.
EnsembleSummary run_boxcount_ensemble(const EnsembleSpec &spec, std::span<const std::size_t> box_sizes,
                                      RecordSink<BoxCountRecord> &sink, const ParallelOptions &parallel = {});

}  // namespace entdepth
