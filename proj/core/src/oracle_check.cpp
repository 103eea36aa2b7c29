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

#include "entdepth/oracle_check.hpp"

#include <cmath>
#include <deque>
#include <sstream>

#include "entdepth/circuit.hpp"
#include "entdepth/dense_oracle.hpp"

namespace entdepth {

namespace {

// Forwards draws from the shared stream and remembers them.
struct RecordingRng {
    using result_type = Rng::result_type;
    static constexpr result_type min() { return Rng::min(); }
    static constexpr result_type max() { return Rng::max(); }
    result_type operator()() {
        result_type v = inner();
        tape.push_back(v);
        return v;
    }
    Rng &inner;
    std::deque<result_type> &tape;
};

// Hands back recorded draws; running dry means the two simulators disagree
// on whether an outcome was random.
struct ReplayRng {
    using result_type = Rng::result_type;
    static constexpr result_type min() { return Rng::min(); }
    static constexpr result_type max() { return Rng::max(); }
    result_type operator()() {
        if (tape.empty()) {
            starved = true;
            return 0;
        }
        result_type v = tape.front();
        tape.pop_front();
        return v;
    }
    std::deque<result_type> &tape;
    bool starved = false;
};

std::string partition_string(const EntanglementStructure &s) {
    std::ostringstream out;
    for (const Cluster &c : s.final_clusters) {
        out << '{';
        bool first = true;
        for (Qubit q : c.qubits) {
            out << (first ? "" : ",") << q;
            first = false;
        }
        out << '}';
    }
    return out.str();
}

}  // namespace

CoupledCheckResult run_coupled_check(const CoupledCheckOptions &options) {
    CircuitConfig config;
    config.n_qubits = options.n_qubits;
    config.p = options.p;
    config.steps = options.steps;
    config.seed = options.seed;
    config.periodic = options.periodic;
    config.validate();
    const std::size_t n = config.n_qubits;

    CoupledCheckResult result;
    auto fail = [&result, &options](const std::string &what) {
        result.passed = false;
        std::ostringstream msg;
        msg << "L=" << options.n_qubits << " p=" << options.p << " seed=" << options.seed << ": " << what;
        result.failure = msg.str();
        return result;
    };

    Rng rng(config.seed);
    StabilizerTableau tableau = StabilizerTableau::product_state(n);
    DenseState dense = DenseState::zero_state(n);
    std::deque<Rng::result_type> tape;
    const auto odd = MonitoredCircuit::bonds(n, 1, config.periodic);
    const auto even = MonitoredCircuit::bonds(n, 2, config.periodic);

    for (std::size_t t = 1; t <= config.resolved_steps(); ++t) {
        for (const auto &[a, b] : (t % 2 == 1) ? odd : even) {
            const TwoQubitClifford gate = sample_two_qubit_clifford(rng);
            tableau.apply(gate, a, b);
            dense.apply(clifford_to_unitary(gate), a, b);
        }
        for (std::size_t q = 0; q < n; ++q) {
            if (!(uniform_unit(rng) < config.p)) {
                continue;
            }
            RecordingRng recorder{rng, tape};
            const MeasurementOutcome tab = tableau.measure_z(q, recorder);
            ReplayRng replay{tape};
            const MeasurementOutcome den = oracle_measure_z(dense, q, replay);
            ++result.measurements;
            if (!tab.was_deterministic) {
                ++result.random_outcomes;
            }
            if (replay.starved || !tape.empty() || tab != den) {
                std::ostringstream msg;
                msg << "measurement mismatch at step " << t << " qubit " << q << ": tableau=" << tab.value
                    << (tab.was_deterministic ? " (det)" : " (rand)") << " dense=" << den.value
                    << (den.was_deterministic ? " (det)" : " (rand)");
                return fail(msg.str());
            }
        }
        if (std::abs(dense.norm() - 1.0) > 1e-9) {
            return fail("statevector norm drifted at step " + std::to_string(t));
        }
    }
    result.final_state = tableau;

    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<Qubit> members;
        for (std::size_t q = 0; q < n; ++q) {
            if (mask & (1u << q)) {
                members.push_back(static_cast<Qubit>(q));
            }
        }
        const QubitSet subset(std::move(members));
        const long long tab = static_cast<long long>(tableau.subset_entropy(subset)) + options.entropy_offset;
        const double den = oracle_entropy(dense, subset);
        ++result.subsets_compared;
        if (std::abs(den - std::round(den)) > 1e-9 || static_cast<long long>(std::llround(den)) != tab) {
            std::ostringstream msg;
            msg << "entropy mismatch on subset mask " << mask << ": tableau=" << tab << " dense=" << den;
            return fail(msg.str());
        }
    }

    if (options.compare_structures) {
        for (std::size_t b : {std::size_t{1}, std::size_t{2}}) {
            if (b > n) {
                continue;
            }
            const auto elements = coarse_grain(n, b);
            const EntanglementStructure from_tableau = build_structure(tableau, elements);
            const DenseEntropy dense_entropy(dense);
            const EntanglementStructure from_dense = build_structure(dense_entropy, elements);
            if (partition_string(from_tableau) != partition_string(from_dense)) {
                return fail("cluster partitions differ at b=" + std::to_string(b) + ": tableau " +
                            partition_string(from_tableau) + " dense " + partition_string(from_dense));
            }
        }
    }
    return result;
}

}  // namespace entdepth
