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

#include "entdepth/circuit.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "entdepth/analysis.hpp"

namespace entdepth {

void CircuitConfig::validate() const {
    if (n_qubits == 0) {
        throw std::invalid_argument("circuit needs at least one qubit");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("measurement probability must lie in [0, 1]");
    }
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t realization_seed(std::uint64_t master_seed, std::size_t p_index, std::size_t l_index,
                               std::size_t realization) {
    std::uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(p_index));
    h = splitmix64(h ^ static_cast<std::uint64_t>(l_index));
    return splitmix64(h ^ static_cast<std::uint64_t>(realization));
}

std::vector<std::pair<Qubit, Qubit>> MonitoredCircuit::bonds(std::size_t n_qubits, std::size_t t, bool periodic) {
    std::vector<std::pair<Qubit, Qubit>> out;
    const std::size_t first = (t % 2 == 1) ? 0 : 1;
    for (std::size_t i = first; i + 1 < n_qubits; i += 2) {
        out.emplace_back(static_cast<Qubit>(i), static_cast<Qubit>(i + 1));
    }
    if (periodic && first == 1 && n_qubits > 2 && n_qubits % 2 == 0) {
        out.emplace_back(static_cast<Qubit>(n_qubits - 1), Qubit{0});
    }
    return out;
}

MonitoredCircuit::MonitoredCircuit(const CircuitConfig &config)
    : config_(config),
      rng_(config.seed),
      state_(StabilizerTableau::product_state(config.n_qubits == 0 ? 1 : config.n_qubits)),
      odd_bonds_(bonds(config.n_qubits, 1, config.periodic)),
      even_bonds_(bonds(config.n_qubits, 2, config.periodic)) {
    config_.validate();
    last_measured_.reserve(config.n_qubits);
}

void MonitoredCircuit::step() {
    ++steps_done_;
    const auto &layer = (steps_done_ % 2 == 1) ? odd_bonds_ : even_bonds_;
    for (const auto &[a, b] : layer) {
        state_.apply(sample_two_qubit_clifford(rng_), a, b);
    }
    last_measured_.clear();
    for (std::size_t q = 0; q < config_.n_qubits; ++q) {
        if (uniform_unit(rng_) < config_.p) {
            state_.measure_z(q, rng_);
            last_measured_.push_back(static_cast<Qubit>(q));
        }
    }
}

StabilizerTableau run_realization(const CircuitConfig &config) {
    MonitoredCircuit circuit(config);
    circuit.run(config.resolved_steps());
    return std::move(circuit).take_state();
}

void EnsembleSpec::validate() const {
    if (p_values.empty() || L_values.empty()) {
        throw std::invalid_argument("ensemble grid needs at least one p and one L");
    }
    if (n_realizations == 0) {
        throw std::invalid_argument("ensemble needs at least one realization");
    }
    if (steps_per_site == 0) {
        throw std::invalid_argument("steps per site must be positive");
    }
    for (double p : p_values) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("measurement probability must lie in [0, 1]");
        }
    }
    for (std::size_t L : L_values) {
        if (L == 0) {
            throw std::invalid_argument("system sizes must be positive");
        }
        if (coarse_b == 0 || coarse_b > L) {
            throw std::invalid_argument("coarse-graining box size must satisfy 1 <= b <= L for every L");
        }
    }
}

namespace {

struct Task {
    std::size_t p_index;
    std::size_t l_index;
    std::size_t realization;
};

// Runs `work(task, summary)` for every grid task on a pool of threads.
// Records reach the sink in arbitrary order; contents depend only on the task.
template <typename Work>
EnsembleSummary for_each_realization(const EnsembleSpec &spec, const ParallelOptions &parallel, Work work) {
    spec.validate();
    std::vector<Task> tasks;
    tasks.reserve(spec.p_values.size() * spec.L_values.size() * spec.n_realizations);
    // Largest systems first so the tail of the schedule is short.
    std::vector<std::size_t> l_order(spec.L_values.size());
    for (std::size_t k = 0; k < l_order.size(); ++k) {
        l_order[k] = k;
    }
    std::stable_sort(l_order.begin(), l_order.end(),
                     [&spec](std::size_t a, std::size_t b) { return spec.L_values[a] > spec.L_values[b]; });
    for (std::size_t li : l_order) {
        for (std::size_t pi = 0; pi < spec.p_values.size(); ++pi) {
            for (std::size_t r = 0; r < spec.n_realizations; ++r) {
                tasks.push_back({pi, li, r});
            }
        }
    }

    std::size_t threads = parallel.threads == 0 ? std::thread::hardware_concurrency() : parallel.threads;
    threads = std::max<std::size_t>(1, std::min(threads, tasks.size()));

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> completed{0};
    std::atomic<bool> abort{false};
    std::mutex mutex;
    std::exception_ptr failure;
    EnsembleSummary total;

    auto worker = [&] {
        EnsembleSummary local;
        while (!abort.load()) {
            const std::size_t k = next.fetch_add(1);
            if (k >= tasks.size()) {
                break;
            }
            try {
                work(tasks[k], local);
                ++local.realizations;
                completed.fetch_add(1);
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                abort.store(true);
            }
        }
        std::lock_guard lock(mutex);
        total.realizations += local.realizations;
        total.records += local.records;
        total.builds_with_escalation += local.builds_with_escalation;
        total.builds_with_factorization += local.builds_with_factorization;
        total.structure_builds += local.structure_builds;
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    if (failure) {
        std::string what = "ensemble aborted";
        try {
            std::rethrow_exception(failure);
        } catch (const std::exception &e) {
            what += ": ";
            what += e.what();
        } catch (...) {
        }
        throw EnsembleAborted(what + " (" + std::to_string(completed.load()) + " of " + std::to_string(tasks.size()) +
                                  " realizations completed)",
                              completed.load(), tasks.size());
    }
    return total;
}

CircuitConfig task_config(const EnsembleSpec &spec, const Task &task) {
    CircuitConfig config;
    config.n_qubits = spec.L_values[task.l_index];
    config.p = spec.p_values[task.p_index];
    config.steps = spec.steps_per_site * config.n_qubits;
    config.seed = realization_seed(spec.master_seed, task.p_index, task.l_index, task.realization);
    config.periodic = spec.periodic;
    return config;
}

void tally(const EntanglementStructure &structure, EnsembleSummary &summary) {
    ++summary.structure_builds;
    if (structure.escalations > 0) {
        ++summary.builds_with_escalation;
    }
    if (structure.used_factorization) {
        ++summary.builds_with_factorization;
    }
}

}  // namespace

EnsembleSummary run_ensemble(const EnsembleSpec &spec, RecordSink<DepthRecord> &sink,
                             const ParallelOptions &parallel) {
    return for_each_realization(spec, parallel, [&](const Task &task, EnsembleSummary &summary) {
        const CircuitConfig config = task_config(spec, task);
        const StabilizerTableau state = run_realization(config);
        const EntanglementStructure structure =
            build_structure(state, coarse_grain(config.n_qubits, spec.coarse_b), spec.structure);
        tally(structure, summary);
        const DepthReport report = depth_report(structure);
        sink.append({config.p, config.n_qubits, task.realization, config.seed, report.depth_qubits, report.n_clusters});
        ++summary.records;
    });
}

EnsembleSummary run_boxcount_ensemble(const EnsembleSpec &spec, std::span<const std::size_t> box_sizes,
                                      RecordSink<BoxCountRecord> &sink, const ParallelOptions &parallel) {
    if (box_sizes.empty()) {
        throw std::invalid_argument("box-count scan needs at least one box size");
    }
    for (std::size_t b : box_sizes) {
        if (b == 0) {
            throw std::invalid_argument("box sizes must be positive");
        }
    }
    return for_each_realization(spec, parallel, [&](const Task &task, EnsembleSummary &summary) {
        const CircuitConfig config = task_config(spec, task);
        const StabilizerTableau state = run_realization(config);
        for (std::size_t b : box_sizes) {
            if (b > config.n_qubits) {
                continue;
            }
            const EntanglementStructure structure =
                build_structure(state, coarse_grain(config.n_qubits, b), spec.structure);
            tally(structure, summary);
            const DepthReport report = depth_report(structure);
            std::size_t boxes = 0;
            for (const Cluster &c : structure.final_clusters) {
                if (c.qubits == report.largest_cluster) {
                    boxes = c.element_ids.size();
                }
            }
            sink.append({config.p, config.n_qubits, b, task.realization, config.seed, boxes});
            ++summary.records;
        }
    });
}

}  // namespace entdepth
