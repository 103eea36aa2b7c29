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
#include <vector>

#include "entdepth/qubit_set.hpp"
#include "entdepth/tableau.hpp"

namespace entdepth {

/// An indivisible group of qubits taking part in structure extraction.
struct Element {
    std::size_t id = 0;
    QubitSet qubits;

    bool operator==(const Element &) const = default;
};

/// ceil(L / b) contiguous boxes of b qubits in spatial order; the last box is
/// short when b does not divide L. Throws unless 1 <= b <= L.
std::vector<Element> coarse_grain(std::size_t n_qubits, std::size_t box_size);

/// Subset entropies (in bits) of a pure state, as consumed by build_structure.
class EntropySource {
   public:
    virtual ~EntropySource() = default;

    virtual std::size_t n_qubits() const = 0;
    virtual std::size_t entropy(const QubitSet &subset) const = 0;

    /// Optional exact decomposition: for disjoint `groups`, a label per group
    /// such that groups share a label iff they lie in the same indivisible
    /// tensor factor of the state. Sources that cannot do this return nullopt
    /// and the subset search runs to completion instead.
    virtual std::optional<std::vector<std::size_t>> factorize(std::span<const QubitSet> groups) const;
};

/// Rank-based entropies of a stabilizer state, with the generator columns
/// transposed once up front. Borrows the tableau, which must outlive it.
class TableauEntropy final : public EntropySource {
   public:
    explicit TableauEntropy(const StabilizerTableau &state);

    std::size_t n_qubits() const override { return n_; }
    std::size_t entropy(const QubitSet &subset) const override;
    std::optional<std::vector<std::size_t>> factorize(std::span<const QubitSet> groups) const override;

   private:
    const StabilizerTableau &state_;
    std::size_t n_;
    std::size_t words_;
    // Column 2q is the x part of qubit q over all generators, 2q+1 the z part.
    std::vector<Word> columns_;
};

/// Finest tensor factorization of a stabilizer state relative to disjoint
/// qubit groups, computed from the connectivity of the reduced row echelon
/// form of the generator matrix. Returns one label per group; the label is
/// the smallest group index in that group's factor.
std::vector<std::size_t> finest_factorization(const StabilizerTableau &state, std::span<const QubitSet> groups);

struct MergeEvent {
    /// Cluster level w at which the merge was found.
    std::size_t level = 0;
    /// Ids of the elements that were merged, ascending.
    std::vector<std::size_t> merged_ids;
    /// Id given to the merged element.
    std::size_t new_id = 0;
    /// Set when the merge came from the exact factorization after the subset
    /// search ran past its budget.
    bool from_factorization = false;

    bool operator==(const MergeEvent &) const = default;
};

struct Cluster {
    std::size_t id = 0;
    /// Ids of the initial elements making up the cluster, ascending.
    std::vector<std::size_t> element_ids;
    QubitSet qubits;

    bool operator==(const Cluster &) const = default;
};

struct EntanglementStructure {
    std::size_t n_qubits = 0;
    std::vector<Element> initial_elements;
    /// Decoupled clusters, sorted by smallest qubit index.
    std::vector<Cluster> final_clusters;
    std::vector<MergeEvent> merge_events;
    /// Number of merges found at level w >= 3.
    std::size_t escalations = 0;
    /// Largest level at which a merge was found (1 if nothing merged).
    std::size_t max_level = 1;
    bool used_factorization = false;
};

struct StructureOptions {
    /// Maximum number of w >= 3 subsets examined in one escalation round
    /// before handing over to EntropySource::factorize (when available).
    std::size_t escalation_budget = 20000;
};

/// Decomposes the state into decoupled clusters of `elements`.
///
/// Pairs of elements with positive mutual information are merged (connected
/// components of the pair graph) until none remain. If some element still
/// has positive entropy, subsets of w = 3, 4, ... positive-entropy elements
/// are searched in lexicographic id order; the first one with positive total
/// correlation is merged and the pair stage restarts. New elements get ids
/// in creation order after the initial ones.
///
/// Throws std::invalid_argument unless `elements` partition the qubits.
EntanglementStructure build_structure(const EntropySource &entropies, std::span<const Element> elements,
                                      const StructureOptions &options = {});
EntanglementStructure build_structure(const StabilizerTableau &state, std::span<const Element> elements,
                                      const StructureOptions &options = {});

struct DepthReport {
    std::size_t depth_qubits = 0;
    QubitSet largest_cluster;
    std::size_t n_clusters = 0;
};

/// Largest cluster by qubit count, ties to the smallest minimum qubit.
DepthReport depth_report(const EntanglementStructure &structure);

/// One line per final cluster (comma separated qubits, sorted by first
/// qubit) followed by one "w=<k>: <ids>" line per merge event.
std::string dump_structure(const EntanglementStructure &structure);

}  // namespace entdepth
