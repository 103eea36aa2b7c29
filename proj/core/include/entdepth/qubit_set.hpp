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
#include <initializer_list>
#include <span>
#include <vector>

namespace entdepth {

using Qubit = std::uint32_t;

/// Sorted set of distinct qubit indices.
class QubitSet {
   public:
    QubitSet() = default;
    explicit QubitSet(std::vector<Qubit> members);
    QubitSet(std::initializer_list<Qubit> members) : QubitSet(std::vector<Qubit>(members)) {}

    /// Contiguous run [first, first + count).
    static QubitSet range(Qubit first, std::size_t count);

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    Qubit front() const { return members_.front(); }
    Qubit back() const { return members_.back(); }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }
    std::span<const Qubit> members() const { return members_; }
    bool contains(Qubit q) const;

    /// Throws std::out_of_range unless every member is below `n_qubits`.
    void check_within(std::size_t n_qubits) const;

    /// Members of [0, n_qubits) not in this set.
    QubitSet complement(std::size_t n_qubits) const;

    /// Union of disjoint sets; throws std::invalid_argument on overlap.
    static QubitSet disjoint_union(std::span<const QubitSet> parts);

    bool intersects(const QubitSet &other) const;

    bool operator==(const QubitSet &) const = default;
    auto operator<=>(const QubitSet &) const = default;

   private:
    std::vector<Qubit> members_;
};

}  // namespace entdepth
