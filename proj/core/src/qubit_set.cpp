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

#include "entdepth/qubit_set.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace entdepth {

QubitSet::QubitSet(std::vector<Qubit> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
        throw std::invalid_argument("qubit set has repeated indices");
    }
}

QubitSet QubitSet::range(Qubit first, std::size_t count) {
    std::vector<Qubit> members(count);
    for (std::size_t k = 0; k < count; ++k) {
        members[k] = static_cast<Qubit>(first + k);
    }
    QubitSet out;
    out.members_ = std::move(members);
    return out;
}

bool QubitSet::contains(Qubit q) const { return std::binary_search(members_.begin(), members_.end(), q); }

void QubitSet::check_within(std::size_t n_qubits) const {
    if (!members_.empty() && members_.back() >= n_qubits) {
        throw std::out_of_range("qubit " + std::to_string(members_.back()) + " out of range for " +
                                std::to_string(n_qubits) + " qubits");
    }
}

QubitSet QubitSet::complement(std::size_t n_qubits) const {
    std::vector<Qubit> out;
    out.reserve(n_qubits - std::min(n_qubits, members_.size()));
    auto it = members_.begin();
    for (Qubit q = 0; q < n_qubits; ++q) {
        if (it != members_.end() && *it == q) {
            ++it;
        } else {
            out.push_back(q);
        }
    }
    QubitSet result;
    result.members_ = std::move(out);
    return result;
}

QubitSet QubitSet::disjoint_union(std::span<const QubitSet> parts) {
    std::vector<Qubit> all;
    for (const QubitSet &part : parts) {
        all.insert(all.end(), part.begin(), part.end());
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw std::invalid_argument("qubit sets overlap");
    }
    QubitSet result;
    result.members_ = std::move(all);
    return result;
}

bool QubitSet::intersects(const QubitSet &other) const {
    auto a = members_.begin();
    auto b = other.members_.begin();
    while (a != members_.end() && b != other.members_.end()) {
        if (*a == *b) {
            return true;
        }
        if (*a < *b) {
            ++a;
        } else {
            ++b;
        }
    }
    return false;
}

}  // namespace entdepth
