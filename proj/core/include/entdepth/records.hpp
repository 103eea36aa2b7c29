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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <tuple>
#include <vector>

namespace entdepth {

/// Entanglement depth of one steady-state realization.
struct DepthRecord {
    double p = 0.0;
    std::size_t L = 0;
    std::size_t realization = 0;
    std::uint64_t seed = 0;
    std::size_t depth_qubits = 0;
    std::size_t n_clusters = 0;

    bool operator==(const DepthRecord &) const = default;
};

/// Number of size-b boxes in the largest cluster of one realization.
struct BoxCountRecord {
    double p = 0.0;
    std::size_t L = 0;
    std::size_t b = 0;
    std::size_t realization = 0;
    std::uint64_t seed = 0;
    std::size_t n_boxes = 0;

    bool operator==(const BoxCountRecord &) const = default;
};

inline bool persisted_before(const DepthRecord &a, const DepthRecord &b) {
    return std::tie(a.p, a.L, a.realization) < std::tie(b.p, b.L, b.realization);
}

inline bool persisted_before(const BoxCountRecord &a, const BoxCountRecord &b) {
    return std::tie(a.p, a.L, a.realization, a.b) < std::tie(b.p, b.L, b.realization, b.b);
}

/// Consumer of records; append() may be called from several threads at once.
template <typename Record>
class RecordSink {
   public:
    virtual ~RecordSink() = default;
    virtual void append(const Record &record) = 0;
};

/// Thread-safe in-memory sink.
template <typename Record>
class CollectingSink final : public RecordSink<Record> {
   public:
    void append(const Record &record) override {
        std::lock_guard lock(mutex_);
        records_.push_back(record);
    }

    /// All records in persisted order.
    std::vector<Record> sorted() const {
        std::lock_guard lock(mutex_);
        std::vector<Record> out = records_;
        std::sort(out.begin(), out.end(), [](const Record &a, const Record &b) { return persisted_before(a, b); });
        return out;
    }

    std::size_t size() const {
        std::lock_guard lock(mutex_);
        return records_.size();
    }

   private:
    mutable std::mutex mutex_;
    std::vector<Record> records_;
};

}  // namespace entdepth
