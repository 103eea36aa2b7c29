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
#include <numeric>
#include <utility>
#include <vector>

namespace entdepth {

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
   public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    /// Returns true if x and y were in different sets.
    bool unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x == y) {
            return false;
        }
        if (size_[x] < size_[y]) {
            std::swap(x, y);
        }
        parent_[y] = x;
        size_[x] += size_[y];
        return true;
    }

    bool connected(std::size_t x, std::size_t y) { return find(x) == find(y); }

    std::size_t size() const { return parent_.size(); }

   private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace entdepth
