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

#include "entdepth/structure.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "entdepth/union_find.hpp"

namespace entdepth {

std::vector<Element> coarse_grain(std::size_t n_qubits, std::size_t box_size) {
    if (box_size == 0 || box_size > n_qubits) {
        throw std::invalid_argument("box size must satisfy 1 <= b <= L (b=" + std::to_string(box_size) +
                                    ", L=" + std::to_string(n_qubits) + ")");
    }
    std::vector<Element> boxes;
    boxes.reserve((n_qubits + box_size - 1) / box_size);
    for (std::size_t start = 0; start < n_qubits; start += box_size) {
        boxes.push_back({boxes.size(), QubitSet::range(static_cast<Qubit>(start), std::min(box_size, n_qubits - start))});
    }
    return boxes;
}

std::optional<std::vector<std::size_t>> EntropySource::factorize(std::span<const QubitSet>) const {
    return std::nullopt;
}

TableauEntropy::TableauEntropy(const StabilizerTableau &state)
    : state_(state), n_(state.n_qubits()), words_(words_for_bits(state.n_qubits())), columns_(2 * n_ * words_, 0) {
    for (std::size_t g = 0; g < n_; ++g) {
        const Word bit = Word{1} << (g % kWordBits);
        const std::size_t w = g / kWordBits;
        for (std::size_t q = 0; q < n_; ++q) {
            if (state.x(g, q)) {
                columns_[(2 * q) * words_ + w] |= bit;
            }
            if (state.z(g, q)) {
                columns_[(2 * q + 1) * words_ + w] |= bit;
            }
        }
    }
}

std::size_t TableauEntropy::entropy(const QubitSet &subset) const {
    if (subset.empty()) {
        throw std::invalid_argument("subset entropy needs a nonempty qubit set");
    }
    subset.check_within(n_);
    // S_A = S_complement(A) for a pure state; eliminate on the smaller side.
    const bool use_complement = 2 * subset.size() > n_;
    QubitSet side = use_complement ? subset.complement(n_) : subset;
    if (side.empty()) {
        return 0;
    }
    thread_local std::vector<Word> scratch;
    scratch.assign(2 * side.size() * words_, 0);
    std::size_t c = 0;
    for (Qubit q : side) {
        std::copy_n(columns_.begin() + static_cast<std::ptrdiff_t>(2 * q * words_), 2 * words_,
                    scratch.begin() + static_cast<std::ptrdiff_t>(2 * c * words_));
        ++c;
    }
    return gf2_rank_inplace(scratch, words_) - side.size();
}

std::optional<std::vector<std::size_t>> TableauEntropy::factorize(std::span<const QubitSet> groups) const {
    return finest_factorization(state_, groups);
}

std::vector<std::size_t> finest_factorization(const StabilizerTableau &state, std::span<const QubitSet> groups) {
    const std::size_t n = state.n_qubits();
    for (const QubitSet &g : groups) {
        g.check_within(n);
    }
    // The state splits across a qubit bipartition iff its generator space is
    // a direct sum over the two sides. The finest such split is given by the
    // connected components of the column matroid, which are read off the
    // supports of the rows of the reduced echelon form.
    BitMatrix m = state.stabilizer_matrix();
    gf2_reduce(m);
    UnionFind qubits(n);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::size_t first = n;
        for (std::size_t c = 0; c < 2 * n; ++c) {
            if (m.get(r, c)) {
                const std::size_t q = c < n ? c : c - n;
                if (first == n) {
                    first = q;
                } else {
                    qubits.unite(first, q);
                }
            }
        }
    }
    for (const QubitSet &g : groups) {
        for (Qubit q : g) {
            qubits.unite(g.front(), q);
        }
    }
    std::map<std::size_t, std::size_t> first_group;
    std::vector<std::size_t> labels(groups.size());
    for (std::size_t k = 0; k < groups.size(); ++k) {
        if (groups[k].empty()) {
            labels[k] = k;
            continue;
        }
        const std::size_t root = qubits.find(groups[k].front());
        auto [it, inserted] = first_group.emplace(root, k);
        labels[k] = it->second;
    }
    return labels;
}

namespace {

struct Working {
    std::size_t id;
    QubitSet qubits;
    std::vector<std::size_t> element_ids;
    std::size_t entropy;
    bool fresh;
};

void check_partition(std::size_t n_qubits, std::span<const Element> elements) {
    std::vector<char> seen(n_qubits, 0);
    std::size_t covered = 0;
    for (const Element &e : elements) {
        if (e.qubits.empty()) {
            throw std::invalid_argument("element " + std::to_string(e.id) + " is empty");
        }
        e.qubits.check_within(n_qubits);
        for (Qubit q : e.qubits) {
            if (seen[q]) {
                throw std::invalid_argument("elements overlap at qubit " + std::to_string(q));
            }
            seen[q] = 1;
            ++covered;
        }
    }
    if (covered != n_qubits) {
        throw std::invalid_argument("elements do not cover every qubit");
    }
}

class Builder {
   public:
    Builder(const EntropySource &source, std::span<const Element> elements, const StructureOptions &options)
        : source_(source), options_(options) {
        out_.n_qubits = source.n_qubits();
        out_.initial_elements.assign(elements.begin(), elements.end());
        for (const Element &e : elements) {
            current_.push_back({e.id, e.qubits, {e.id}, source.entropy(e.qubits), true});
            next_id_ = std::max(next_id_, e.id + 1);
        }
        std::sort(current_.begin(), current_.end(), [](const Working &a, const Working &b) { return a.id < b.id; });
    }

    EntanglementStructure run() {
        while (true) {
            merge_pairs_to_fixed_point();
            std::vector<std::size_t> positive = positive_indices();
            if (positive.empty()) {
                break;
            }
            escalate(positive);
        }
        for (Working &w : current_) {
            out_.final_clusters.push_back({w.id, std::move(w.element_ids), std::move(w.qubits)});
        }
        for (Cluster &c : out_.final_clusters) {
            std::sort(c.element_ids.begin(), c.element_ids.end());
        }
        std::sort(out_.final_clusters.begin(), out_.final_clusters.end(),
                  [](const Cluster &a, const Cluster &b) { return a.qubits.front() < b.qubits.front(); });
        return std::move(out_);
    }

   private:
    std::vector<std::size_t> positive_indices() const {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < current_.size(); ++k) {
            if (current_[k].entropy > 0) {
                out.push_back(k);
            }
        }
        return out;
    }

    std::size_t union_entropy(std::span<const std::size_t> indices) const {
        std::vector<QubitSet> parts;
        parts.reserve(indices.size());
        for (std::size_t k : indices) {
            parts.push_back(current_[k].qubits);
        }
        return source_.entropy(QubitSet::disjoint_union(parts));
    }

    bool correlated(std::span<const std::size_t> indices) const {
        std::size_t sum = 0;
        for (std::size_t k : indices) {
            sum += current_[k].entropy;
        }
        return sum > union_entropy(indices);
    }

    // Replaces each group (indices into current_, ascending) by one element.
    void merge_groups(std::vector<std::vector<std::size_t>> groups, std::size_t level, bool from_factorization) {
        std::sort(groups.begin(), groups.end(),
                  [this](const auto &a, const auto &b) { return current_[a.front()].id < current_[b.front()].id; });
        std::vector<char> removed(current_.size(), 0);
        std::vector<Working> created;
        for (const auto &group : groups) {
            MergeEvent event;
            event.level = level == 0 ? group.size() : level;
            event.from_factorization = from_factorization;
            std::vector<QubitSet> parts;
            std::vector<std::size_t> element_ids;
            for (std::size_t k : group) {
                event.merged_ids.push_back(current_[k].id);
                parts.push_back(current_[k].qubits);
                element_ids.insert(element_ids.end(), current_[k].element_ids.begin(), current_[k].element_ids.end());
                removed[k] = 1;
            }
            std::sort(event.merged_ids.begin(), event.merged_ids.end());
            event.new_id = next_id_++;
            QubitSet qubits = QubitSet::disjoint_union(parts);
            const std::size_t s = source_.entropy(qubits);
            created.push_back({event.new_id, std::move(qubits), std::move(element_ids), s, true});
            out_.max_level = std::max(out_.max_level, event.level);
            if (event.level >= 3) {
                ++out_.escalations;
            }
            out_.merge_events.push_back(std::move(event));
        }
        std::vector<Working> next;
        next.reserve(current_.size());
        for (std::size_t k = 0; k < current_.size(); ++k) {
            if (!removed[k]) {
                next.push_back(std::move(current_[k]));
            }
        }
        for (Working &w : created) {
            next.push_back(std::move(w));
        }
        current_ = std::move(next);
    }

    void merge_pairs_to_fixed_point() {
        while (true) {
            std::vector<std::size_t> positive = positive_indices();
            UnionFind graph(current_.size());
            bool any_edge = false;
            for (std::size_t a = 0; a < positive.size(); ++a) {
                for (std::size_t b = a + 1; b < positive.size(); ++b) {
                    const std::size_t ka = positive[a], kb = positive[b];
                    // Pairs of unchanged elements were already found uncorrelated.
                    if (!current_[ka].fresh && !current_[kb].fresh) {
                        continue;
                    }
                    const std::size_t pair[2] = {ka, kb};
                    if (correlated(pair)) {
                        graph.unite(ka, kb);
                        any_edge = true;
                    }
                }
            }
            for (Working &w : current_) {
                w.fresh = false;
            }
            if (!any_edge) {
                return;
            }
            std::map<std::size_t, std::vector<std::size_t>> components;
            for (std::size_t k : positive) {
                components[graph.find(k)].push_back(k);
            }
            std::vector<std::vector<std::size_t>> groups;
            for (auto &[root, members] : components) {
                if (members.size() >= 2) {
                    groups.push_back(std::move(members));
                }
            }
            merge_groups(std::move(groups), 2, false);
        }
    }

    void escalate(const std::vector<std::size_t> &positive) {
        const std::size_t n = positive.size();
        if (n < 2) {
            throw std::logic_error("entropies are inconsistent with a pure state");
        }
        std::size_t examined = 0;
        for (std::size_t w = 3; w <= n; ++w) {
            std::vector<std::size_t> pick(w);
            for (std::size_t k = 0; k < w; ++k) {
                pick[k] = k;
            }
            std::vector<std::size_t> chosen(w);
            while (true) {
                for (std::size_t k = 0; k < w; ++k) {
                    chosen[k] = positive[pick[k]];
                }
                if (correlated(chosen)) {
                    merge_groups({chosen}, w, false);
                    return;
                }
                if (can_factorize_ && ++examined >= options_.escalation_budget && try_factorize(positive)) {
                    return;
                }
                // Next combination in lexicographic order.
                std::size_t k = w;
                while (k > 0 && pick[k - 1] == n - w + k - 1) {
                    --k;
                }
                if (k == 0) {
                    break;
                }
                ++pick[k - 1];
                for (std::size_t t = k; t < w; ++t) {
                    pick[t] = pick[t - 1] + 1;
                }
            }
        }
        throw std::logic_error("no correlated subset found among positive-entropy elements");
    }

    bool try_factorize(const std::vector<std::size_t> &positive) {
        std::vector<QubitSet> groups;
        groups.reserve(positive.size());
        for (std::size_t k : positive) {
            groups.push_back(current_[k].qubits);
        }
        std::optional<std::vector<std::size_t>> labels = source_.factorize(groups);
        if (!labels) {
            can_factorize_ = false;
            return false;
        }
        std::map<std::size_t, std::vector<std::size_t>> by_label;
        for (std::size_t k = 0; k < positive.size(); ++k) {
            by_label[(*labels)[k]].push_back(positive[k]);
        }
        std::vector<std::vector<std::size_t>> merged;
        for (auto &[label, members] : by_label) {
            if (members.size() >= 2) {
                merged.push_back(std::move(members));
            }
        }
        if (merged.empty()) {
            throw std::logic_error("exact factorization found no factor among correlated elements");
        }
        out_.used_factorization = true;
        merge_groups(std::move(merged), 0, true);
        return true;
    }

    const EntropySource &source_;
    StructureOptions options_;
    EntanglementStructure out_;
    std::vector<Working> current_;
    std::size_t next_id_ = 0;
    bool can_factorize_ = true;
};

}  // namespace

EntanglementStructure build_structure(const EntropySource &entropies, std::span<const Element> elements,
                                      const StructureOptions &options) {
    check_partition(entropies.n_qubits(), elements);
    return Builder(entropies, elements, options).run();
}

EntanglementStructure build_structure(const StabilizerTableau &state, std::span<const Element> elements,
                                      const StructureOptions &options) {
    TableauEntropy source(state);
    return build_structure(source, elements, options);
}

DepthReport depth_report(const EntanglementStructure &structure) {
    DepthReport report;
    report.n_clusters = structure.final_clusters.size();
    const Cluster *best = nullptr;
    for (const Cluster &c : structure.final_clusters) {
        if (best == nullptr || c.qubits.size() > best->qubits.size() ||
            (c.qubits.size() == best->qubits.size() && c.qubits.front() < best->qubits.front())) {
            best = &c;
        }
    }
    if (best != nullptr) {
        report.depth_qubits = best->qubits.size();
        report.largest_cluster = best->qubits;
    }
    return report;
}

std::string dump_structure(const EntanglementStructure &structure) {
    std::ostringstream out;
    auto join = [&out](const auto &items) {
        bool first = true;
        for (auto v : items) {
            if (!first) {
                out << ',';
            }
            out << v;
            first = false;
        }
    };
    for (const Cluster &c : structure.final_clusters) {
        join(c.qubits);
        out << '\n';
    }
    for (const MergeEvent &e : structure.merge_events) {
        out << "w=" << e.level << ": ";
        join(e.merged_ids);
        out << '\n';
    }
    return out.str();
}

}  // namespace entdepth
