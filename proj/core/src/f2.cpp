#include "sseq/f2.hpp"

#include <algorithm>
#include <iterator>

namespace sseq {

IndexSet xor_sets(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void xor_into(IndexSet& acc, const IndexSet& v) {
    if (v.empty()) return;
    acc = xor_sets(acc, v);
}

bool is_canonical(const IndexSet& v) {
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i - 1] >= v[i]) return false;
    return v.empty() || v.front() >= 0;
}

std::string format_indices(const IndexSet& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

Subspace Subspace::span(std::span<const IndexSet> gens) {
    Subspace sp;
    for (const auto& g : gens) sp.add(g);
    return sp;
}

std::pair<IndexSet, IndexSet> Subspace::reduce_tracked(IndexSet v) const {
    IndexSet combo;
    for (const auto& row : rows_) {
        if (v.empty()) break;
        int pivot = row.vec.front();
        if (std::binary_search(v.begin(), v.end(), pivot)) {
            xor_into(v, row.vec);
            xor_into(combo, row.combo);
        }
    }
    return {std::move(v), std::move(combo)};
}

IndexSet Subspace::reduce(IndexSet v) const {
    for (const auto& row : rows_) {
        if (v.empty()) break;
        if (std::binary_search(v.begin(), v.end(), row.vec.front())) xor_into(v, row.vec);
    }
    return v;
}

bool Subspace::add(const IndexSet& v, const IndexSet& combo) {
    auto [res, used] = reduce_tracked(v);
    if (res.empty()) return false;
    xor_into(used, combo);
    int pivot = res.front();
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), pivot,
                                [](const Row& r, int p) { return r.vec.front() < p; });
    rows_.insert(pos, Row{std::move(res), std::move(used)});
    return true;
}

void Subspace::add_tagged(const IndexSet& v, int tag) { add(v, IndexSet{tag}); }

bool Subspace::contains(const Subspace& other) const {
    return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const Row& r) { return contains(r.vec); });
}

}  // namespace sseq
