#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sseq {

// Sorted, duplicate-free list of basis indices: a vector over F2.
using IndexSet = std::vector<int>;

IndexSet xor_sets(const IndexSet& a, const IndexSet& b);
void xor_into(IndexSet& acc, const IndexSet& v);
bool is_canonical(const IndexSet& v);
std::string format_indices(const IndexSet& v);  // "1,3"; zero prints as ""

// Row space over F2 kept in echelon form with the smallest index as pivot.
// Each row remembers which inserted vectors were combined to produce it.
class Subspace {
public:
    struct Row {
        IndexSet vec;
        IndexSet combo;
    };

    Subspace() = default;
    static Subspace span(std::span<const IndexSet> gens);

    // Returns false when v already lies in the space.
    bool add(const IndexSet& v, const IndexSet& combo = {});
    // Tags each generator with its position, so reduce_tracked reports positions.
    void add_tagged(const IndexSet& v, int tag);

    IndexSet reduce(IndexSet v) const;
    // Residue together with the combination of tags that was subtracted.
    std::pair<IndexSet, IndexSet> reduce_tracked(IndexSet v) const;

    bool contains(const IndexSet& v) const { return reduce(v).empty(); }
    bool contains(const Subspace& other) const;
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<Row>& rows() const { return rows_; }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.rank() == b.rank() && a.contains(b);
    }

private:
    std::vector<Row> rows_;  // ascending pivot
};

}  // namespace sseq
