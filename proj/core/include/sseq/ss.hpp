#pragma once

#include <array>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sseq/algebra.hpp"
#include "sseq/f2.hpp"
#include "sseq/formats.hpp"

namespace sseq {

inline constexpr int kLevelTop = 10000;
inline constexpr int kPermanentLevel = 9000;
inline constexpr int kHitCeiling = 5000;
inline constexpr int kMaxLength = 1000;

struct LevelInfo {
    enum class Kind { Hit, Supports, Permanent };
    Kind kind = Kind::Permanent;
    int r = 0;

    friend bool operator==(const LevelInfo&, const LevelInfo&) = default;
};

// Throws SentinelConflict outside [1,4999] ∪ {9000} ∪ [9001,10000].
LevelInfo decode_level(int level);
int encode_level(LevelInfo info);
constexpr int hit_level(int r) { return r; }
constexpr int supports_level(int r) { return kLevelTop - r; }

// Component index (0 for an Adams spectral sequence, iC for a cofiber sequence) and bidegree.
struct Loc {
    int comp = 0;
    BiDegree deg;

    friend auto operator<=>(const Loc&, const Loc&) = default;
};

std::string to_string(const Loc& loc);

struct SsEntry {
    IndexSet base;
    int level = supports_level(2);
    std::optional<IndexSet> diff;  // other end of the differential; nullopt = Unknown
};

struct Violation {
    std::string name;
    Loc loc;
    int level = 0;
    std::string message;
};

struct ConsistencyReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

// Staircase of one Adams spectral sequence, or of the three legs of an extension
// spectral sequence. Per location the entries are kept sorted by level, and
// B_r / Z_r are spans of level prefixes. Basis directions not covered by any entry
// count as supporting an undetermined d_{r_min}.
class SsState {
public:
    struct Geometry {
        int components = 1;
        int r_min = 2;
        std::array<int, 3> drops{1, 0, 0};  // a d_r from component c lands in c+1 at stem - drops[c], s + r
    };

    SsState() = default;
    SsState(std::string name, Geometry geo, std::array<std::map<BiDegree, int>, 3> dims);

    static SsState adams(std::string name, std::map<BiDegree, int> dims);
    static SsState adams(const SpectrumData& spectrum);

    const std::string& name() const { return name_; }
    const Geometry& geometry() const { return geo_; }
    int dim(const Loc& loc) const;
    std::vector<Loc> locations() const;  // every location with a positive dimension, ascending
    std::vector<Loc> occupied() const;   // locations holding entries, ascending

    // Span of B_∞ of the underlying Adams spectral sequence, used as the floor of an extension staircase.
    void set_floor(const Loc& loc, std::vector<IndexSet> rows);

    const std::vector<SsEntry>& entries(const Loc& loc) const;
    Loc target(const Loc& loc, int r) const;
    Loc source(const Loc& loc, int r) const;

    Subspace B(const Loc& loc, int r) const;
    Subspace Z(const Loc& loc, int r) const;
    Subspace B_inf(const Loc& loc) const;

    // d_r(x) modulo B_{r-1} as currently known: zero when x ∈ Z_r, the sum of recorded
    // values when x ≡ Supports(r) entries, nullopt when undetermined. Throws NotASurvivor
    // when x is known to support a shorter differential.
    std::optional<IndexSet> known_diff(const Loc& loc, const IndexSet& x, int r) const;
    // Highest level needed to express v; -1 for v in the floor, above every level when uncovered.
    int top_level(const Loc& loc, const IndexSet& v) const { return decompose(loc, v).top_level; }
    // Whether v could be recorded at this level without contradicting a settled entry.
    bool admits(const Loc& loc, const IndexSet& v, int level) const;
    // Largest s with a nonzero dimension in the component, or -1.
    int max_s(int comp) const;

    // Whether x can still be a d_r-survivor (x ∈ Z_{r-1} or undetermined there).
    bool is_survivor(const Loc& loc, const IndexSet& x, int r) const;

    // Records d_r(x) = dx (dx nullopt: x survives to E_r with an undetermined d_r).
    // Throws Contradiction, leaving the state unchanged.
    void insert_differential(const Loc& loc, const IndexSet& x, int r, const std::optional<IndexSet>& dx,
                             bool mirror = true);
    // One stored row taken literally; with mirror, differential rows also fill the other end.
    void place_row(const Loc& loc, const IndexSet& base, int level, const std::optional<IndexSet>& diff, bool mirror);
    // Records x as a permanent cycle.
    void insert_permanent(const Loc& loc, const IndexSet& x);
    // Records that y is hit by d_r from src (nullopt: source undetermined).
    void insert_hit(const Loc& loc, const IndexSet& y, int r, const std::optional<IndexSet>& src, bool mirror = true);

    // Adams: one row per entry. Internal r = 0 hits of extension staircases are never dumped.
    std::vector<SsRow> dump() const;
    std::vector<CofseqRow> dump_cofseq() const;

    ConsistencyReport check_consistency() const;

    // Same name and the same entries at every occupied location.
    friend bool operator==(const SsState& a, const SsState& b);

private:
    struct Decomp {
        IndexSet entries;  // positions into the entry list
        IndexSet residue;  // uncovered part
        int top_level = -1;
    };
    struct Table {
        std::vector<SsEntry> entries;
        friend bool operator==(const Table& a, const Table& b) {
            if (a.entries.size() != b.entries.size()) return false;
            for (size_t i = 0; i < a.entries.size(); ++i) {
                const auto& x = a.entries[i];
                const auto& y = b.entries[i];
                if (x.base != y.base || x.level != y.level || x.diff != y.diff) return false;
            }
            return true;
        }
    };

    Decomp decompose(const Loc& loc, const IndexSet& v) const;
    void check_vector(const Loc& loc, const IndexSet& v, std::string_view what) const;
    void place(const Loc& loc, const IndexSet& v, int level, const std::optional<IndexSet>& diff);
    void sort_entries(const Loc& loc);
    int uncovered_level() const { return kLevelTop - geo_.r_min + 1; }
    bool soft(const SsEntry& e, int new_level) const;
    std::string show(const Loc& loc, const IndexSet& v) const;

    std::string name_;
    Geometry geo_;
    std::array<std::map<BiDegree, int>, 3> dims_;
    std::map<Loc, Table> table_;
    std::map<Loc, std::vector<IndexSet>> floor_;
};

struct BuildOptions {
    bool synthesize_mirrors = true;
    bool sort_rows = true;
};

struct BuildResult {
    SsState state;
    ConsistencyReport report;
};

// Replays rows (sorted by stem, s, level) and cross-checks the basis d2 column when a
// spectrum is given. Never throws on inconsistent rows; problems go into the report.
BuildResult build(SsState empty, std::span<const SsRow> rows, const BuildOptions& opts = {},
                  const SpectrumData* spectrum = nullptr);
BuildResult build_cofseq(SsState empty, std::span<const CofseqRow> rows, const BuildOptions& opts = {});

// Per-bidegree dimensions implied by the largest index each row mentions.
std::map<BiDegree, int> dims_from_rows(std::span<const SsRow> rows, int drop = 1);

// d_r^f style extension on leg iC of an extension staircase; r may be 0.
void insert_extension(SsState& cofseq, int iC, BiDegree deg, const IndexSet& x, int r,
                      const std::optional<IndexSet>& dx);

std::array<std::map<BiDegree, int>, 3> dims_from_cofseq_rows(std::span<const CofseqRow> rows,
                                                              const std::array<int, 3>& drops);

// Extension staircase for X -> Y -> Z with per-leg drops; legs supply dimensions and B_∞ floors.
SsState cofseq_state(std::string name, const std::array<int, 3>& drops,
                     const std::array<const SsState*, 3>& legs);

}  // namespace sseq
