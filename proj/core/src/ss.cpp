#include "sseq/ss.hpp"

#include <algorithm>
#include <tuple>

#include <fmt/format.h>

#include "sseq/error.hpp"

namespace sseq {

LevelInfo decode_level(int level) {
    using K = LevelInfo::Kind;
    if (level >= 1 && level < kHitCeiling) return {K::Hit, level};
    if (level == kPermanentLevel) return {K::Permanent, 0};
    if (level > kPermanentLevel && level <= kLevelTop) return {K::Supports, kLevelTop - level};
    fail(Errc::SentinelConflict, fmt::format("level {} is not a valid encoding", level));
}

int encode_level(LevelInfo info) {
    using K = LevelInfo::Kind;
    switch (info.kind) {
        case K::Hit:
            if (info.r >= 1 && info.r < kHitCeiling) return info.r;
            break;
        case K::Supports:
            if (info.r >= 0 && info.r < kMaxLength) return kLevelTop - info.r;
            break;
        case K::Permanent: return kPermanentLevel;
    }
    fail(Errc::SentinelConflict, fmt::format("r = {} cannot be encoded", info.r));
}

std::string to_string(const Loc& loc) {
    return loc.comp == 0 ? to_string(loc.deg) : fmt::format("{}:{}", loc.comp, to_string(loc.deg));
}

namespace {

bool is_hit(int level) { return level < kHitCeiling; }
bool is_supports(int level) { return level > kPermanentLevel; }
int length_of(int level) { return is_hit(level) ? level : kLevelTop - level; }

const std::vector<SsEntry> kNoEntries;

}  // namespace

SsState::SsState(std::string name, Geometry geo, std::array<std::map<BiDegree, int>, 3> dims)
    : name_(std::move(name)), geo_(geo), dims_(std::move(dims)) {}

SsState SsState::adams(std::string name, std::map<BiDegree, int> dims) {
    return SsState(std::move(name), Geometry{}, {std::move(dims), {}, {}});
}

SsState SsState::adams(const SpectrumData& spectrum) {
    std::map<BiDegree, int> dims;
    for (auto d : spectrum.degrees()) dims[d] = spectrum.dim(d);
    return adams(spectrum.name, std::move(dims));
}

int SsState::dim(const Loc& loc) const {
    if (loc.comp < 0 || loc.comp >= geo_.components) return 0;
    const auto& m = dims_[static_cast<size_t>(loc.comp)];
    auto it = m.find(loc.deg);
    return it == m.end() ? 0 : it->second;
}

std::vector<Loc> SsState::locations() const {
    std::vector<Loc> out;
    for (int c = 0; c < geo_.components; ++c)
        for (const auto& [d, n] : dims_[static_cast<size_t>(c)])
            if (n > 0) out.push_back({c, d});
    return out;
}

std::vector<Loc> SsState::occupied() const {
    std::vector<Loc> out;
    for (const auto& [loc, t] : table_)
        if (!t.entries.empty()) out.push_back(loc);
    return out;
}

bool operator==(const SsState& a, const SsState& b) {
    if (a.name_ != b.name_ || a.occupied() != b.occupied()) return false;
    for (const auto& loc : a.occupied())
        if (!(a.table_.at(loc) == b.table_.at(loc))) return false;
    return true;
}

void SsState::set_floor(const Loc& loc, std::vector<IndexSet> rows) { floor_[loc] = std::move(rows); }

const std::vector<SsEntry>& SsState::entries(const Loc& loc) const {
    auto it = table_.find(loc);
    return it == table_.end() ? kNoEntries : it->second.entries;
}

Loc SsState::target(const Loc& loc, int r) const {
    int c = (loc.comp + 1) % geo_.components;
    return {c, {loc.deg.stem - geo_.drops[static_cast<size_t>(loc.comp)], loc.deg.s + r}};
}

Loc SsState::source(const Loc& loc, int r) const {
    int c = (loc.comp + geo_.components - 1) % geo_.components;
    return {c, {loc.deg.stem + geo_.drops[static_cast<size_t>(c)], loc.deg.s - r}};
}

Subspace SsState::B(const Loc& loc, int r) const {
    Subspace sp;
    if (auto f = floor_.find(loc); f != floor_.end())
        for (const auto& row : f->second) sp.add(row);
    for (const auto& e : entries(loc))
        if (e.level <= r) sp.add(e.base);
    return sp;
}

Subspace SsState::B_inf(const Loc& loc) const { return B(loc, kHitCeiling - 1); }

Subspace SsState::Z(const Loc& loc, int r) const {
    Subspace sp;
    if (r < geo_.r_min) {
        for (int i = 0; i < dim(loc); ++i) sp.add({i});
        return sp;
    }
    if (auto f = floor_.find(loc); f != floor_.end())
        for (const auto& row : f->second) sp.add(row);
    for (const auto& e : entries(loc))
        if (e.level < kLevelTop - r) sp.add(e.base);
    return sp;
}

SsState::Decomp SsState::decompose(const Loc& loc, const IndexSet& v) const {
    Subspace sp;
    if (auto f = floor_.find(loc); f != floor_.end())
        for (const auto& row : f->second) sp.add(row);
    const auto& es = entries(loc);
    for (size_t i = 0; i < es.size(); ++i) sp.add(es[i].base, {static_cast<int>(i)});
    auto [residue, combo] = sp.reduce_tracked(v);
    Decomp d{combo, residue, -1};
    for (int i : combo) d.top_level = std::max(d.top_level, es[static_cast<size_t>(i)].level);
    if (!residue.empty()) d.top_level = uncovered_level();
    return d;
}

std::string SsState::show(const Loc& loc, const IndexSet& v) const {
    std::string who = loc.comp == 0 && geo_.components == 1 ? name_ : fmt::format("{}[{}]", name_, loc.comp);
    return fmt::format("{} ({},{}) [{}]", who, loc.deg.stem, loc.deg.s, format_indices(v));
}

void SsState::check_vector(const Loc& loc, const IndexSet& v, std::string_view what) const {
    Errc code = geo_.components == 1 ? Errc::DegreeMismatch : Errc::ShiftMismatch;
    if (!is_canonical(v)) fail(Errc::Malformed, fmt::format("{} {} is not a sorted index set", what, show(loc, v)));
    int n = dim(loc);
    if (!v.empty() && (v.front() < 0 || v.back() >= n))
        fail(code, fmt::format("{} {} exceeds the dimension {} there", what, show(loc, v), n));
}

bool SsState::soft(const SsEntry& e, int new_level) const {
    if (new_level >= e.level) return false;
    if (is_supports(e.level)) return !e.diff.has_value();
    if (e.level == kPermanentLevel) return is_hit(new_level);
    return false;
}

void SsState::sort_entries(const Loc& loc) {
    auto& es = table_[loc].entries;
    std::stable_sort(es.begin(), es.end(), [](const SsEntry& a, const SsEntry& b) { return a.level < b.level; });
}

void SsState::place(const Loc& loc, const IndexSet& v, int level, const std::optional<IndexSet>& diff) {
    check_vector(loc, v, "base");
    Decomp d = decompose(loc, v);
    int r = length_of(level);
    if (d.top_level < level) {
        if (is_hit(level))
            fail(Errc::Contradiction, fmt::format("{} is already in B_{}", show(loc, v), r - 1));
        if (is_supports(level) && diff && !diff->empty())
            fail(Errc::Contradiction, fmt::format("{} is in Z_{} so it cannot support a nonzero d_{}", show(loc, v), r, r));
        return;
    }
    auto& es = table_[loc].entries;
    if (d.top_level == level) {
        if (!diff || level == kPermanentLevel) return;
        std::optional<size_t> unknown;
        IndexSet sum;
        for (int i : d.entries) {
            auto& e = es[static_cast<size_t>(i)];
            if (e.level != level) continue;
            if (!e.diff) {
                unknown = static_cast<size_t>(i);
            } else {
                xor_into(sum, *e.diff);
            }
        }
        if (unknown) {
            es[*unknown].base = v;
            es[*unknown].diff = diff;
            return;
        }
        IndexSet delta = xor_sets(sum, *diff);
        if (is_supports(level)) {
            Loc tgt = target(loc, r);
            if (!B(tgt, r - 1).contains(delta))
                fail(Errc::Contradiction,
                     fmt::format("d_{} of {} is recorded as [{}], and [{}] differs from it outside B_{}", r,
                                 show(loc, v), format_indices(sum), format_indices(*diff), r - 1));
        } else {
            Loc src = source(loc, r);
            if (!Z(src, r).contains(delta))
                fail(Errc::Contradiction,
                     fmt::format("{} is hit from [{}], and [{}] differs from it outside Z_{}", show(loc, v),
                                 format_indices(sum), format_indices(*diff), r));
        }
        return;
    }
    if (!d.residue.empty()) {
        es.push_back({v, level, diff});
        sort_entries(loc);
        return;
    }
    std::optional<size_t> victim;
    for (int i : d.entries) {
        const auto& e = es[static_cast<size_t>(i)];
        if (e.level == d.top_level && soft(e, level)) victim = static_cast<size_t>(i);
    }
    if (!victim) {
        std::string why;
        if (is_hit(d.top_level))
            why = fmt::format("it is already hit by a d_{}", d.top_level);
        else if (d.top_level == kPermanentLevel)
            why = "it is a permanent cycle";
        else
            why = fmt::format("it supports a nonzero d_{}", length_of(d.top_level));
        if (is_hit(level))
            fail(Errc::Contradiction, fmt::format("{} cannot be hit by a d_{}: {}", show(loc, v), r, why));
        fail(Errc::Contradiction, fmt::format("{} is not in Z_{}: {}", show(loc, v),
                                              is_supports(level) ? r - 1 : kMaxLength, why));
    }
    es[*victim] = {v, level, diff};
    sort_entries(loc);
}

bool SsState::admits(const Loc& loc, const IndexSet& v, int level) const {
    Decomp d = decompose(loc, v);
    if (d.top_level < level) return !is_hit(level);
    if (d.top_level == level || !d.residue.empty()) return true;
    const auto& es = entries(loc);
    for (int i : d.entries) {
        const auto& e = es[static_cast<size_t>(i)];
        if (e.level == d.top_level && soft(e, level)) return true;
    }
    return false;
}

int SsState::max_s(int comp) const {
    int best = -1;
    if (comp < 0 || comp >= geo_.components) return best;
    for (const auto& [d, n] : dims_[static_cast<size_t>(comp)])
        if (n > 0) best = std::max(best, d.s);
    return best;
}

std::optional<IndexSet> SsState::known_diff(const Loc& loc, const IndexSet& x, int r) const {
    check_vector(loc, x, "element");
    Decomp d = decompose(loc, x);
    int level = supports_level(r);
    if (d.top_level < level) return IndexSet{};
    const auto& es = entries(loc);
    if (d.top_level == level) {
        IndexSet sum;
        for (int i : d.entries) {
            const auto& e = es[static_cast<size_t>(i)];
            if (e.level != level) continue;
            if (!e.diff) return std::nullopt;
            xor_into(sum, *e.diff);
        }
        return sum;
    }
    if (!d.residue.empty()) return std::nullopt;
    for (int i : d.entries) {
        const auto& e = es[static_cast<size_t>(i)];
        if (e.level == d.top_level && soft(e, level)) return std::nullopt;
    }
    fail(Errc::NotASurvivor, fmt::format("{} does not survive to E_{}", show(loc, x), r));
}

bool SsState::is_survivor(const Loc& loc, const IndexSet& x, int r) const {
    try {
        known_diff(loc, x, r);
        return true;
    } catch (const Error& e) {
        if (e.code() == Errc::NotASurvivor) return false;
        throw;
    }
}

void SsState::insert_differential(const Loc& loc, const IndexSet& x, int r, const std::optional<IndexSet>& dx,
                                  bool mirror) {
    if (r < geo_.r_min || r >= kMaxLength)
        fail(Errc::OutOfRange, fmt::format("d_{} is outside [{}, {})", r, geo_.r_min, kMaxLength));
    Loc tgt = target(loc, r);
    check_vector(loc, x, "source");
    if (dx) check_vector(tgt, *dx, "target");

    Table saved_src = table_[loc];
    Table saved_tgt = table_[tgt];
    try {
        if (dx && B(tgt, r - 1).contains(*dx)) {
            if (decompose(loc, x).top_level < supports_level(r)) return;
            place(loc, x, supports_level(r + 1), std::nullopt);
        } else if (dx) {
            if (decompose(loc, x).top_level < supports_level(r))
                fail(Errc::Contradiction, fmt::format("{} is not in B_{}", show(tgt, *dx), r - 1));
            place(loc, x, supports_level(r), dx);
            if (mirror) place(tgt, *dx, hit_level(r), x);
        } else {
            place(loc, x, supports_level(r), std::nullopt);
        }
    } catch (...) {
        table_[loc] = std::move(saved_src);
        table_[tgt] = std::move(saved_tgt);
        throw;
    }
}

void SsState::insert_hit(const Loc& loc, const IndexSet& y, int r, const std::optional<IndexSet>& src, bool mirror) {
    if (r < geo_.r_min || r >= kMaxLength)
        fail(Errc::OutOfRange, fmt::format("d_{} is outside [{}, {})", r, geo_.r_min, kMaxLength));
    check_vector(loc, y, "base");
    if (B(loc, r - 1).contains(y)) fail(Errc::Contradiction, fmt::format("{} is already in B_{}", show(loc, y), r - 1));
    Loc from = source(loc, r);
    if (src) check_vector(from, *src, "source");
    if (src && mirror) {
        insert_differential(from, *src, r, y, true);
        return;
    }
    Table saved = table_[loc];
    try {
        place(loc, y, hit_level(r), src);
    } catch (...) {
        table_[loc] = std::move(saved);
        throw;
    }
}

void SsState::insert_permanent(const Loc& loc, const IndexSet& x) {
    Table saved = table_[loc];
    try {
        place(loc, x, kPermanentLevel, std::nullopt);
    } catch (...) {
        table_[loc] = std::move(saved);
        throw;
    }
}

void SsState::place_row(const Loc& loc, const IndexSet& base, int level, const std::optional<IndexSet>& diff,
                        bool mirror) {
    LevelInfo info = decode_level(level);
    if (info.kind != LevelInfo::Kind::Permanent && info.r >= kMaxLength)
        fail(Errc::SentinelConflict, fmt::format("d_{} is longer than {}", info.r, kMaxLength - 1));
    if (!mirror) {
        // a literal row is a new staircase line
        check_vector(loc, base, "base");
        if (base.empty() || decompose(loc, base).residue.empty())
            fail(Errc::Contradiction, fmt::format("{} depends on the rows already placed", show(loc, base)));
    }
    switch (info.kind) {
        case LevelInfo::Kind::Permanent:
            if (diff && !diff->empty())
                fail(Errc::Contradiction, fmt::format("permanent cycle {} carries a value", show(loc, base)));
            insert_permanent(loc, base);
            return;
        case LevelInfo::Kind::Hit: insert_hit(loc, base, info.r, diff, mirror); return;
        case LevelInfo::Kind::Supports: {
            if (info.r < geo_.r_min)
                fail(Errc::OutOfRange, fmt::format("d_{} is shorter than d_{}", info.r, geo_.r_min));
            Loc tgt = target(loc, info.r);
            if (diff) {
                check_vector(tgt, *diff, "target");
                if (B(tgt, info.r - 1).contains(*diff))
                    fail(Errc::Contradiction,
                         fmt::format("{} is in B_{}, so it cannot be the value of a nonzero d_{}", show(tgt, *diff),
                                     info.r - 1, info.r));
            }
            if (mirror || !diff) {
                insert_differential(loc, base, info.r, diff, mirror);
                return;
            }
            Table saved = table_[loc];
            try {
                place(loc, base, level, diff);
            } catch (...) {
                table_[loc] = std::move(saved);
                throw;
            }
            return;
        }
    }
}

std::vector<SsRow> SsState::dump() const {
    std::vector<SsRow> rows;
    for (const auto& [loc, t] : table_)
        for (const auto& e : t.entries)
            if (e.level >= 1) rows.push_back({loc.deg.stem, loc.deg.s, e.base, e.diff, e.level});
    return rows;
}

std::vector<CofseqRow> SsState::dump_cofseq() const {
    std::vector<CofseqRow> rows;
    for (const auto& [loc, t] : table_)
        for (const auto& e : t.entries)
            if (e.level >= 1) rows.push_back({loc.comp, loc.deg.stem, loc.deg.s, e.base, e.diff, e.level});
    return rows;
}

ConsistencyReport SsState::check_consistency() const {
    ConsistencyReport rep;
    auto report = [&](const Loc& loc, int level, std::string msg) {
        rep.violations.push_back({name_, loc, level, std::move(msg)});
    };
    for (const auto& [loc, t] : table_) {
        Subspace span;
        if (auto f = floor_.find(loc); f != floor_.end())
            for (const auto& row : f->second) span.add(row);
        for (const auto& e : t.entries) {
            try {
                check_vector(loc, e.base, "base");
            } catch (const Error& err) {
                report(loc, e.level, err.detail());
                continue;
            }
            if (e.base.empty() || !span.add(e.base))
                report(loc, e.level, fmt::format("{} depends on the entries below it", show(loc, e.base)));
            if (e.level == 0 && geo_.components == 3) {
                // internal mirror of an r = 0 extension
            } else {
                try {
                    decode_level(e.level);
                } catch (const Error& err) {
                    report(loc, e.level, err.detail());
                    continue;
                }
            }
            if (e.level == kPermanentLevel) {
                if (e.diff && !e.diff->empty()) report(loc, e.level, "a permanent cycle carries a value");
                continue;
            }
            int r = length_of(e.level);
            if (r >= kMaxLength) {
                report(loc, e.level, fmt::format("d_{} is longer than {}", r, kMaxLength - 1));
                continue;
            }
            if (r < geo_.r_min && !(is_hit(e.level) && geo_.components == 3 && r == 0)) {
                report(loc, e.level, fmt::format("d_{} is shorter than d_{}", r, geo_.r_min));
                continue;
            }
            if (!e.diff) continue;
            if (is_supports(e.level)) {
                Loc tgt = target(loc, r);
                const IndexSet& y = *e.diff;
                try {
                    check_vector(tgt, y, "target");
                } catch (const Error& err) {
                    report(loc, e.level, err.detail());
                    continue;
                }
                if (B(tgt, r - 1).contains(y))
                    report(loc, e.level, fmt::format("d_{} value {} is in B_{}", r, show(tgt, y), r - 1));
                else if (!B(tgt, r).contains(y))
                    report(loc, e.level, fmt::format("d_{} value {} is not in B_{}", r, show(tgt, y), r));
                else {
                    Decomp d = decompose(tgt, y);
                    IndexSet sum;
                    bool known = true;
                    const auto& tes = entries(tgt);
                    for (int i : d.entries) {
                        const auto& te = tes[static_cast<size_t>(i)];
                        if (te.level != r) continue;
                        if (!te.diff) known = false;
                        else xor_into(sum, *te.diff);
                    }
                    if (known && !Z(loc, r).contains(xor_sets(sum, e.base)))
                        report(loc, e.level,
                               fmt::format("{} is hit from [{}], which differs from {} outside Z_{}", show(tgt, y),
                                           format_indices(sum), show(loc, e.base), r));
                }
            } else {
                Loc src = source(loc, r);
                const IndexSet& x = *e.diff;
                try {
                    check_vector(src, x, "source");
                } catch (const Error& err) {
                    report(loc, e.level, err.detail());
                    continue;
                }
                Decomp d = decompose(src, x);
                if (d.top_level != supports_level(r)) {
                    report(loc, e.level,
                           fmt::format("source {} does not lie in Z_{} minus Z_{}", show(src, x), r - 1, r));
                    continue;
                }
                auto value = known_diff(src, x, r);
                if (value && !B(loc, r - 1).contains(xor_sets(*value, e.base)))
                    report(loc, e.level,
                           fmt::format("d_{} of {} is [{}], which differs from {} outside B_{}", r, show(src, x),
                                       format_indices(*value), show(loc, e.base), r - 1));
            }
        }
    }
    return rep;
}

namespace {

void sort_by_degree(std::vector<size_t>& order, auto key) {
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return key(a) < key(b); });
}

}  // namespace

BuildResult build(SsState empty, std::span<const SsRow> rows, const BuildOptions& opts, const SpectrumData* spectrum) {
    BuildResult out{std::move(empty), {}};
    std::vector<size_t> order(rows.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (opts.sort_rows)
        sort_by_degree(order, [&](size_t i) { return std::tuple{rows[i].stem, rows[i].s, rows[i].level}; });
    auto& st = out.state;
    for (size_t i : order) {
        const auto& row = rows[i];
        Loc loc{0, {row.stem, row.s}};
        try {
            st.place_row(loc, row.base, row.level, row.diff, opts.synthesize_mirrors);
        } catch (const Error& e) {
            out.report.violations.push_back({st.name(), loc, row.level, e.detail()});
        }
    }
    if (spectrum) {
        for (auto d : spectrum->degrees()) {
            for (int i = 0; i < spectrum->dim(d); ++i) {
                const auto& d2 = spectrum->basis_row(d, i).d2;
                if (!d2) continue;
                Loc loc{0, d};
                Loc tgt = st.target(loc, 2);
                std::optional<IndexSet> recorded;
                try {
                    recorded = st.known_diff(loc, {i}, 2);
                } catch (const Error&) {
                    continue;
                }
                if (recorded && !st.B(tgt, 1).contains(xor_sets(*recorded, *d2)))
                    out.report.violations.push_back(
                        {st.name(), loc, supports_level(2),
                         fmt::format("basis d2 of [{}] is [{}] but the staircase gives [{}]", i,
                                     format_indices(*d2), format_indices(*recorded))});
            }
        }
    }
    auto rest = st.check_consistency();
    out.report.violations.insert(out.report.violations.end(), rest.violations.begin(), rest.violations.end());
    return out;
}

BuildResult build_cofseq(SsState empty, std::span<const CofseqRow> rows, const BuildOptions& opts) {
    BuildResult out{std::move(empty), {}};
    std::vector<size_t> order(rows.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (opts.sort_rows)
        sort_by_degree(order,
                       [&](size_t i) { return std::tuple{rows[i].iC, rows[i].stem, rows[i].s, rows[i].level}; });
    auto& st = out.state;
    for (size_t i : order) {
        const auto& row = rows[i];
        Loc loc{row.iC, {row.stem, row.s}};
        try {
            st.place_row(loc, row.base, row.level, row.diff, opts.synthesize_mirrors);
        } catch (const Error& e) {
            out.report.violations.push_back({st.name(), loc, row.level, e.detail()});
        }
    }
    auto rest = st.check_consistency();
    out.report.violations.insert(out.report.violations.end(), rest.violations.begin(), rest.violations.end());
    return out;
}

namespace {

void widen(std::map<BiDegree, int>& dims, BiDegree d, const IndexSet& v) {
    if (v.empty()) return;
    int& n = dims[d];
    n = std::max(n, v.back() + 1);
}

}  // namespace

std::map<BiDegree, int> dims_from_rows(std::span<const SsRow> rows, int drop) {
    std::map<BiDegree, int> dims;
    for (const auto& row : rows) {
        BiDegree d{row.stem, row.s};
        widen(dims, d, row.base);
        if (!row.diff || row.level == kPermanentLevel) continue;
        if (is_hit(row.level))
            widen(dims, {row.stem + drop, row.s - row.level}, *row.diff);
        else
            widen(dims, {row.stem - drop, row.s + kLevelTop - row.level}, *row.diff);
    }
    return dims;
}

std::array<std::map<BiDegree, int>, 3> dims_from_cofseq_rows(std::span<const CofseqRow> rows,
                                                              const std::array<int, 3>& drops) {
    std::array<std::map<BiDegree, int>, 3> dims;
    for (const auto& row : rows) {
        auto c = static_cast<size_t>(row.iC);
        widen(dims[c], {row.stem, row.s}, row.base);
        if (!row.diff || row.level == kPermanentLevel) continue;
        if (is_hit(row.level)) {
            size_t from = (c + 2) % 3;
            widen(dims[from], {row.stem + drops[from], row.s - row.level}, *row.diff);
        } else {
            widen(dims[(c + 1) % 3], {row.stem - drops[c], row.s + kLevelTop - row.level}, *row.diff);
        }
    }
    return dims;
}

void insert_extension(SsState& cofseq, int iC, BiDegree deg, const IndexSet& x, int r,
                      const std::optional<IndexSet>& dx) {
    if (cofseq.geometry().components != 3)
        fail(Errc::Unsupported, fmt::format("{} is not an extension staircase", cofseq.name()));
    if (iC < 0 || iC > 2) fail(Errc::OutOfRange, fmt::format("iC = {} is not 0, 1 or 2", iC));
    if (r < 0) fail(Errc::OutOfRange, fmt::format("extension jump {} is negative", r));
    cofseq.insert_differential({iC, deg}, x, r, dx);
}

SsState cofseq_state(std::string name, const std::array<int, 3>& drops, const std::array<const SsState*, 3>& legs) {
    std::array<std::map<BiDegree, int>, 3> dims;
    for (size_t c = 0; c < 3; ++c) {
        if (!legs[c]) continue;
        for (const auto& loc : legs[c]->locations()) dims[c][loc.deg] = legs[c]->dim(loc);
    }
    SsState st(std::move(name), SsState::Geometry{3, 0, drops}, std::move(dims));
    for (size_t c = 0; c < 3; ++c) {
        if (!legs[c]) continue;
        for (const auto& loc : legs[c]->occupied()) {
            std::vector<IndexSet> rows;
            for (const auto& row : legs[c]->B_inf(loc).rows()) rows.push_back(row.vec);
            if (!rows.empty()) st.set_floor({static_cast<int>(c), loc.deg}, std::move(rows));
        }
    }
    return st;
}

}  // namespace sseq
