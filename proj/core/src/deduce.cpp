#include "sseq/deduce.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include <fmt/format.h>

#include "sseq/csv.hpp"
#include "sseq/error.hpp"

namespace sseq {

SsState& World::state(const std::string& name) {
    auto it = states.find(name);
    if (it == states.end()) fail(Errc::NotFound, fmt::format("no staircase named '{}'", name));
    return it->second;
}

const SsState& World::state(const std::string& name) const {
    auto it = states.find(name);
    if (it == states.end()) fail(Errc::NotFound, fmt::format("no staircase named '{}'", name));
    return it->second;
}

const SpectrumData* World::spectrum(const std::string& name) const {
    auto it = spectra.find(name);
    return it == spectra.end() ? nullptr : it->second.get();
}

std::vector<NullComposition> parse_null_compositions(std::string_view text, const std::string& file) {
    std::vector<NullComposition> out;
    bool first = true;
    for (const auto& rec : read_csv(text, file)) {
        bool header = first && rec.fields.size() == 2 && rec.fields[0].text == "first";
        first = false;
        if (header || (rec.fields.size() == 1 && rec.fields[0].text.empty())) continue;
        if (rec.fields.size() != 2)
            fail(Errc::SchemaError, fmt::format("expected 2 fields, got {}", rec.fields.size()), {file, rec.line, 1});
        out.push_back(NullComposition{rec.fields[0].text, rec.fields[1].text});
    }
    return out;
}

std::string subject_label(const World& world, const std::string& subject, const Loc& loc) {
    const SsState& st = world.state(subject);
    if (st.geometry().components > 1) return fmt::format("{}:{}", subject, loc.comp);
    return subject;
}

void cover_all(SsState& state) {
    for (const Loc& loc : state.locations()) {
        Subspace covered;
        for (const auto& e : state.entries(loc)) covered.add(e.base);
        for (int i = 0; i < state.dim(loc); ++i)
            if (covered.add(IndexSet{i})) state.insert_differential(loc, IndexSet{i}, state.geometry().r_min, std::nullopt);
    }
}

namespace {

constexpr int kEnumerationBits = 16;

IndexSet non_pivots(const Subspace& space, int dim) {
    IndexSet pivots;
    for (const auto& row : space.rows()) pivots.push_back(row.vec.front());
    std::sort(pivots.begin(), pivots.end());
    IndexSet out;
    for (int i = 0; i < dim; ++i)
        if (!std::binary_search(pivots.begin(), pivots.end(), i)) out.push_back(i);
    return out;
}

// Every F2 combination of a basis of the quotient, as canonical representatives.
std::vector<IndexSet> quotient_reps(const std::vector<IndexSet>& basis, const Subspace& modulo) {
    if (basis.size() > kEnumerationBits)
        fail(Errc::Unsupported, fmt::format("{} free directions exceed the enumeration cap", basis.size()));
    std::vector<IndexSet> out;
    const unsigned n = static_cast<unsigned>(basis.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        IndexSet v;
        for (unsigned b = 0; b < n; ++b)
            if (mask & (1u << b)) xor_into(v, basis[b]);
        out.push_back(modulo.reduce(std::move(v)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<IndexSet> unit_basis(const IndexSet& idx) {
    std::vector<IndexSet> out;
    for (int i : idx) out.push_back(IndexSet{i});
    return out;
}

// Complement of `lower` inside `upper`, reduced modulo lower.
std::vector<IndexSet> relative_basis(const Subspace& upper, const Subspace& lower) {
    Subspace acc = lower;
    std::vector<IndexSet> out;
    for (const auto& row : upper.rows())
        if (acc.add(row.vec)) out.push_back(lower.reduce(row.vec));
    return out;
}

bool accepts(const SsState& state, const Loc& loc, const IndexSet& x, int r, const IndexSet& v) {
    SsState trial = state;
    try {
        trial.insert_differential(loc, x, r, v);
        return true;
    } catch (const Error& e) {
        if (e.code() == Errc::Contradiction || e.code() == Errc::NotASurvivor) return false;
        throw;
    }
}

}  // namespace

std::vector<IndexSet> candidates(const SsState& state, const Loc& loc, const IndexSet& x, int r) {
    if (!state.is_survivor(loc, x, r))
        fail(Errc::NotASurvivor, fmt::format("[{}] at {} does not survive to E_{}", format_indices(x), to_string(loc), r));
    Loc tgt = state.target(loc, r);
    int n = state.dim(tgt);
    if (n == 0) return {IndexSet{}};
    Subspace bt = state.B(tgt, r - 1);
    IndexSet free = non_pivots(bt, n);
    std::vector<IndexSet> reps;
    if (static_cast<int>(free.size()) <= kEnumerationBits) {
        reps = quotient_reps(unit_basis(free), bt);
    } else {
        Subspace zt = state.Z(tgt, r - 1);
        reps = quotient_reps(relative_basis(zt, bt), bt);
    }
    std::vector<IndexSet> out;
    for (auto& v : reps) {
        if (!v.empty() && !state.admits(tgt, v, hit_level(r))) continue;
        if (accepts(state, loc, x, r, v)) out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end(), [](const IndexSet& a, const IndexSet& b) {
        if (a.empty() != b.empty()) return a.empty();
        return a < b;
    });
    return out;
}

bool degree_reason_trivial(const SsState& state, const Loc& loc, const IndexSet& x, int r) {
    try {
        auto c = candidates(state, loc, x, r);
        return c.size() == 1 && c.front().empty();
    } catch (const Error& e) {
        if (e.code() == Errc::NotASurvivor) return false;
        throw;
    }
}

std::vector<IndexSet> source_candidates(const SsState& state, const Loc& loc, const IndexSet& y, int r) {
    Loc src = state.source(loc, r);
    int n = state.dim(src);
    if (n == 0) return {};
    Subspace zr = state.Z(src, r);
    std::vector<IndexSet> reps;
    IndexSet free = non_pivots(zr, n);
    reps = quotient_reps(unit_basis(free), zr);
    std::vector<IndexSet> out;
    for (auto& v : reps)
        if (!v.empty() && state.is_survivor(src, v, r) && state.admits(src, v, supports_level(r)) &&
            accepts(state, src, v, r, y))
            out.push_back(std::move(v));
    return out;
}

namespace {

struct Fact {
    std::string subject;
    Loc loc;
    IndexSet x;
    int r = 2;
    IndexSet value;
    std::string step;
    int parent = -1;
};

std::string fact_text(const World& w, const Fact& f) {
    return fmt::format("{} ({},{}) d_{}[{}]=[{}]", subject_label(w, f.subject, f.loc), f.loc.deg.stem, f.loc.deg.s,
                       f.r, format_indices(f.x), format_indices(f.value));
}

class Propagator {
public:
    Propagator(World& w, const PropagateOptions& opts) : w_(w), opts_(opts) {}

    PropagateResult run(const Hypothesis& h) {
        Fact root{h.subject, h.loc, h.x, h.r, h.value, {}, -1};
        root.step = fmt::format("Get {}.", fact_text(w_, root));
        push(std::move(root));
        while (true) {
            if (!drain()) return result_;
            if (!opts_.degree_reasons && !opts_.xy_rule) break;
            if (!sweep()) return result_;
            if (queue_.empty()) break;
        }
        return result_;
    }

private:
    void push(Fact f) {
        facts_.push_back(std::move(f));
        queue_.push_back(static_cast<int>(facts_.size()) - 1);
    }

    std::string explain(int idx, const std::string& msg) const {
        std::vector<int> chain;
        for (int i = idx; i >= 0; i = facts_[static_cast<size_t>(i)].parent) chain.push_back(i);
        std::string out;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            if (!out.empty()) out += ' ';
            out += facts_[static_cast<size_t>(*it)].step;
        }
        return out + fmt::format("\nHowever, {}.", msg);
    }

    bool spend() {
        if (++result_.insertions > opts_.budget) {
            result_.status = PropagateResult::Status::BudgetExhausted;
            return false;
        }
        return true;
    }

    bool drain() {
        while (!queue_.empty()) {
            int idx = queue_.front();
            queue_.pop_front();
            const Fact f = facts_[static_cast<size_t>(idx)];
            SsState& st = w_.state(f.subject);
            try {
                Loc tgt = st.target(f.loc, f.r);
                auto k = st.known_diff(f.loc, f.x, f.r);
                if (k && st.B(tgt, f.r - 1).contains(xor_sets(*k, f.value))) continue;
                if (!spend()) return false;
                st.insert_differential(f.loc, f.x, f.r, f.value);
            } catch (const Error& e) {
                if (e.code() == Errc::OutOfRange) continue;
                result_.status = PropagateResult::Status::Contradiction;
                result_.explanation = explain(idx, e.detail());
                return false;
            }
            consequences(idx);
        }
        return true;
    }

    void derive(int parent, std::string subject, BiDegree deg, IndexSet x, int r, IndexSet value, std::string how) {
        Fact f{std::move(subject), Loc{0, deg}, std::move(x), r, std::move(value), {}, parent};
        f.step = fmt::format("{} and get {}.", how, fact_text(w_, f));
        push(std::move(f));
    }

    // Partners with a known d_r in the ring staircase.
    std::vector<std::pair<BasisVec, BasisVec>> known_partners(const SsState& ring, int r) const {
        std::vector<std::pair<BasisVec, BasisVec>> out;
        for (const Loc& la : ring.occupied()) {
            if (la.deg == BiDegree{0, 0}) continue;
            std::set<IndexSet> seen;
            for (const auto& e : ring.entries(la)) seen.insert(e.base);
            for (int i = 0; i < ring.dim(la); ++i) seen.insert(IndexSet{i});
            for (const auto& a : seen) {
                try {
                    auto ka = ring.known_diff(la, a, r);
                    if (!ka) continue;
                    out.push_back({BasisVec{la.deg, a}, BasisVec{ring.target(la, r).deg, *ka}});
                } catch (const Error&) {
                }
            }
        }
        return out;
    }

    void consequences(int idx) {
        const Fact f = facts_[static_cast<size_t>(idx)];
        const SsState& st = w_.state(f.subject);
        if (st.geometry().components != 1) return;
        const SpectrumData* ctx = w_.spectrum(f.subject);
        BasisVec x{f.loc.deg, f.x};
        BasisVec dx{st.target(f.loc, f.r).deg, f.value};

        if (ctx) {
            const SpectrumData& ring = ctx->ring_ctx();
            if (w_.states.contains(ring.name)) {
                const SsState& rst = w_.state(ring.name);
                for (const auto& [a, da] : known_partners(rst, f.r)) {
                    try {
                        auto p = leibniz_product(a, da, x, dx, f.r, *ctx);
                        derive(idx, f.subject, p.xy.deg, p.xy.idx, f.r, p.dxy.idx,
                               fmt::format("Apply the Leibniz rule with {} ({},{}) d_{}[{}]=[{}]", ring.name,
                                           a.deg.stem, a.deg.s, f.r, format_indices(a.idx), format_indices(da.idx)));
                    } catch (const Error&) {
                    }
                }
            }
            if (ctx->is_ring) {
                for (const auto& [name, spec] : w_.spectra) {
                    if (name == f.subject || spec->is_ring || spec->ring_ctx().name != ctx->name) continue;
                    if (!w_.states.contains(name)) continue;
                    const SsState& mst = w_.state(name);
                    for (const Loc& ly : mst.occupied()) {
                        for (const auto& e : mst.entries(ly)) {
                            try {
                                auto ky = mst.known_diff(ly, e.base, f.r);
                                if (!ky) continue;
                                BasisVec y{ly.deg, e.base};
                                BasisVec dy{mst.target(ly, f.r).deg, *ky};
                                auto p = leibniz_product(x, dx, y, dy, f.r, *spec);
                                derive(idx, name, p.xy.deg, p.xy.idx, f.r, p.dxy.idx,
                                       fmt::format("Apply the Leibniz rule with {} ({},{}) d_{}[{}]=[{}]", name,
                                                   ly.deg.stem, ly.deg.s, f.r, format_indices(e.base),
                                                   format_indices(*ky)));
                            } catch (const Error&) {
                            }
                        }
                    }
                }
            }
            if (ctx->is_ring && !f.x.empty() && st.B(st.target(f.loc, f.r), f.r - 1).contains(f.value)) {
                try {
                    auto sq = mul(x, x, *ctx);
                    BiDegree t = diff_target(sq.deg, f.r + 1);
                    if (!sq.is_zero() && t.t() <= ctx->max_t)
                        derive(idx, f.subject, sq.deg, sq.idx, f.r + 1, {}, "Apply the XX rule");
                } catch (const Error&) {
                }
            }
        }

        for (const auto& link : w_.maps) {
            if (link.source != f.subject || link.shift.af != 0 || !link.map) continue;
            const SpectrumData* src = w_.spectrum(link.source);
            const SpectrumData* dst = w_.spectrum(link.target);
            if (!src || !dst || !w_.states.contains(link.target)) continue;
            try {
                auto fx = apply_map(*link.map, x, *src, *dst);
                auto fdx = apply_map(*link.map, dx, *src, *dst);
                if (fx.is_zero() && fdx.is_zero()) continue;
                derive(idx, link.target, fx.deg, fx.idx, f.r, fdx.idx,
                       fmt::format("Apply naturality along {}__{}", link.source, link.target));
            } catch (const Error&) {
            }
        }
    }

    // Degree reasons and XY over every undetermined entry. Returns false on a contradiction.
    bool sweep() {
        for (auto& [name, st] : w_.states) {
            if (st.geometry().components != 1) continue;
            const SpectrumData* ctx = w_.spectrum(name);
            int top_s = st.max_s(0);
            for (const Loc& loc : st.occupied()) {
                std::vector<std::pair<IndexSet, int>> open;
                for (const auto& e : st.entries(loc)) {
                    auto info = decode_level(e.level);
                    if (info.kind == LevelInfo::Kind::Supports && !e.diff && info.r < kMaxLength)
                        open.push_back({e.base, info.r});
                }
                for (const auto& [base, r] : open) {
                    if (!sweep_one(name, st, ctx, loc, base, r, top_s)) return false;
                }
            }
        }
        return true;
    }

    bool sweep_one(const std::string& name, SsState& st, const SpectrumData* ctx, const Loc& loc, const IndexSet& base,
                   int r, int top_s) {
        std::vector<IndexSet> cands;
        try {
            cands = candidates(st, loc, base, r);
        } catch (const Error&) {
            return true;
        }
        if (cands.size() == 1 && opts_.degree_reasons) {
            if (loc.deg.s + r > top_s) {
                try {
                    if (st.top_level(loc, base) >= kPermanentLevel && st.admits(loc, base, kPermanentLevel)) {
                        if (!spend()) return false;
                        st.insert_permanent(loc, base);
                    }
                } catch (const Error&) {
                }
                return true;
            }
            Fact f{name, loc, base, r, cands.front(), {}, -1};
            f.step = fmt::format("By degree reason, {}.", fact_text(w_, f));
            push(std::move(f));
            return true;
        }
        if (!opts_.xy_rule || !ctx || static_cast<int>(cands.size()) > opts_.xy_candidate_cap) return true;
        const SpectrumData& ring = ctx->ring_ctx();
        if (!w_.states.contains(ring.name)) return true;
        BasisVec z{loc.deg, base};
        BiDegree tz = st.target(loc, r).deg;
        for (const auto& [a, da] : known_partners(w_.state(ring.name), r)) {
            std::optional<BasisVec> common;
            BasisVec prod;
            bool agree = true;
            for (const auto& c : cands) {
                try {
                    auto p = leibniz_product(a, da, z, BasisVec{tz, c}, r, *ctx);
                    prod = p.xy;
                    if (!common) {
                        common = p.dxy;
                    } else {
                        Loc pt = st.target(Loc{0, p.xy.deg}, r);
                        if (!st.B(pt, r - 1).contains(xor_sets(common->idx, p.dxy.idx))) agree = false;
                    }
                } catch (const Error&) {
                    agree = false;
                }
                if (!agree) break;
            }
            if (!agree || !common || prod.is_zero()) continue;
            try {
                auto k = st.known_diff(Loc{0, prod.deg}, prod.idx, r);
                if (k && st.B(st.target(Loc{0, prod.deg}, r), r - 1).contains(xor_sets(*k, common->idx))) continue;
            } catch (const Error&) {
            }
            Fact f{name, Loc{0, prod.deg}, prod.idx, r, common->idx, {}, -1};
            f.step = fmt::format("Apply the XY rule with {} ({},{}) d_{}[{}]=[{}] and get {}.", ring.name, a.deg.stem,
                                 a.deg.s, r, format_indices(a.idx), format_indices(da.idx), fact_text(w_, f));
            push(std::move(f));
        }
        return true;
    }

    World& w_;
    const PropagateOptions& opts_;
    PropagateResult result_;
    std::vector<Fact> facts_;
    std::deque<int> queue_;
};

}  // namespace

PropagateResult propagate(World& world, const Hypothesis& h, const PropagateOptions& opts) {
    return Propagator(world, opts).run(h);
}

namespace {

struct Search {
    const std::string& subject;
    Loc loc;
    IndexSet x;
    const DeduceOptions& opts;
    std::string label;

    ProofRow row(int depth, Reason reason, int r, const IndexSet& dx, std::optional<std::string> info) const {
        ProofRow p;
        p.depth = depth;
        p.reason = reason;
        p.name = label;
        p.stem = loc.deg.stem;
        p.s = loc.deg.s;
        p.t = loc.deg.t();
        p.r = r;
        p.x = x;
        p.dx = dx;
        p.info = std::move(info);
        return p;
    }

    struct Branch {
        IndexSet value;
        World world;
    };

    struct Level {
        std::vector<ProofRow> rows;
        std::vector<Branch> survivors;
    };

    // Tries every candidate of d_r(x) at this depth.
    Level expand(const World& w, int r, int depth) const {
        Level out;
        for (const auto& c : candidates(w.state(subject), loc, x, r)) {
            World b = w;
            auto res = propagate(b, Hypothesis{subject, loc, x, r, c}, opts.propagate);
            if (res.status == PropagateResult::Status::Contradiction) {
                out.rows.push_back(row(depth, Reason::T, r, c, res.explanation));
                continue;
            }
            if (res.status == PropagateResult::Status::Consistent && c.empty() && depth < opts.max_depth &&
                r + 1 <= opts.max_r) {
                auto sub = refute(b, r + 1, depth + 1);
                if (sub) {
                    out.rows.push_back(row(depth, Reason::T, r, c,
                                           fmt::format("Get {} ({},{}) d_{}[{}]=[]. Then every value of d_{} fails.",
                                                       label, loc.deg.stem, loc.deg.s, r, format_indices(x), r + 1)));
                    out.rows.insert(out.rows.end(), sub->begin(), sub->end());
                    continue;
                }
            }
            out.survivors.push_back({c, std::move(b)});
        }
        return out;
    }

    // Rows proving that x cannot survive to E_{r+1} from here, or nullopt.
    std::optional<std::vector<ProofRow>> refute(World w, int r, int depth) const {
        std::vector<ProofRow> acc;
        while (true) {
            if (!w.state(subject).is_survivor(loc, x, r)) return std::nullopt;
            Level lv = expand(w, r, depth);
            acc.insert(acc.end(), lv.rows.begin(), lv.rows.end());
            if (lv.survivors.empty()) return acc;
            if (lv.survivors.size() == 1 && lv.survivors.front().value.empty() && depth >= 2 && r + 1 <= opts.max_r) {
                acc.push_back(row(depth - 1, Reason::D, r, {}, std::nullopt));
                w = std::move(lv.survivors.front().world);
                ++r;
                continue;
            }
            return std::nullopt;
        }
    }
};

void number(std::vector<ProofRow>& rows) {
    long long id = 1;
    for (auto& p : rows) p.id = id++;
}

}  // namespace

DeduceResult deduce(const World& world, const std::string& subject, const Loc& loc, const IndexSet& x, int r,
                    const DeduceOptions& opts) {
    Search s{subject, loc, x, opts, subject_label(world, subject, loc)};
    auto lv = s.expand(world, r, 1);
    DeduceResult out;
    out.survivors = static_cast<int>(lv.survivors.size());
    out.trace = std::move(lv.rows);
    if (lv.survivors.size() == 1) {
        out.status = DeduceResult::Status::Deduced;
        out.value = lv.survivors.front().value;
        out.trace.push_back(s.row(0, Reason::D, r, out.value, std::nullopt));
    }
    number(out.trace);
    return out;
}

DeduceResult deduce_source(const World& world, const std::string& subject, const Loc& loc, const IndexSet& y, int r,
                           const DeduceOptions& opts) {
    const SsState& st = world.state(subject);
    Loc src = st.source(loc, r);
    std::string label = subject_label(world, subject, loc);
    auto row = [&](int depth, Reason reason, const IndexSet& x, std::optional<std::string> info) {
        ProofRow p;
        p.depth = depth;
        p.reason = reason;
        p.name = label;
        p.stem = loc.deg.stem;
        p.s = loc.deg.s;
        p.t = loc.deg.t();
        p.r = r;
        p.x = x;
        p.dx = y;
        p.info = std::move(info);
        return p;
    };
    DeduceResult out;
    std::vector<IndexSet> survivors;
    for (const auto& c : source_candidates(st, loc, y, r)) {
        World b = world;
        auto res = propagate(b, Hypothesis{subject, src, c, r, y}, opts.propagate);
        if (res.status == PropagateResult::Status::Contradiction)
            out.trace.push_back(row(1, Reason::TI, c, res.explanation));
        else
            survivors.push_back(c);
    }
    out.survivors = static_cast<int>(survivors.size());
    if (survivors.size() == 1) {
        out.status = DeduceResult::Status::Deduced;
        out.value = survivors.front();
        out.trace.push_back(row(0, Reason::DI, out.value, std::nullopt));
    }
    number(out.trace);
    return out;
}

std::vector<std::string> null_composition_violations(const World& world) {
    std::vector<std::string> out;
    for (const auto& [a, b] : world.null_compositions) {
        std::string ca = fmt::format("S0__C{}__S0", a);
        std::string cb = fmt::format("S0__C{}__S0", b);
        if (!world.states.contains(ca) || !world.states.contains(cb)) continue;
        const SsState& sa = world.state(ca);
        const SsState& sb = world.state(cb);
        for (const Loc& l : sa.occupied()) {
            if (l.comp != 0) continue;
            for (const auto& e : sa.entries(l)) {
                if (decode_level(e.level).kind != LevelInfo::Kind::Hit) continue;
                Loc lb{2, l.deg};
                if (sb.dim(lb) <= 0 || e.base.empty() || e.base.back() >= sb.dim(lb)) continue;
                int top = sb.top_level(lb, e.base);
                if (top <= kPermanentLevel || top >= kLevelTop) continue;
                int rb = kLevelTop - top;
                try {
                    auto k = sb.known_diff(lb, e.base, rb);
                    if (!k || sb.B(sb.target(lb, rb), rb - 1).contains(*k)) continue;
                    out.push_back(fmt::format("{} ({},{}) [{}] is the target of a {}-extension in {} but supports a "
                                              "{}-extension of length {} in {}",
                                              ca, l.deg.stem, l.deg.s, format_indices(e.base), a, ca, b, rb, cb));
                } catch (const Error&) {
                }
            }
        }
    }
    return out;
}

}  // namespace sseq
