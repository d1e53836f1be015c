#include "sseq/proofs.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include <fmt/format.h>

#include "sseq/error.hpp"

namespace sseq {

namespace {

struct Slot {
    ProofRow row;
    std::vector<int> kids;
};

bool is_branch(Reason r) { return r == Reason::T || r == Reason::TI; }
bool is_conclusion(Reason r) { return r == Reason::D || r == Reason::DI; }

ProofNode materialize(const std::vector<Slot>& arena, int i) {
    const Slot& s = arena[static_cast<size_t>(i)];
    ProofNode n{s.row, {}};
    for (int k : s.kids) n.children.push_back(materialize(arena, k));
    return n;
}

[[noreturn]] void nesting(const ProofRow& row, const std::string& msg) {
    fail(Errc::MalformedNesting, fmt::format("row {}: {}", row.id, msg));
}

}  // namespace

std::vector<ProofNode> build_forest(std::span<const ProofRow> rows) {
    std::vector<Slot> arena;
    std::vector<int> roots;
    std::vector<int> open;  // branch rows still accepting children
    int prev_depth = 0;
    auto depth_of = [&](int i) { return arena[static_cast<size_t>(i)].row.depth; };

    for (const auto& row : rows) {
        int d = row.depth;
        if (d < 0) nesting(row, "negative depth");
        if (d > prev_depth + 1) nesting(row, fmt::format("depth jumps from {} to {}", prev_depth, d));
        arena.push_back(Slot{row, {}});
        int me = static_cast<int>(arena.size()) - 1;

        if (is_conclusion(row.reason)) {
            while (!open.empty() && depth_of(open.back()) > d) open.pop_back();
            std::vector<int>* holder = nullptr;
            if (!open.empty() && depth_of(open.back()) == d)
                holder = &arena[static_cast<size_t>(open.back())].kids;
            else if (d == 0)
                holder = &roots;
            else
                nesting(row, fmt::format("conclusion at depth {} outside any branch", d));
            auto it = holder->end();
            while (it != holder->begin()) {
                const Slot& prev = arena[static_cast<size_t>(*(it - 1))];
                if (!is_branch(prev.row.reason) || prev.row.depth != d + 1) break;
                --it;
            }
            std::vector<int> gathered(it, holder->end());
            holder->erase(it, holder->end());
            arena[static_cast<size_t>(me)].kids = std::move(gathered);
            holder->push_back(me);
        } else {
            while (!open.empty() && depth_of(open.back()) >= d) open.pop_back();
            if (!open.empty() && depth_of(open.back()) == d - 1)
                arena[static_cast<size_t>(open.back())].kids.push_back(me);
            else if (d <= 1)
                roots.push_back(me);
            else
                nesting(row, fmt::format("no open branch at depth {}", d - 1));
            if (is_branch(row.reason)) open.push_back(me);
        }
        prev_depth = d;
    }

    std::vector<ProofNode> out;
    for (int r : roots) out.push_back(materialize(arena, r));
    return out;
}

std::string shape(const ProofNode& node) {
    std::string out = fmt::format("({},{})", node.row.depth, reason_name(node.row.reason));
    if (node.children.empty()) return out;
    out += '[';
    for (size_t i = 0; i < node.children.size(); ++i) {
        if (i) out += ',';
        out += shape(node.children[i]);
    }
    return out + ']';
}

std::vector<ElementRef> extract_refs(std::string_view info) {
    static const std::regex pattern(R"(([A-Za-z0-9_]+(?::[0-2])?) \((-?\d+), ?(-?\d+)\) \[([0-9,]*)\])");
    std::vector<ElementRef> out;
    std::string text(info);
    for (auto it = std::sregex_iterator(text.begin(), text.end(), pattern); it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        ElementRef ref;
        ref.name = m[1].str();
        ref.deg = {std::stoi(m[2].str()), std::stoi(m[3].str())};
        auto idx = parse_index_vec(m[4].str());
        if (!idx) continue;
        ref.idx = *idx;
        out.push_back(std::move(ref));
    }
    return out;
}

std::string_view status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Ok: return "ok";
        case CheckStatus::Failed: return "failed";
        case CheckStatus::Skipped: return "skipped";
    }
    return "?";
}

std::string_view failure_name(FailureKind k) {
    switch (k) {
        case FailureKind::None: return "None";
        case FailureKind::Mismatch: return "Mismatch";
        case FailureKind::IncompleteEnumeration: return "IncompleteEnumeration";
        case FailureKind::NotReplayable: return "NotReplayable";
        case FailureKind::DegreeError: return "DegreeError";
        case FailureKind::BadReference: return "BadReference";
        case FailureKind::Nesting: return "Nesting";
        case FailureKind::Parse: return "Parse";
    }
    return "?";
}

int VerifyReport::count(CheckStatus s) const {
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [&](const NodeCheck& c) { return c.status == s; }));
}

namespace {

struct Subject {
    std::string state;
    int comp = 0;
};

Subject split_subject(const std::string& name) {
    auto colon = name.rfind(':');
    if (colon != std::string::npos && colon + 2 == name.size() && name[colon + 1] >= '0' && name[colon + 1] <= '2')
        return {name.substr(0, colon), name[colon + 1] - '0'};
    return {name, 0};
}

bool in_range(const SsState& st, const Loc& loc, const std::optional<IndexSet>& v) {
    if (!v || v->empty()) return true;
    return v->back() < st.dim(loc) && v->front() >= 0;
}

class Verifier {
public:
    Verifier(const VerifyOptions& opts, VerifyReport& report) : opts_(opts), report_(report) {}

    // Checks node inside ctx; returns whether the node holds (Skipped counts as holding).
    bool check(const ProofNode& node, World& ctx) {
        const ProofRow& row = node.row;
        if (row.t != row.stem + row.s)
            return record(row, CheckStatus::Failed, FailureKind::DegreeError,
                          fmt::format("t={} but stem+s={}", row.t, row.stem + row.s));
        Subject sub = split_subject(row.name);
        if (!ctx.states.contains(sub.state)) {
            for (const auto& c : node.children) check(c, ctx);
            return record(row, CheckStatus::Skipped, FailureKind::None, fmt::format("'{}' is not loaded", sub.state));
        }
        if (row.info && !check_refs(row, *row.info, ctx)) return false;
        try {
            return dispatch(node, ctx, sub);
        } catch (const Error& e) {
            if (e.code() == Errc::Unsupported)
                return record(row, CheckStatus::Skipped, FailureKind::None, e.detail());
            return record(row, CheckStatus::Failed, FailureKind::Mismatch, e.detail());
        }
    }

private:
    bool record(const ProofRow& row, CheckStatus st, FailureKind kind, std::string msg) {
        report_.checks.push_back(NodeCheck{row.id, row.reason, st, kind, std::move(msg)});
        return st != CheckStatus::Failed;
    }
    bool ok(const ProofRow& row) { return record(row, CheckStatus::Ok, FailureKind::None, {}); }

    bool check_refs(const ProofRow& row, const std::string& info, const World& ctx) {
        for (const auto& ref : extract_refs(info)) {
            Subject s = split_subject(ref.name);
            if (!ctx.states.contains(s.state)) continue;
            const SsState& st = ctx.state(s.state);
            Loc loc{s.comp, ref.deg};
            if (!in_range(st, loc, ref.idx))
                return record(row, CheckStatus::Failed, FailureKind::BadReference,
                              fmt::format("{} ({},{}) [{}] is outside the E2 basis", ref.name, ref.deg.stem, ref.deg.s,
                                          format_indices(ref.idx)));
        }
        return true;
    }

    // Hypothesis of a branch or conclusion, placed at the source of the differential.
    Hypothesis hypothesis(const ProofRow& row, const SsState& st, const Subject& sub) const {
        Loc at{sub.comp, {row.stem, row.s}};
        if (row.dx_keyed()) at = st.source(at, row.r);
        return Hypothesis{sub.state, at, row.x.value_or(IndexSet{}), row.r, row.dx.value_or(IndexSet{})};
    }

    bool dispatch(const ProofNode& node, World& ctx, const Subject& sub) {
        const ProofRow& row = node.row;
        const SsState& st = ctx.state(sub.state);
        Loc loc{sub.comp, {row.stem, row.s}};
        switch (row.reason) {
            case Reason::T:
            case Reason::TI: return check_branch(node, ctx, sub);
            case Reason::D:
            case Reason::DI: return check_conclusion(node, ctx, sub);
            case Reason::G: {
                if (row.dx && !row.dx->empty())
                    return record(row, CheckStatus::Failed, FailureKind::Mismatch, "degree-reason rows carry a zero value");
                if (!degree_reason_trivial(st, loc, row.x.value_or(IndexSet{}), row.r))
                    return record(row, CheckStatus::Failed, FailureKind::Mismatch,
                                  fmt::format("d_{} has a nonzero admissible value", row.r));
                return ok(row);
            }
            case Reason::GI: {
                if (!source_candidates(st, loc, row.dx.value_or(IndexSet{}), row.r).empty())
                    return record(row, CheckStatus::Failed, FailureKind::Mismatch,
                                  fmt::format("a d_{} source is still admissible", row.r));
                return ok(row);
            }
            case Reason::d2: return check_d2(row, ctx, sub);
            case Reason::N: return check_naturality(row, ctx, sub);
            case Reason::XX: return check_square(row, ctx, sub);
            case Reason::XY: {
                auto k = st.known_diff(loc, row.x.value_or(IndexSet{}), row.r);
                if (!k) return record(row, CheckStatus::Skipped, FailureKind::None, "differential not recorded");
                if (!st.B(st.target(loc, row.r), row.r - 1).contains(xor_sets(*k, row.dx.value_or(IndexSet{}))))
                    return record(row, CheckStatus::Failed, FailureKind::Mismatch,
                                  fmt::format("recorded value is [{}]", format_indices(*k)));
                return ok(row);
            }
            case Reason::OutCsI:
                if (!in_range(st, loc, row.dx))
                    return record(row, CheckStatus::Failed, FailureKind::DegreeError, "dx is outside the E2 basis");
                return ok(row);
            case Reason::ToCs:
            case Reason::CsCm:
            case Reason::Syn:
            case Reason::SynCs:
            case Reason::SynIn: {
                if (!in_range(st, loc, row.x))
                    return record(row, CheckStatus::Failed, FailureKind::DegreeError, "x is outside the E2 basis");
                if (row.r >= st.geometry().r_min && !in_range(st, st.target(loc, row.r), row.dx))
                    return record(row, CheckStatus::Failed, FailureKind::DegreeError, "dx is outside the E2 basis");
                return ok(row);
            }
        }
        return ok(row);
    }

    bool check_d2(const ProofRow& row, const World& ctx, const Subject& sub) {
        const SpectrumData* sp = ctx.spectrum(sub.state);
        if (!sp) return record(row, CheckStatus::Skipped, FailureKind::None, "no E2 data");
        if (row.r != 2) return record(row, CheckStatus::Failed, FailureKind::Mismatch, "d2 row with r != 2");
        BiDegree deg{row.stem, row.s};
        IndexSet sum;
        for (int i : row.x.value_or(IndexSet{})) {
            const auto& d2 = sp->basis_row(deg, i).d2;
            if (!d2) return record(row, CheckStatus::Skipped, FailureKind::None, "d2 column not computed");
            xor_into(sum, *d2);
        }
        if (sum != row.dx.value_or(IndexSet{}))
            return record(row, CheckStatus::Failed, FailureKind::Mismatch,
                          fmt::format("basis table gives d2 = [{}]", format_indices(sum)));
        return ok(row);
    }

    bool check_naturality(const ProofRow& row, const World& ctx, const Subject& sub) {
        const SsState& st = ctx.state(sub.state);
        Loc loc{sub.comp, {row.stem, row.s}};
        Loc tgt = st.target(loc, row.r);
        bool any_link = false;
        for (const auto& link : ctx.maps) {
            if (link.target != sub.state || link.shift.af != 0 || !link.map) continue;
            const SpectrumData* src = ctx.spectrum(link.source);
            const SpectrumData* dst = ctx.spectrum(link.target);
            if (!src || !dst || !ctx.states.contains(link.source)) continue;
            any_link = true;
            const SsState& sst = ctx.state(link.source);
            for (const Loc& l : sst.occupied()) {
                for (const auto& e : sst.entries(l)) {
                    auto info = decode_level(e.level);
                    if (info.kind != LevelInfo::Kind::Supports || info.r != row.r || !e.diff) continue;
                    try {
                        auto fx = apply_map(*link.map, BasisVec{l.deg, e.base}, *src, *dst);
                        auto fdx = apply_map(*link.map, BasisVec{sst.target(l, row.r).deg, *e.diff}, *src, *dst);
                        if (fx.deg != loc.deg || fx.idx != row.x.value_or(IndexSet{})) continue;
                        if (st.B(tgt, row.r - 1).contains(xor_sets(fdx.idx, row.dx.value_or(IndexSet{}))))
                            return ok(row);
                    } catch (const Error&) {
                    }
                }
            }
        }
        if (!any_link) return record(row, CheckStatus::Skipped, FailureKind::None, "no map into the subject is loaded");
        return record(row, CheckStatus::Failed, FailureKind::Mismatch, "no loaded map carries a matching differential");
    }

    bool check_square(const ProofRow& row, const World& ctx, const Subject& sub) {
        const SpectrumData* sp = ctx.spectrum(sub.state);
        if (!sp || !sp->is_ring) return record(row, CheckStatus::Skipped, FailureKind::None, "no ring data");
        if (row.dx && !row.dx->empty())
            return record(row, CheckStatus::Failed, FailureKind::Mismatch, "a square differential must vanish");
        if (row.stem % 2 || row.s % 2) return record(row, CheckStatus::Failed, FailureKind::DegreeError, "odd degree");
        const SsState& st = ctx.state(sub.state);
        BiDegree half{row.stem / 2, row.s / 2};
        int n = sp->dim(half);
        if (n > 12) return record(row, CheckStatus::Skipped, FailureKind::None, "too many square roots to try");
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            IndexSet y;
            for (int b = 0; b < n; ++b)
                if (mask & (1u << b)) y.push_back(b);
            auto sq = mul(BasisVec{half, y}, BasisVec{half, y}, *sp);
            if (sq.idx != row.x.value_or(IndexSet{})) continue;
            try {
                auto k = st.known_diff(Loc{0, half}, y, row.r - 1);
                if (k && st.B(st.target(Loc{0, half}, row.r - 1), row.r - 2).contains(*k)) return ok(row);
            } catch (const Error&) {
            }
        }
        return record(row, CheckStatus::Failed, FailureKind::Mismatch, "no square root with a vanishing shorter differential");
    }

    bool check_branch(const ProofNode& node, World& ctx, const Subject& sub) {
        const ProofRow& row = node.row;
        if (!opts_.replay_contradictions) return record(row, CheckStatus::Skipped, FailureKind::None, "replay disabled");
        World b = ctx;
        auto h = hypothesis(row, b.state(sub.state), sub);
        auto res = propagate(b, h, opts_.propagate);
        if (res.status == PropagateResult::Status::Contradiction) {
            for (const auto& c : node.children) check(c, b);
            return ok(row);
        }
        if (res.status == PropagateResult::Status::BudgetExhausted)
            return record(row, CheckStatus::Skipped, FailureKind::None, "propagation budget exhausted");
        if (node.children.empty())
            return record(row, CheckStatus::Failed, FailureKind::NotReplayable, "the assumption propagates without contradiction");
        bool all = true;
        std::vector<const ProofNode*> trailing;
        for (const auto& c : node.children) {
            all = check(c, b) && all;
            if (c.is_conclusion())
                trailing.clear();
            else if (c.is_branch())
                trailing.push_back(&c);
        }
        if (!all)
            return record(row, CheckStatus::Failed, FailureKind::NotReplayable, "a nested step does not hold");
        if (trailing.empty())
            return record(row, CheckStatus::Failed, FailureKind::NotReplayable, "nested steps end without a refutation");
        std::vector<IndexSet> tried;
        for (const auto* t : trailing) tried.push_back(t->row.reason == Reason::TI ? t->row.x.value_or(IndexSet{}) : t->row.dx.value_or(IndexSet{}));
        if (auto miss = uncovered(*trailing.front(), b, sub, tried))
            return record(row, CheckStatus::Failed, FailureKind::IncompleteEnumeration,
                          fmt::format("nested branches never try [{}]", format_indices(*miss)));
        return ok(row);
    }

    // First admissible value not covered by the tried ones, using the representative row's context.
    std::optional<IndexSet> uncovered(const ProofNode& rep, const World& ctx, const Subject& sub,
                                      const std::vector<IndexSet>& tried) {
        const ProofRow& row = rep.row;
        const SsState& st = ctx.state(sub.state);
        Loc at{sub.comp, {row.stem, row.s}};
        bool inverse = row.reason == Reason::TI || row.reason == Reason::DI;
        std::vector<IndexSet> cands;
        Subspace modulo;
        if (inverse) {
            cands = source_candidates(st, at, row.dx.value_or(IndexSet{}), row.r);
            modulo = st.Z(st.source(at, row.r), row.r);
        } else {
            cands = candidates(st, at, row.x.value_or(IndexSet{}), row.r);
            modulo = st.B(st.target(at, row.r), row.r - 1);
        }
        std::set<IndexSet> covered;
        for (const auto& v : tried) covered.insert(modulo.reduce(v));
        for (const auto& c : cands)
            if (!covered.contains(modulo.reduce(c))) return c;
        return std::nullopt;
    }

    bool check_conclusion(const ProofNode& node, World& ctx, const Subject& sub) {
        const ProofRow& row = node.row;
        bool inverse = row.reason == Reason::DI;
        bool all = true;
        std::vector<IndexSet> tried;
        for (const auto& c : node.children) {
            all = check(c, ctx) && all;
            tried.push_back(inverse ? c.row.x.value_or(IndexSet{}) : c.row.dx.value_or(IndexSet{}));
        }
        tried.push_back(inverse ? row.x.value_or(IndexSet{}) : row.dx.value_or(IndexSet{}));
        if (!all) return record(row, CheckStatus::Failed, FailureKind::NotReplayable, "a ruled-out branch does not hold");
        if (auto miss = uncovered(node, ctx, sub, tried))
            return record(row, CheckStatus::Failed, FailureKind::IncompleteEnumeration,
                          fmt::format("candidate [{}] is never ruled out", format_indices(*miss)));
        auto h = hypothesis(row, ctx.state(sub.state), sub);
        auto res = propagate(ctx, h, opts_.propagate);
        if (res.status == PropagateResult::Status::Contradiction)
            return record(row, CheckStatus::Failed, FailureKind::Mismatch,
                          fmt::format("the conclusion itself is contradictory: {}", res.explanation));
        return ok(row);
    }

    const VerifyOptions& opts_;
    VerifyReport& report_;
};

}  // namespace

VerifyReport verify_node(const ProofNode& node, const World& world, const VerifyOptions& opts) {
    VerifyReport report;
    World ctx = world;
    Verifier v(opts, report);
    if (node.is_branch() && node.row.depth >= 1) {
        report.checks.push_back(
            NodeCheck{node.row.id, node.row.reason, CheckStatus::Failed, FailureKind::Nesting, "branch without a conclusion"});
        return report;
    }
    v.check(node, ctx);
    return report;
}

std::string ReplaySummary::text() const {
    std::string out = fmt::format("rows: {}\nblocks: {}\nchecks: {} ok, {} failed, {} skipped\n", rows, blocks, ok,
                                  failed, skipped);
    for (int i = 0; i < kReasonCount; ++i)
        if (by_reason[static_cast<size_t>(i)])
            out += fmt::format("reason {}: {}\n", reason_name(static_cast<Reason>(i)), by_reason[static_cast<size_t>(i)]);
    for (const auto& [k, v] : by_failure) out += fmt::format("failure {}: {}\n", k, v);
    for (const auto& e : errors) out += e + '\n';
    return out;
}

std::string ReplaySummary::csv() const {
    std::string out = "key,value\n";
    out += fmt::format("rows,{}\nblocks,{}\nok,{}\nfailed,{}\nskipped,{}\n", rows, blocks, ok, failed, skipped);
    for (int i = 0; i < kReasonCount; ++i)
        out += fmt::format("reason.{},{}\n", reason_name(static_cast<Reason>(i)), by_reason[static_cast<size_t>(i)]);
    for (const auto& [k, v] : by_failure) out += fmt::format("failure.{},{}\n", k, v);
    return out;
}

namespace {

class BlockReplayer {
public:
    BlockReplayer(const World& world, const VerifyOptions& opts, ReplaySummary& sum)
        : world_(world), opts_(opts), sum_(sum) {}

    void add(const ProofRow& row) {
        ++sum_.rows;
        ++sum_.by_reason[static_cast<size_t>(row.reason)];
        block_.push_back(row);
        if (row.depth == 0 && !is_branch(row.reason)) flush();
    }

    void flush() {
        if (block_.empty()) return;
        ++sum_.blocks;
        try {
            for (const auto& root : build_forest(block_)) tally(verify_node(root, world_, opts_));
        } catch (const Error& e) {
            ++sum_.failed;
            ++sum_.by_failure[std::string(failure_name(FailureKind::Nesting))];
            sum_.errors.push_back(e.detail());
        }
        block_.clear();
    }

private:
    void tally(const VerifyReport& rep) {
        for (const auto& c : rep.checks) {
            switch (c.status) {
                case CheckStatus::Ok: ++sum_.ok; break;
                case CheckStatus::Skipped: ++sum_.skipped; break;
                case CheckStatus::Failed:
                    ++sum_.failed;
                    ++sum_.by_failure[std::string(failure_name(c.failure))];
                    sum_.errors.push_back(fmt::format("{}: {}", c.id, c.message));
                    break;
            }
        }
    }

    const World& world_;
    const VerifyOptions& opts_;
    ReplaySummary& sum_;
    std::vector<ProofRow> block_;
};

}  // namespace

ReplaySummary replay(std::span<const std::filesystem::path> parts, const World& world, const VerifyOptions& opts) {
    ReplaySummary sum;
    BlockReplayer rep(world, opts, sum);
    try {
        for_each_proof_row(parts, [&](const ProofRow& row, const SourceLoc&) { rep.add(row); });
    } catch (const Error& e) {
        ++sum.by_failure[std::string(failure_name(FailureKind::Parse))];
        sum.errors.push_back(e.what());
    }
    rep.flush();
    return sum;
}

ReplaySummary replay_rows(std::span<const ProofRow> rows, const World& world, const VerifyOptions& opts) {
    ReplaySummary sum;
    BlockReplayer rep(world, opts, sum);
    for (const auto& row : rows) rep.add(row);
    rep.flush();
    return sum;
}

}  // namespace sseq
