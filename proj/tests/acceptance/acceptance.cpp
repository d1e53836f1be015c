// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "fixture_dir.hpp"
#include "leibniz_toy.hpp"
#include "sseq/chart.hpp"
#include "sseq/deduce.hpp"
#include "sseq/formats.hpp"
#include "sseq/naming.hpp"
#include "sseq/proofs.hpp"
#include "sseq/ss.hpp"
#include "staircase_oracle.hpp"
#include "toy.hpp"

namespace fs = std::filesystem;
using namespace sseq;
using namespace sseq::testing;

namespace {

// Pinned budgets and sizes.
constexpr double kRoundTripSeconds = 1.0;
constexpr double kNamingSeconds = 1.0;
constexpr double kDeductionSeconds = 10.0;
constexpr int kRandomElements = 1000;
constexpr int kMutations = 100;
constexpr int kMinNoOpMutations = 10;
constexpr int kMinUniqueToys = 20;
constexpr int kMinAmbiguousToys = 10;
constexpr int kToySeedLimit = 2000;
constexpr int kLeibnizTop = 30;
constexpr int kSpectrumNames = 49;
constexpr int kMapNames = 180;
constexpr int kCofseqNames = 61;
constexpr int kChartTables = 12;

const fs::path kFixtures = kFixtureDir;

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string squash(std::string_view text) {
    std::string out;
    bool gap = false;
    for (char c : text) {
        if (c == ' ' || c == '\n' || c == '\r' || c == '\t') {
            gap = !out.empty();
            continue;
        }
        if (gap) out += ' ';
        gap = false;
        out += c;
    }
    return out;
}

std::vector<std::string> lines_of(const fs::path& p) {
    std::vector<std::string> out;
    std::string text = read_file(p), cur;
    for (char c : text) {
        if (c == '\n') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// Name column of a "name,..." CSV list.
std::vector<std::string> first_column(const fs::path& p) {
    std::vector<std::string> out;
    for (const auto& rec : read_csv(read_file(p), p.string()))
        if (rec.fields.at(0).text != "name") out.push_back(rec.fields[0].text);
    return out;
}

Outcome format_round_trip() {
    auto t0 = Clock::now();
    int files = 0, rows = 0, bad = 0;
    std::string first_bad;
    for (const auto& entry : fs::directory_iterator(kFixtures / "tables")) {
        const fs::path& p = entry.path();
        std::string name = p.filename().string();
        std::string text = read_file(p);
        std::string back;
        size_t n = 0;
        auto spectrum = name.substr(0, name.find('_'));
        Arity arity = is_ring_name(spectrum) ? Arity::Ring : Arity::Module;
        if (name.ends_with("_generators.csv")) {
            auto r = parse_generators(text, name);
            n = r.size(), back = serialize_generators(r);
        } else if (name.ends_with("_relations.csv")) {
            auto r = parse_relations(text, arity, name);
            n = r.size(), back = serialize_relations(r);
        } else if (name.ends_with("_basis.csv")) {
            auto r = parse_basis(text, arity, name);
            n = r.size(), back = serialize_basis(r);
        } else if (name.starts_with("map_")) {
            auto target = name.substr(name.find("_to_") + 4);
            target = target.substr(0, target.size() - 4);
            auto r = parse_map(text, is_ring_name(target) ? Arity::Ring : Arity::Module, name);
            n = r.size(), back = serialize_map(r);
        } else if (name.ends_with("_ss.csv")) {
            auto r = parse_ss(text, name);
            n = r.size(), back = serialize_ss(r);
        } else if (name.starts_with("cofseq_")) {
            auto r = parse_cofseq(text, name);
            n = r.size(), back = serialize_cofseq(r);
        } else if (name.starts_with("proofs")) {
            auto r = parse_proofs(text, name);
            n = r.size(), back = serialize_proofs(r);
        } else {
            continue;
        }
        ++files;
        rows += static_cast<int>(n);
        if (back != text) {
            ++bad;
            if (first_bad.empty()) first_bad = name;
        }
    }
    double secs = seconds_since(t0);
    bool pass = files >= 8 && bad == 0 && secs < kRoundTripSeconds;
    return {pass, fmt::format("{} files, {} rows, {} not byte-identical{}, {:.3f}s", files, rows, bad,
                              first_bad.empty() ? "" : " (" + first_bad + ")", secs)};
}

Element random_element(std::mt19937_64& rng, Arity arity) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    Element e;
    int terms = pick(0, 5);
    for (int k = 0; k < terms; ++k) {
        Monomial m;
        int gens = pick(arity == Arity::Ring ? 1 : 0, 4);
        int id = -1;
        for (int g = 0; g < gens; ++g) {
            id += pick(1, 6);
            m.ring.push_back({id, pick(1, 9)});
        }
        if (arity == Arity::Module) m.module_gen = pick(0, 12);
        e.terms.push_back(m);
    }
    return e.canonical();
}

Outcome expression_grammar() {
    int failures = 0;
    Element ring = parse_expr("0,1;1,2,5,4", Arity::Ring);
    Element want_ring{{Monomial{{{0, 1}}, std::nullopt}, Monomial{{{1, 2}, {5, 4}}, std::nullopt}}};
    if (!(ring == want_ring) || serialize_expr(ring) != "0,1;1,2,5,4") ++failures;
    Element mod = parse_expr("0,1,3;1,2,5,4,7", Arity::Module);
    Element want_mod{{Monomial{{{0, 1}}, 3}, Monomial{{{1, 2}, {5, 4}}, 7}}};
    if (!(mod == want_mod) || serialize_expr(mod) != "0,1,3;1,2,5,4,7") ++failures;
    int stated = failures;

    std::mt19937_64 rng(20240601);
    int random_failures = 0;
    for (int i = 0; i < kRandomElements; ++i) {
        Arity arity = i % 2 ? Arity::Module : Arity::Ring;
        Element e = random_element(rng, arity);
        std::string text = serialize_expr(e);
        Element back = parse_expr(text, arity);
        if (back.terms != e.terms || serialize_expr(back) != text) ++random_failures;
    }
    return {stated == 0 && random_failures == 0,
            fmt::format("stated examples {} mismatches; {} random elements, {} round-trip failures", stated,
                        kRandomElements, random_failures)};
}

Outcome naming_coverage() {
    auto t0 = Clock::now();
    auto spectra = first_column(kFixtures / "names" / "spectra.csv");
    auto maps = first_column(kFixtures / "names" / "maps.csv");
    auto cofseqs = lines_of(kFixtures / "names" / "cofseqs.txt");
    int malformed = 0, inconsistent = 0;
    for (const auto& n : spectra) {
        try {
            (void)parse_spectrum_name(n);
        } catch (const Error&) {
            ++malformed;
        }
    }
    for (const auto& n : maps) {
        try {
            (void)parse_map_name(n);
        } catch (const Error&) {
            ++malformed;
        }
    }
    int shift = -1;
    for (const auto& n : cofseqs) {
        try {
            auto c = parse_cofseq_name(n);
            if (!cells_consistent(c)) ++inconsistent;
            if (n == "Cnu__CW_nu_eta_2__C2") shift = c.drops[1];
        } catch (const Error&) {
            ++malformed;
        }
    }
    double secs = seconds_since(t0);
    bool counts = spectra.size() == kSpectrumNames && maps.size() == kMapNames && cofseqs.size() == kCofseqNames;
    bool pass = counts && malformed == 0 && inconsistent == 0 && shift == 6 && secs < kNamingSeconds;
    return {pass, fmt::format("{}/{}/{} names, {} malformed, {} inconsistent cofseqs, Cnu -> CW_nu_eta_2 shift {}, "
                              "{:.3f}s",
                              spectra.size(), maps.size(), cofseqs.size(), malformed, inconsistent, shift, secs)};
}

// Name -> index at one bidegree, from the names fixture.
std::map<std::string, int> names_at(BiDegree d) {
    std::map<std::string, int> out;
    auto p = kFixtures / "ss" / "S0_stem123_names.csv";
    for (const auto& rec : read_csv(read_file(p), p.string())) {
        if (rec.fields[0].text == "stem") continue;
        if (parse_int(rec.fields[0].text) == d.stem && parse_int(rec.fields[1].text) == d.s)
            out[rec.fields[3].text] = parse_int(rec.fields[2].text);
    }
    return out;
}

Outcome staircase_chain() {
    auto rows = load_ss(kFixtures / "ss" / "S0_stem123_ss.csv");
    auto built = build(SsState::adams("S0", dims_from_rows(rows)), rows, BuildOptions{false, true});
    const SsState& st = built.state;
    Loc at{0, {123, 11}};
    auto idx = names_at(at.deg);
    IndexSet a{idx.at("h_0^2x_{123,9}")};
    IndexSet b{idx.at("h_5x_{92,10}")};
    IndexSet c{idx.at("x_{123,11,2}"), idx.at("x_{123,11}"), idx.at("h_0h_6[B_4]")};
    std::sort(c.begin(), c.end());

    auto spanned = [](std::vector<IndexSet> gens) { return Subspace::span(gens); };
    Subspace b2 = spanned({a}), b5 = spanned({a, b}), z6 = spanned({a, b, c});
    int bad = 0;
    for (int r : {2, 3, 4})
        if (!(st.B(at, r) == b2)) ++bad;
    for (int r : {5, 6})
        if (!(st.B(at, r) == b5)) ++bad;
    for (int r : {3, 4, 5, 6})
        if (!(st.Z(at, r) == z6)) ++bad;
    if (st.B(at, 4).contains(b)) ++bad;
    if (st.B(at, 6).contains(c)) ++bad;
    if (st.B(at, 4).rank() != 1 || st.B(at, 5).rank() != 2 || st.Z(at, 6).rank() != 3) ++bad;
    return {built.report.ok() && bad == 0,
            fmt::format("{} build violations; ranks B4={} B5={} Z6={}; {} chain assertions failed",
                        built.report.violations.size(), st.B(at, 4).rank(), st.B(at, 5).rank(), st.Z(at, 6).rank(),
                        bad)};
}

Outcome level_encoding() {
    int bad = 0, checked = 0;
    auto roundtrip = [&](int level) {
        ++checked;
        try {
            if (encode_level(decode_level(level)) != level) ++bad;
        } catch (const Error&) {
            ++bad;
        }
    };
    for (int l = 1; l <= 4999; ++l) roundtrip(l);
    roundtrip(kPermanentLevel);
    for (int l = 9001; l <= 10000; ++l) roundtrip(l);
    int rejected = 0;
    for (int l : {0, 5000, 8999, 10001, -1}) {
        try {
            (void)decode_level(l);
        } catch (const Error& e) {
            if (e.code() == Errc::SentinelConflict) ++rejected;
        }
    }
    using K = LevelInfo::Kind;
    bool rows = decode_level(9998) == LevelInfo{K::Supports, 2} && decode_level(2) == LevelInfo{K::Hit, 2} &&
                decode_level(9000) == LevelInfo{K::Permanent, 0} && decode_level(10000) == LevelInfo{K::Supports, 0};
    return {bad == 0 && rejected == 5 && rows,
            fmt::format("{} levels, {} bijection failures, {}/5 sentinels rejected, stated rows {}", checked, bad,
                        rejected, rows ? "decode as stated" : "MISMATCH")};
}

// Mutations of one field of one row; no-op kinds leave every coset unchanged.
struct Mutation {
    std::vector<SsRow> rows;
    bool no_op = false;
};

Mutation mutate(const std::vector<SsRow>& rows, const std::map<BiDegree, int>& dims, std::mt19937_64& rng) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto dim = [&](BiDegree d) {
        auto it = dims.find(d);
        return it == dims.end() ? 0 : it->second;
    };
    auto flip = [&](IndexSet v, int bound) {
        int k = pick(0, bound);
        auto p = std::find(v.begin(), v.end(), k);
        if (p == v.end()) v.insert(std::upper_bound(v.begin(), v.end(), k), k);
        else v.erase(p);
        return v;
    };
    static constexpr int kLevels[] = {0, 1, 2, 3, 4, 5, 6, 7, 5000, 9000, 9988, 9993, 9995, 9997, 9998, 9999, 10000};

    Mutation m{rows, false};
    auto& row = m.rows[static_cast<size_t>(pick(0, static_cast<int>(rows.size()) - 1))];
    BiDegree at{row.stem, row.s};
    switch (pick(0, 5)) {
        case 0: row.base = flip(row.base, dim(at)); break;
        case 1:
            if (row.diff && pick(0, 3)) row.diff = flip(*row.diff, 3);
            else row.diff = row.diff ? std::nullopt : std::optional<IndexSet>{IndexSet{0}};
            break;
        case 2: row.level = kLevels[pick(0, static_cast<int>(std::size(kLevels)) - 1)]; break;
        case 3: row.s += pick(0, 1) ? 1 : -1; break;
        case 4: {
            // rewrite the diff by a class it is only defined modulo
            m.no_op = true;
            if (!row.diff || row.level == kPermanentLevel) break;
            bool hit = row.level < 5000;
            int r = hit ? row.level : kLevelTop - row.level;
            BiDegree other = hit ? BiDegree{row.stem + 1, row.s - r} : BiDegree{row.stem - 1, row.s + r};
            for (const auto& o : rows) {
                if (BiDegree{o.stem, o.s} != other) continue;
                bool in_kernel = hit ? (o.level < 5000 || o.level == kPermanentLevel || kLevelTop - o.level > r)
                                     : (o.level < 5000 && o.level <= r - 1);
                if (in_kernel && pick(0, 1)) row.diff = xor_sets(*row.diff, o.base);
            }
            break;
        }
        default: m.no_op = true; break;
    }
    return m;
}

Outcome coset_fuzz() {
    auto rows = load_ss(kFixtures / "ss" / "S0_stem123_ss.csv");
    auto dims = dims_from_rows(rows);
    auto empty = SsState::adams("S0", dims);
    if (!build(empty, rows, BuildOptions{false, true}).report.ok() || !staircase_oracle(rows, dims).empty())
        return {false, "fixture state is not consistent"};
    std::mt19937_64 rng(1541);
    int broken = 0, caught = 0, no_ops = 0, quiet_no_ops = 0, disagree = 0;
    for (int i = 0; i < kMutations; ++i) {
        Mutation m = mutate(rows, dims, rng);
        auto engine = build(empty, m.rows, BuildOptions{false, true}).report.violations.size();
        auto oracle = staircase_oracle(m.rows, dims).size();
        if (oracle > 0) {
            ++broken;
            if (engine > 0) ++caught;
        }
        if (m.no_op) {
            ++no_ops;
            if (engine == 0 && oracle == 0) ++quiet_no_ops;
        }
        if ((engine > 0) != (oracle > 0)) ++disagree;
    }
    bool pass = caught == broken && quiet_no_ops == no_ops && disagree == 0 && no_ops >= kMinNoOpMutations;
    return {pass, fmt::format("{} mutations: {}/{} invariant-breaking flagged, {}/{} no-ops silent, {} verdicts differ "
                              "from the oracle",
                              kMutations, caught, broken, quiet_no_ops, no_ops, disagree)};
}

Outcome leibniz_equivalence() {
    auto toy = make_leibniz_toy(kLeibnizTop + 1);
    long pairs = 0, bad = 0;
    for (size_t i = 0; i < toy.monomials.size(); ++i) {
        for (size_t j = i; j < toy.monomials.size(); ++j) {
            const auto& x = toy.monomials[i];
            const auto& y = toy.monomials[j];
            Exps xy{x[0] + y[0], x[1] + y[1], x[2] + y[2]};
            if (toy.vec(x).deg.t() + toy.vec(y).deg.t() > kLeibnizTop) continue;
            ++pairs;
            auto got = leibniz_product(toy.vec(x), toy.derivation(x), toy.vec(y), toy.derivation(y), 2, *toy.ring);
            if (got.xy != toy.vec(xy) || got.dxy != toy.derivation(xy)) ++bad;
        }
    }
    return {pairs > 0 && bad == 0, fmt::format("{} basis pairs with t <= {}, {} disagreements", pairs, kLeibnizTop, bad)};
}

Outcome deduction_toys() {
    auto t0 = Clock::now();
    std::set<std::string> seen;
    int unique = 0, ambiguous = 0, wrong = 0, malformed = 0, guessed = 0;
    for (uint64_t seed = 1; seed <= kToySeedLimit; ++seed) {
        if (unique >= kMinUniqueToys + 4 && ambiguous >= kMinAmbiguousToys) break;
        auto toy = make_toy(seed);
        if (!seen.insert(toy.key()).second) continue;
        auto truth = brute_force(toy);
        auto res = deduce(toy.world, "M", toy.source, {0}, 2);
        if (truth.size() == 1) {
            ++unique;
            if (!res.deduced() || res.value != toy.plant) {
                ++wrong;
                continue;
            }
            try {
                for (const auto& tree : build_forest(res.trace))
                    if (verify_node(tree, toy.world).failures() > 0) ++malformed;
            } catch (const Error&) {
                ++malformed;
            }
        } else {
            ++ambiguous;
            if (res.deduced()) ++guessed;
        }
    }
    double secs = seconds_since(t0);
    bool pass = unique >= kMinUniqueToys && ambiguous >= kMinAmbiguousToys && wrong == 0 && malformed == 0 &&
                guessed == 0 && secs < kDeductionSeconds;
    return {pass, fmt::format("{} planted-unique instances ({} missed, {} bad traces); {} ambiguous ({} guessed); "
                              "{:.3f}s",
                              unique, wrong, malformed, ambiguous, guessed, secs)};
}

World csigma_world() {
    Dataset data(kFixtures / "csigma");
    World w;
    for (std::string n : {"S0", "Csigma"}) {
        auto sp = data.spectrum(n);
        w.spectra[n] = sp;
        w.states.emplace(n, build(SsState::adams(*sp), load_ss(*data.ss_path(n))).state);
    }
    return w;
}

Outcome proof_replay() {
    auto rows = load_proofs(std::vector<fs::path>{kFixtures / "tables" / "proofs.csv"});
    auto forest = build_forest(rows);
    auto root_of = [&](long long id) -> const ProofNode* {
        for (const auto& t : forest)
            if (t.row.id == id) return &t;
        return nullptr;
    };
    const ProofNode* flat = root_of(325480);
    const ProofNode* nested = root_of(2463215);
    bool shapes = flat && nested && shape(*flat) == "(0,D)[(1,T),(1,T),(1,T)]" &&
                  shape(*nested) == "(0,D)[(1,T)[(2,T),(2,T),(2,T),(2,T)],(1,T),(1,T)]";

    auto blocks = replay(std::vector<fs::path>{kFixtures / "tables" / "proofs_two_blocks.csv"}, World{});

    World w = csigma_world();
    auto res = propagate(w, Hypothesis{"Csigma", Loc{0, {116, 10}}, {1}, 3, {1, 2}});
    std::string recorded;
    for (const auto& r : rows)
        if (r.id == 325477) recorded = r.info.value_or("");
    bool contradiction = res.status == PropagateResult::Status::Contradiction &&
                         res.explanation.find("is not in B_2") != std::string::npos &&
                         squash(res.explanation) == squash(recorded);
    bool pass = shapes && blocks.blocks == 2 && blocks.failed == 0 && contradiction;
    return {pass, fmt::format("shapes {}; {} blocks replayed, {} failed; recorded contradiction {}",
                              shapes ? "match" : "differ", blocks.blocks, blocks.failed,
                              contradiction ? "reproduced" : "NOT reproduced")};
}

Outcome chart_reproduction() {
    Dataset data(kFixtures / "chart");
    int tables = 0, mismatched = 0, unstable = 0;
    long lines = 0;
    auto p = kFixtures / "chart" / "charts.csv";
    for (const auto& rec : read_csv(read_file(p), p.string())) {
        if (rec.fields[0].text == "spectrum") continue;
        const std::string& name = rec.fields[0].text;
        auto sp = data.spectrum(name);
        auto built = build(SsState::adams(*sp), load_ss(*data.ss_path(name)), BuildOptions{false, true});
        int stem = parse_int(rec.fields[1].text);
        ChartSpec spec{name, stem, stem, parse_int(rec.fields[2].text), parse_int(rec.fields[3].text)};
        std::string got = render_chart(built.state, sp.get(), spec);
        std::string again = render_chart(built.state, sp.get(), spec);
        std::string want = read_file(kFixtures / "chart" / rec.fields[4].text);
        ++tables;
        lines += std::count(want.begin(), want.end(), '\n');
        if (got != want) ++mismatched;
        if (got != again) ++unstable;
    }
    return {tables == kChartTables && mismatched == 0 && unstable == 0,
            fmt::format("{} tables, {} lines, {} mismatched, {} unstable", tables, lines, mismatched, unstable)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"format round-trip", format_round_trip},
        {"expression grammar", expression_grammar},
        {"naming coverage", naming_coverage},
        {"staircase subspace chain", staircase_chain},
        {"level encoding", level_encoding},
        {"coset mutation fuzz", coset_fuzz},
        {"Leibniz oracle", leibniz_equivalence},
        {"toy deduction", deduction_toys},
        {"proof replay", proof_replay},
        {"chart reproduction", chart_reproduction},
    };
    int failed = 0;
    int n = 0;
    for (const auto& [name, run] : criteria) {
        ++n;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        if (!o.pass) ++failed;
        fmt::print("{} {:>2} {}: {}\n", o.pass ? "PASS" : "FAIL", n, name, o.detail);
    }
    return failed == 0 ? 0 : 1;
}
