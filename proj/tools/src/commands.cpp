#include "commands.hpp"

#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "args.hpp"
#include "sseq/chart.hpp"
#include "sseq/deduce.hpp"
#include "sseq/naming.hpp"
#include "sseq/proofs.hpp"
#include "world.hpp"

namespace fs = std::filesystem;

namespace sseq::cli {

namespace {

std::vector<std::pair<std::string, std::string>> seed_pairs(const Common& c) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& s : c.seeds) out.push_back(parse_seed(s));
    return out;
}

void add_error(std::vector<Finding>& to, const Error& e, const fs::path& file) {
    SourceLoc loc = e.loc();
    if (loc.file.empty()) loc = {file.string(), 0, 0};
    to.push_back({loc, fmt::format("{}: {}", errc_name(e.code()), e.detail())});
}

std::string describe_level(int level) {
    auto info = decode_level(level);
    switch (info.kind) {
        case LevelInfo::Kind::Permanent: return "permanent";
        case LevelInfo::Kind::Hit: return fmt::format("hit by d_{}", info.r);
        case LevelInfo::Kind::Supports:
            return info.r == 0 ? std::string("extension d_0") : fmt::format("supports d_{}", info.r);
    }
    return {};
}

IndexSet require_vec(std::string_view text) {
    auto v = parse_index_vec(text);
    if (!v) fail(Errc::Malformed, "an element cannot be [NULL]", {"<command line>", 1, 1});
    return *v;
}

}  // namespace

int cmd_validate(const Common& c, std::ostream& out, std::ostream& err) {
    if (!fs::is_directory(c.data_dir))
        fail(Errc::MissingFile, "not a directory", {c.data_dir.string(), 0, 0});
    Dataset data(c.data_dir);
    auto names = data.spectrum_names();
    auto maps = data.map_files();
    auto cofseqs = data.cofseq_names();
    auto proofs = data.proof_files();
    if (names.empty() && maps.empty() && cofseqs.empty() && proofs.empty()) {
        fmt::print(err, "warning: nothing found in {}\n", c.data_dir.string());
        return 0;
    }

    std::vector<Finding> findings;
    for (const auto& n : names) {
        try {
            (void)parse_spectrum_name(n);
        } catch (const Error& e) {
            add_error(findings, e, spectrum_files(c.data_dir, n).generators);
        }
    }

    auto loaded = load_spectra(c.data_dir, names);
    findings.insert(findings.end(), loaded.errors.begin(), loaded.errors.end());
    for (const auto& [name, sp] : loaded.spectra) {
        auto path = data.ss_path(name);
        if (!path) continue;
        try {
            auto st = load_staircase(*sp, *path);
            findings.insert(findings.end(), st.findings.begin(), st.findings.end());
        } catch (const Error& e) {
            add_error(findings, e, *path);
        }
    }

    for (const auto& file : maps) {
        auto ends = map_endpoints(file);
        if (!ends) {
            findings.push_back({{file.string(), 0, 0}, "Malformed: map file name is not map_X_to_Y.csv"});
            continue;
        }
        auto src = loaded.spectra.find(ends->first);
        auto dst = loaded.spectra.find(ends->second);
        if (src == loaded.spectra.end() || dst == loaded.spectra.end()) {
            findings.push_back({{file.string(), 0, 0}, fmt::format("MissingFile: {} or {} is not loaded",
                                                                   ends->first, ends->second)});
            continue;
        }
        try {
            auto map = load_map(file, ends->first, ends->second, dst->second->arity());
            (void)infer_shift(map, *src->second, *dst->second);
        } catch (const Error& e) {
            add_error(findings, e, file);
        }
    }

    for (const auto& name : cofseqs) {
        auto path = *data.cofseq_path(name);
        try {
            auto seq = parse_cofseq_name(name);
            bool finite = std::all_of(seq.terms.begin(), seq.terms.end(),
                                      [](const SpectrumAst& t) { return has_finite_cells(t) && !is_unbounded(t); });
            if (finite && !cells_consistent(seq))
                findings.push_back({{path.string(), 0, 0}, "InconsistentCells: cells do not form a cofiber sequence"});
            auto rows = load_cofseq(path);
            SsState empty(name, SsState::Geometry{3, 0, seq.drops}, dims_from_cofseq_rows(rows, seq.drops));
            auto built = build_cofseq(std::move(empty), rows);
            for (const auto& v : built.report.violations) findings.push_back({{path.string(), 0, 0}, v.message});
        } catch (const Error& e) {
            add_error(findings, e, path);
        }
    }

    long long proof_rows = 0;
    if (!proofs.empty()) {
        try {
            auto rows = load_proofs(proofs);
            proof_rows = static_cast<long long>(rows.size());
            (void)build_forest(rows);
        } catch (const Error& e) {
            add_error(findings, e, proofs.front());
        }
    }

    for (const auto& f : findings) fmt::print(out, "{}\n", format_finding(f));
    fmt::print(out, "{} spectra, {} maps, {} cofiber sequences, {} proof rows: {} finding{}\n", names.size(),
               maps.size(), cofseqs.size(), proof_rows, findings.size(), findings.size() == 1 ? "" : "s");
    return findings.empty() ? 0 : 1;
}

int cmd_query(const Common& c, const QueryArgs& a, std::ostream& out) {
    Dataset data(c.data_dir);
    auto sp = data.spectrum(a.name);
    BiDegree deg{a.stem, a.s};
    Loc loc{0, deg};
    SsState state = SsState::adams(*sp);
    if (auto path = data.ss_path(a.name)) state = load_staircase(*sp, *path, {}, false).state;

    int dim = sp->dim(deg);
    fmt::print(out, "{} {} t={}: {} basis element{}\n", a.name, to_string(deg), deg.t(), dim, dim == 1 ? "" : "s");
    for (int i = 0; i < dim; ++i) {
        const auto& row = sp->basis_row(deg, i);
        fmt::print(out, "  [{}] {} mon={} d2={}\n", i, element_label(state, sp.get(), loc, {i}),
                   serialize_monomial(row.mon),
                   row.d2 ? fmt::format("[{}]", fmt::join(*row.d2, ",")) : std::string(kNullText));
    }

    if (a.vec) {
        IndexSet v = require_vec(*a.vec);
        for (int i : v)
            if (i < 0 || i >= dim)
                fail(Errc::OutOfRange, fmt::format("index {} outside {} of dimension {}", i, to_string(deg), dim),
                     {"<command line>", 1, 1});
        fmt::print(out, "element [{}] = {}\n", fmt::join(v, ","), element_label(state, sp.get(), loc, v));
        fmt::print(out, "  expression: {}\n", serialize_expr(sp->element_of(BasisVec{deg, v})));
        int top = state.top_level(loc, v);
        if (top < 0)
            fmt::print(out, "  status: zero\n");
        else if (top >= kLevelTop - 1)
            fmt::print(out, "  status: undetermined\n");
        else
            fmt::print(out, "  status: {} (level {})\n", describe_level(top), top);
    }

    const auto& entries = state.entries(loc);
    if (!entries.empty()) fmt::print(out, "staircase\n");
    for (const auto& e : entries)
        fmt::print(out, "  level {} {}: base [{}] diff {}\n", e.level, describe_level(e.level), fmt::join(e.base, ","),
                   e.diff ? fmt::format("[{}]", fmt::join(*e.diff, ",")) : std::string(kNullText));

    bool header = false;
    for (const auto& cs : data.cofseq_names()) {
        CofseqAst seq;
        try {
            seq = parse_cofseq_name(cs);
        } catch (const Error&) {
            continue;
        }
        std::vector<CofseqRow> rows;
        for (int leg = 0; leg < 3; ++leg) {
            if (print(seq.terms[static_cast<size_t>(leg)]) != a.name) continue;
            if (rows.empty()) rows = load_cofseq(*data.cofseq_path(cs));
            for (const auto& r : rows) {
                if (r.iC != leg || r.stem != a.stem || r.s != a.s) continue;
                if (!header) fmt::print(out, "extensions\n");
                header = true;
                fmt::print(out, "  {}:{} level {} {}: base [{}] diff {}\n", cs, leg, r.level, describe_level(r.level),
                           fmt::join(r.base, ","), serialize_index_vec(r.diff));
            }
        }
    }
    return 0;
}

int cmd_chart(const Common& c, const ChartArgs& a, std::ostream& out, std::ostream& err) {
    Dataset data(c.data_dir);
    auto sp = data.spectrum(a.name);
    auto path = data.ss_path(a.name);
    if (!path) fail(Errc::NotFound, fmt::format("no staircase file for {}", a.name), {c.data_dir.string(), 0, 0});
    auto st = load_staircase(*sp, *path, {}, false);
    if (!st.findings.empty())
        fmt::print(err, "warning: {}: {} consistency findings; run validate for details\n", path->string(),
                   st.findings.size());

    auto stems = parse_range(a.stems);
    IntRange s{0, std::max(0, st.state.max_s(0))};
    if (a.s_range) s = parse_range(*a.s_range);
    ChartSpec spec{a.name, stems.lo, stems.hi, s.lo, s.hi, parse_chart_format(a.format),
                   a.indices ? ChartSpec::Naming::Indices : ChartSpec::Naming::Names};
    out << render_chart(st.state, sp.get(), spec);
    return 0;
}

int cmd_deduce(const Common& c, const DeduceArgs& a, std::ostream& out, std::ostream& err) {
    World world = load_world(c.data_dir, {seed_pairs(c), true});
    std::string subject = a.name;
    int comp = 0;
    if (auto colon = a.name.rfind(':'); colon != std::string::npos) {
        subject = a.name.substr(0, colon);
        comp = parse_int(a.name.substr(colon + 1));
    }
    if (!world.states.count(subject))
        fail(Errc::NotFound, fmt::format("no staircase named {}", subject), {c.data_dir.string(), 0, 0});
    Loc loc{comp, {a.stem, a.s}};
    IndexSet x = require_vec(a.x);

    DeduceOptions opts;
    opts.max_depth = a.max_depth;
    opts.propagate.budget = a.budget;
    auto res = a.inverse ? deduce_source(world, subject, loc, x, a.r, opts) : deduce(world, subject, loc, x, a.r, opts);
    out << serialize_proofs(res.trace);
    std::string what = fmt::format("{} {} [{}]", a.inverse ? "source of d_" + std::to_string(a.r) :
                                                             "d_" + std::to_string(a.r),
                                   subject_label(world, subject, loc), fmt::join(x, ","));
    if (res.deduced()) {
        fmt::print(err, "{} = [{}]\n", what, fmt::join(res.value, ","));
        return 0;
    }
    fmt::print(err, "{}: inconclusive, {} candidate{} left\n", what, res.survivors, res.survivors == 1 ? "" : "s");
    return kExitInconclusive;
}

int cmd_check_proofs(const Common& c, const CheckArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<fs::path> parts(a.paths.begin(), a.paths.end());
    bool have_dir = fs::is_directory(c.data_dir);
    if (parts.empty() && have_dir) parts = Dataset(c.data_dir).proof_files();
    if (parts.empty()) {
        fmt::print(err, "warning: no proof files found\n");
        return 0;
    }
    World world;
    if (have_dir && !Dataset(c.data_dir).spectrum_names().empty()) world = load_world(c.data_dir, {seed_pairs(c), false});
    VerifyOptions opts;
    opts.replay_contradictions = a.replay;
    opts.propagate.budget = a.budget;
    auto sum = replay(parts, world, opts);
    if (a.format == "csv")
        out << sum.csv();
    else if (a.format == "text")
        out << sum.text();
    else
        fail(Errc::Malformed, fmt::format("unknown format '{}'", a.format), {"<command line>", 1, 1});
    return sum.failed == 0 ? 0 : 1;
}

}  // namespace sseq::cli
