#include "sseq/formats.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace sseq {

namespace fs = std::filesystem;

namespace {

long long parse_ll(std::string_view text) {
    std::string_view digits = text;
    bool neg = !digits.empty() && digits.front() == '-';
    if (neg) digits.remove_prefix(1);
    bool ok = !digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; });
    ok = ok && !(digits.size() > 1 && digits.front() == '0') && !(neg && digits == "0");
    long long v = 0;
    if (ok) {
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        ok = ec == std::errc{} && p == text.data() + text.size();
    }
    if (!ok) fail(Errc::MalformedInteger, fmt::format("'{}' is not an integer", text));
    return v;
}

int parse_nonneg(std::string_view text) {
    int v = parse_int(text);
    if (v < 0) fail(Errc::MalformedInteger, fmt::format("'{}' must be non-negative", text));
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    size_t start = 0;
    for (;;) {
        size_t pos = text.find(sep, start);
        out.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

template <class F>
auto at_field(const CsvField& f, const std::string& file, F&& fn) -> decltype(fn(f.text)) {
    try {
        return fn(f.text);
    } catch (const Error& e) {
        throw e.located({file, f.line, f.col});
    }
}

void expect_fields(const CsvRecord& rec, size_t n, const std::string& file) {
    if (rec.fields.size() != n)
        fail(Errc::SchemaError, fmt::format("expected {} fields, found {}", n, rec.fields.size()),
             {file, rec.line, 1});
}

template <class Row, class F>
std::vector<Row> parse_table(std::string_view text, std::string_view header, const std::string& file, F&& row_fn) {
    auto records = read_csv(text, file);
    if (records.empty()) fail(Errc::SchemaError, fmt::format("missing header '{}'", header), {file, 1, 1});
    std::string got;
    for (size_t i = 0; i < records[0].fields.size(); ++i) {
        if (i) got += ',';
        got += records[0].fields[i].text;
    }
    if (got != header) fail(Errc::SchemaError, fmt::format("header '{}' should be '{}'", got, header), {file, 1, 1});
    std::vector<Row> rows;
    rows.reserve(records.size() - 1);
    for (size_t i = 1; i < records.size(); ++i) rows.push_back(row_fn(records[i]));
    return rows;
}

std::string join_table(std::string_view header, const std::vector<std::vector<std::string>>& rows) {
    std::string out(header);
    out += '\n';
    for (const auto& r : rows) out += csv_line(r);
    return out;
}

std::string opt_text(const std::optional<std::string>& s) { return s ? *s : std::string(kNullText); }
std::optional<std::string> text_opt(std::string_view s) {
    if (s == kNullText) return std::nullopt;
    return std::string(s);
}

}  // namespace

int parse_int(std::string_view text) {
    long long v = parse_ll(text);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        fail(Errc::MalformedInteger, fmt::format("'{}' overflows", text));
    return static_cast<int>(v);
}

Monomial parse_monomial(std::string_view text, Arity arity) {
    Monomial m;
    std::vector<int> tok;
    if (!text.empty())
        for (auto piece : split(text, ',')) tok.push_back(parse_nonneg(piece));
    bool even = tok.size() % 2 == 0;
    if (even != (arity == Arity::Ring))
        fail(Errc::ArityMismatch,
             fmt::format("'{}' has {} tokens but a {} monomial needs an {} count", text, tok.size(),
                         arity == Arity::Ring ? "ring" : "module", arity == Arity::Ring ? "even" : "odd"));
    size_t pairs = tok.size() / 2;
    for (size_t i = 0; i < pairs; ++i) {
        int g = tok[2 * i];
        int e = tok[2 * i + 1];
        if (e < 1) fail(Errc::Malformed, fmt::format("'{}' has a zero exponent", text));
        if (i > 0 && g <= tok[2 * i - 2]) fail(Errc::Malformed, fmt::format("'{}' has unsorted generator ids", text));
        m.ring.emplace_back(g, e);
    }
    if (!even) m.module_gen = tok.back();
    return m;
}

std::string serialize_monomial(const Monomial& m) { return fmt::format("{}", fmt::join(m.tokens(), ",")); }

Element parse_expr(std::string_view text, Arity arity) {
    Element e;
    if (text.empty()) return e;
    std::set<Monomial> seen;
    for (auto seg : split(text, ';')) {
        if (seg.empty()) fail(Errc::Malformed, fmt::format("empty term in '{}'", text));
        Monomial m = parse_monomial(seg, arity);
        if (!seen.insert(m).second) fail(Errc::Malformed, fmt::format("repeated term '{}' in '{}'", seg, text));
        e.terms.push_back(std::move(m));
    }
    return e;
}

std::string serialize_expr(const Element& e) {
    std::string out;
    for (size_t i = 0; i < e.terms.size(); ++i) {
        if (i) out += ';';
        out += serialize_monomial(e.terms[i]);
    }
    return out;
}

std::optional<IndexSet> parse_index_vec(std::string_view text) {
    if (text == kNullText) return std::nullopt;
    IndexSet v;
    if (text.empty()) return v;
    for (auto piece : split(text, ',')) v.push_back(parse_nonneg(piece));
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end())
        fail(Errc::DuplicateIndex, fmt::format("'{}' repeats an index", text));
    return v;
}

std::string serialize_index_vec(const std::optional<IndexSet>& v) {
    return v ? format_indices(*v) : std::string(kNullText);
}

std::string_view reason_name(Reason r) {
    static constexpr std::string_view names[] = {"d2",  "N",  "G",    "XX",    "XY",    "ToCs", "OutCsI", "CsCm",
                                                 "Syn", "SynCs", "SynIn", "T", "D", "TI", "DI", "GI"};
    return names[static_cast<int>(r)];
}

std::optional<Reason> parse_reason(std::string_view text) {
    for (int i = 0; i < kReasonCount; ++i)
        if (reason_name(static_cast<Reason>(i)) == text) return static_cast<Reason>(i);
    return std::nullopt;
}

bool is_dx_keyed(Reason r) { return r == Reason::OutCsI || r == Reason::TI || r == Reason::DI || r == Reason::GI; }

Generator generator_from(const CsvRecord& rec, const std::string& file) {
    expect_fields(rec, 4, file);
    const auto& f = rec.fields;
    Generator g;
    g.id = at_field(f[0], file, parse_nonneg);
    g.name = text_opt(f[1].text);
    g.deg.stem = at_field(f[2], file, parse_int);
    g.deg.s = at_field(f[3], file, parse_nonneg);
    return g;
}

RelationRow relation_from(const CsvRecord& rec, Arity arity, const std::string& file) {
    expect_fields(rec, 3, file);
    const auto& f = rec.fields;
    RelationRow r;
    r.rel = at_field(f[0], file, [&](std::string_view t) { return parse_expr(t, arity); });
    r.deg.stem = at_field(f[1], file, parse_int);
    r.deg.s = at_field(f[2], file, parse_nonneg);
    return r;
}

BasisRow basis_from(const CsvRecord& rec, Arity arity, const std::string& file) {
    expect_fields(rec, 5, file);
    const auto& f = rec.fields;
    BasisRow b;
    b.index_col = at_field(f[0], file, parse_int);
    b.mon = at_field(f[1], file, [&](std::string_view t) { return parse_monomial(t, arity); });
    b.deg.stem = at_field(f[2], file, parse_int);
    b.deg.s = at_field(f[3], file, parse_nonneg);
    b.d2 = at_field(f[4], file, parse_index_vec);
    return b;
}

MapRow map_row_from(const CsvRecord& rec, Arity target, const std::string& file) {
    expect_fields(rec, 2, file);
    const auto& f = rec.fields;
    MapRow m;
    m.id = at_field(f[0], file, parse_nonneg);
    m.image = at_field(f[1], file, [&](std::string_view t) { return parse_expr(t, target); });
    return m;
}

static IndexSet known_vec(std::string_view t) {
    auto v = parse_index_vec(t);
    if (!v) fail(Errc::SchemaError, "base may not be [NULL]");
    return *v;
}

static int parse_level(std::string_view t) {
    int v = parse_int(t);
    if (v < 1 || v > 10000) fail(Errc::SchemaError, fmt::format("level {} outside [1, 10000]", v));
    return v;
}

SsRow ss_from(const CsvRecord& rec, const std::string& file) {
    expect_fields(rec, 5, file);
    const auto& f = rec.fields;
    SsRow r;
    r.stem = at_field(f[0], file, parse_int);
    r.s = at_field(f[1], file, parse_nonneg);
    r.base = at_field(f[2], file, known_vec);
    r.diff = at_field(f[3], file, parse_index_vec);
    r.level = at_field(f[4], file, parse_level);
    return r;
}

CofseqRow cofseq_from(const CsvRecord& rec, const std::string& file) {
    expect_fields(rec, 6, file);
    const auto& f = rec.fields;
    CofseqRow r;
    r.iC = at_field(f[0], file, [](std::string_view t) {
        int v = parse_int(t);
        if (v < 0 || v > 2) fail(Errc::SchemaError, fmt::format("iC {} is not 0, 1 or 2", v));
        return v;
    });
    r.stem = at_field(f[1], file, parse_int);
    r.s = at_field(f[2], file, parse_nonneg);
    r.base = at_field(f[3], file, known_vec);
    r.diff = at_field(f[4], file, parse_index_vec);
    r.level = at_field(f[5], file, parse_level);
    return r;
}

ProofRow proof_from(const CsvRecord& rec, const std::string& file) {
    expect_fields(rec, 11, file);
    const auto& f = rec.fields;
    ProofRow p;
    p.id = at_field(f[0], file, parse_ll);
    p.depth = at_field(f[1], file, parse_nonneg);
    p.reason = at_field(f[2], file, [](std::string_view t) {
        auto r = parse_reason(t);
        if (!r) fail(Errc::UnknownReason, fmt::format("unknown reason code '{}'", t));
        return *r;
    });
    if (f[3].text.empty()) fail(Errc::SchemaError, "empty name", {file, f[3].line, f[3].col});
    p.name = f[3].text;
    p.stem = at_field(f[4], file, parse_int);
    p.s = at_field(f[5], file, parse_nonneg);
    p.t = at_field(f[6], file, parse_int);
    p.r = at_field(f[7], file, parse_nonneg);
    p.x = at_field(f[8], file, parse_index_vec);
    p.dx = at_field(f[9], file, parse_index_vec);
    p.info = text_opt(f[10].text);
    return p;
}

std::vector<Generator> parse_generators(std::string_view text, const std::string& file) {
    return parse_table<Generator>(text, headers::generators, file,
                                  [&](const CsvRecord& r) { return generator_from(r, file); });
}
std::vector<RelationRow> parse_relations(std::string_view text, Arity arity, const std::string& file) {
    return parse_table<RelationRow>(text, headers::relations, file,
                                    [&](const CsvRecord& r) { return relation_from(r, arity, file); });
}
std::vector<BasisRow> parse_basis(std::string_view text, Arity arity, const std::string& file) {
    return parse_table<BasisRow>(text, headers::basis, file,
                                 [&](const CsvRecord& r) { return basis_from(r, arity, file); });
}
std::vector<MapRow> parse_map(std::string_view text, Arity target, const std::string& file) {
    return parse_table<MapRow>(text, headers::map, file,
                               [&](const CsvRecord& r) { return map_row_from(r, target, file); });
}
std::vector<SsRow> parse_ss(std::string_view text, const std::string& file) {
    return parse_table<SsRow>(text, headers::ss, file, [&](const CsvRecord& r) { return ss_from(r, file); });
}
std::vector<CofseqRow> parse_cofseq(std::string_view text, const std::string& file) {
    return parse_table<CofseqRow>(text, headers::cofseq, file,
                                  [&](const CsvRecord& r) { return cofseq_from(r, file); });
}
std::vector<ProofRow> parse_proofs(std::string_view text, const std::string& file) {
    return parse_table<ProofRow>(text, headers::proofs, file, [&](const CsvRecord& r) { return proof_from(r, file); });
}

std::string serialize_generators(std::span<const Generator> rows) {
    std::vector<std::vector<std::string>> out;
    for (const auto& g : rows)
        out.push_back({std::to_string(g.id), opt_text(g.name), std::to_string(g.deg.stem), std::to_string(g.deg.s)});
    return join_table(headers::generators, out);
}

std::string serialize_relations(std::span<const RelationRow> rows) {
    std::vector<std::vector<std::string>> out;
    for (const auto& r : rows)
        out.push_back({serialize_expr(r.rel), std::to_string(r.deg.stem), std::to_string(r.deg.s)});
    return join_table(headers::relations, out);
}

std::string serialize_basis(std::span<const BasisRow> rows) {
    std::vector<std::vector<std::string>> out;
    for (const auto& b : rows)
        out.push_back({std::to_string(b.index_col), serialize_monomial(b.mon), std::to_string(b.deg.stem),
                       std::to_string(b.deg.s), serialize_index_vec(b.d2)});
    return join_table(headers::basis, out);
}

std::string serialize_map(std::span<const MapRow> rows) {
    std::vector<std::vector<std::string>> out;
    for (const auto& m : rows) out.push_back({std::to_string(m.id), serialize_expr(m.image)});
    return join_table(headers::map, out);
}

std::string serialize_ss(std::span<const SsRow> rows) {
    std::vector<std::vector<std::string>> out;
    for (const auto& r : rows)
        out.push_back({std::to_string(r.stem), std::to_string(r.s), format_indices(r.base), serialize_index_vec(r.diff),
                       std::to_string(r.level)});
    return join_table(headers::ss, out);
}

std::string serialize_cofseq(std::span<const CofseqRow> rows) {
    std::vector<std::vector<std::string>> out;
    for (const auto& r : rows)
        out.push_back({std::to_string(r.iC), std::to_string(r.stem), std::to_string(r.s), format_indices(r.base),
                       serialize_index_vec(r.diff), std::to_string(r.level)});
    return join_table(headers::cofseq, out);
}

std::vector<std::string> proof_fields(const ProofRow& p) {
    return {std::to_string(p.id), std::to_string(p.depth), std::string(reason_name(p.reason)), p.name,
            std::to_string(p.stem), std::to_string(p.s), std::to_string(p.t), std::to_string(p.r),
            serialize_index_vec(p.x), serialize_index_vec(p.dx), opt_text(p.info)};
}

std::string serialize_proofs(std::span<const ProofRow> rows) {
    std::vector<std::vector<std::string>> out;
    for (const auto& p : rows) out.push_back(proof_fields(p));
    return join_table(headers::proofs, out);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::MissingFile, fmt::format("cannot open {}", path.string()), {path.string(), 0, 0});
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SpectrumFiles spectrum_files(const fs::path& dir, std::string_view name) {
    std::string n(name);
    return {dir / (n + "_AdamsE2_generators.csv"), dir / (n + "_AdamsE2_relations.csv"),
            dir / (n + "_AdamsE2_basis.csv")};
}

bool is_ring_name(std::string_view name) { return name == "S0" || name == "tmf"; }

std::string ring_of(std::string_view name) { return name.starts_with("tmf_") ? "tmf" : "S0"; }

namespace {

// Ring bases start with the unit, whose monomial text is empty.
Arity sniff_arity(std::string_view basis_text, std::string_view name, const std::string& file) {
    if (is_ring_name(name)) return Arity::Ring;
    auto records = read_csv(basis_text, file);
    if (records.size() < 2 || records[1].fields.size() < 2) return Arity::Module;
    const auto& mon = records[1].fields[1].text;
    size_t tokens = mon.empty() ? 0 : static_cast<size_t>(std::count(mon.begin(), mon.end(), ',')) + 1;
    return tokens % 2 == 0 ? Arity::Ring : Arity::Module;
}

}  // namespace

SpectrumData load_spectrum(const fs::path& dir, std::string_view name, std::shared_ptr<const SpectrumData> ring,
                           int max_t) {
    auto files = spectrum_files(dir, name);
    for (const auto& p : {files.generators, files.relations, files.basis})
        if (!fs::exists(p)) fail(Errc::MissingFile, fmt::format("{} not found", p.string()), {p.string(), 0, 0});
    std::string basis_text = read_file(files.basis);
    Arity arity = sniff_arity(basis_text, name, files.basis.string());
    SpectrumData sd;
    sd.name = std::string(name);
    sd.is_ring = arity == Arity::Ring;
    if (!sd.is_ring) {
        if (!ring) fail(Errc::UnknownGenerator, fmt::format("{} is a module but its ring was not supplied", name));
        sd.ring = std::move(ring);
    }
    sd.generators = parse_generators(read_file(files.generators), files.generators.string());
    sd.relations = parse_relations(read_file(files.relations), arity, files.relations.string());
    sd.basis_rows = parse_basis(basis_text, arity, files.basis.string());
    sd.max_t = max_t;
    try {
        sd.finalize();
    } catch (const Error& e) {
        throw e.located({files.basis.string(), 1, 1});
    }
    return sd;
}

MapData load_map(const fs::path& path, std::string source, std::string target, Arity target_arity) {
    MapData m{std::move(source), std::move(target), {}};
    for (auto& row : parse_map(read_file(path), target_arity, path.string())) {
        if (!m.images.emplace(row.id, std::move(row.image)).second)
            fail(Errc::SchemaError, fmt::format("generator {} listed twice", row.id), {path.string(), 0, 0});
    }
    return m;
}

std::vector<SsRow> load_ss(const fs::path& path) { return parse_ss(read_file(path), path.string()); }

std::vector<CofseqRow> load_cofseq(const fs::path& path) { return parse_cofseq(read_file(path), path.string()); }

void for_each_proof_row(std::span<const fs::path> parts,
                        const std::function<void(const ProofRow&, const SourceLoc&)>& fn) {
    std::optional<long long> last;
    for (const auto& path : parts) {
        std::ifstream in(path, std::ios::binary);
        if (!in) fail(Errc::MissingFile, fmt::format("cannot open {}", path.string()), {path.string(), 0, 0});
        CsvStream stream(in, path.string());
        CsvRecord rec;
        if (!stream.next(rec)) fail(Errc::SchemaError, "missing header", {path.string(), 1, 1});
        std::string got;
        for (size_t i = 0; i < rec.fields.size(); ++i) got += (i ? "," : "") + rec.fields[i].text;
        if (got != headers::proofs)
            fail(Errc::SchemaError, fmt::format("header '{}' should be '{}'", got, headers::proofs),
                 {path.string(), 1, 1});
        while (stream.next(rec)) {
            ProofRow row = proof_from(rec, path.string());
            SourceLoc loc{path.string(), rec.line, 1};
            if (last && row.id <= *last)
                fail(Errc::NonMonotoneIds, fmt::format("id {} follows {}", row.id, *last), loc);
            last = row.id;
            fn(row, loc);
        }
    }
}

std::vector<ProofRow> load_proofs(std::span<const fs::path> parts) {
    std::vector<ProofRow> rows;
    for_each_proof_row(parts, [&](const ProofRow& r, const SourceLoc&) { rows.push_back(r); });
    return rows;
}

Dataset::Dataset(fs::path dir) : dir_(std::move(dir)) {}

bool Dataset::has_spectrum(std::string_view name) const {
    return fs::exists(spectrum_files(dir_, name).generators);
}

std::shared_ptr<const SpectrumData> Dataset::spectrum(const std::string& name) {
    if (auto it = spectra_.find(name); it != spectra_.end()) return it->second;
    if (!has_spectrum(name))
        fail(Errc::NotFound, fmt::format("no spectrum {} under {}", name, dir_.string()), {dir_.string(), 0, 0});
    std::shared_ptr<const SpectrumData> ring;
    if (!is_ring_name(name)) {
        std::string rname = ring_of(name);
        if (has_spectrum(rname)) ring = spectrum(rname);
    }
    int max_t = -1;
    if (auto it = max_t_override_.find(name); it != max_t_override_.end()) max_t = it->second;
    auto sd = std::make_shared<const SpectrumData>(load_spectrum(dir_, name, ring, max_t));
    spectra_.emplace(name, sd);
    return sd;
}

std::optional<fs::path> Dataset::map_path(std::string_view source, std::string_view target) const {
    for (auto pattern : {"map_{}_to_{}.csv", "map_{}__{}.csv", "map_{}_{}.csv"}) {
        fs::path p = dir_ / fmt::format(fmt::runtime(pattern), source, target);
        if (fs::exists(p)) return p;
    }
    return std::nullopt;
}

std::shared_ptr<const MapData> Dataset::map(const std::string& source, const std::string& target) {
    std::string key = source + "__" + target;
    if (auto it = maps_.find(key); it != maps_.end()) return it->second;
    auto path = map_path(source, target);
    if (!path) fail(Errc::NotFound, fmt::format("no map file for {}", key), {dir_.string(), 0, 0});
    auto dst = spectrum(target);
    auto m = std::make_shared<const MapData>(load_map(*path, source, target, dst->arity()));
    maps_.emplace(key, m);
    return m;
}

std::optional<fs::path> Dataset::ss_path(std::string_view name) const {
    fs::path p = dir_ / (std::string(name) + "_AdamsE2_ss.csv");
    if (fs::exists(p)) return p;
    return std::nullopt;
}

std::optional<fs::path> Dataset::cofseq_path(std::string_view name) const {
    fs::path p = dir_ / ("cofseq_" + std::string(name) + ".csv");
    if (fs::exists(p)) return p;
    return std::nullopt;
}

namespace {

std::vector<std::string> sorted_filenames(const fs::path& dir) {
    std::vector<std::string> out;
    if (!fs::is_directory(dir)) return out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file()) out.push_back(e.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<std::string> Dataset::spectrum_names() const {
    constexpr std::string_view suffix = "_AdamsE2_generators.csv";
    std::vector<std::string> out;
    for (const auto& f : sorted_filenames(dir_))
        if (f.ends_with(suffix)) out.push_back(f.substr(0, f.size() - suffix.size()));
    return out;
}

std::vector<fs::path> Dataset::map_files() const {
    std::vector<fs::path> out;
    for (const auto& f : sorted_filenames(dir_))
        if (f.starts_with("map_") && f.ends_with(".csv")) out.push_back(dir_ / f);
    return out;
}

std::vector<std::string> Dataset::cofseq_names() const {
    std::vector<std::string> out;
    for (const auto& f : sorted_filenames(dir_))
        if (f.starts_with("cofseq_") && f.ends_with(".csv")) out.push_back(f.substr(7, f.size() - 11));
    return out;
}

std::vector<fs::path> Dataset::proof_files() const {
    std::vector<std::pair<int, fs::path>> parts;
    for (const auto& f : sorted_filenames(dir_)) {
        if (f == "proofs.csv") parts.emplace_back(0, dir_ / f);
        if (f.starts_with("proofs-part") && f.ends_with(".csv")) {
            auto num = f.substr(11, f.size() - 15);
            try {
                parts.emplace_back(parse_int(num), dir_ / f);
            } catch (const Error&) {
            }
        }
    }
    std::sort(parts.begin(), parts.end());
    std::vector<fs::path> out;
    for (auto& [n, p] : parts) out.push_back(std::move(p));
    return out;
}

}  // namespace sseq
