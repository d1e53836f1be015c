#include "sseq/sqlite_source.hpp"

#include <memory>

#include <fmt/format.h>
#include <sqlite3.h>

namespace sseq::sqlite {

namespace fs = std::filesystem;

namespace {

struct DbClose {
    void operator()(sqlite3* db) const { sqlite3_close(db); }
};
struct StmtFinalize {
    void operator()(sqlite3_stmt* st) const { sqlite3_finalize(st); }
};
using DbPtr = std::unique_ptr<sqlite3, DbClose>;
using StmtPtr = std::unique_ptr<sqlite3_stmt, StmtFinalize>;

DbPtr open(const fs::path& path) {
    if (!fs::exists(path)) fail(Errc::MissingFile, fmt::format("{} not found", path.string()), {path.string(), 0, 0});
    sqlite3* raw = nullptr;
    int rc = sqlite3_open_v2(path.string().c_str(), &raw, SQLITE_OPEN_READONLY, nullptr);
    DbPtr db(raw);
    if (rc != SQLITE_OK)
        fail(Errc::SchemaError, fmt::format("cannot open database: {}", sqlite3_errmsg(raw)), {path.string(), 0, 0});
    return db;
}

StmtPtr prepare(sqlite3* db, const std::string& sql, const fs::path& path) {
    sqlite3_stmt* raw = nullptr;
    if (sqlite3_prepare_v2(db, sql.c_str(), -1, &raw, nullptr) != SQLITE_OK)
        fail(Errc::SchemaError, fmt::format("{}: {}", sql, sqlite3_errmsg(db)), {path.string(), 0, 0});
    return StmtPtr(raw);
}

std::string quote_ident(std::string_view id) {
    std::string out = "\"";
    for (char c : id) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string column_list(std::string_view columns) {
    std::string out;
    size_t start = 0;
    while (start <= columns.size()) {
        size_t pos = columns.find(',', start);
        if (pos == std::string_view::npos) pos = columns.size();
        if (!out.empty()) out += ',';
        out += quote_ident(columns.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

}  // namespace

std::vector<std::string> tables(const fs::path& path) {
    auto db = open(path);
    auto st = prepare(db.get(), "SELECT name FROM sqlite_master WHERE type='table' ORDER BY name", path);
    std::vector<std::string> out;
    while (sqlite3_step(st.get()) == SQLITE_ROW)
        out.emplace_back(reinterpret_cast<const char*>(sqlite3_column_text(st.get(), 0)));
    return out;
}

std::vector<CsvRecord> records(const fs::path& path, std::string_view table, std::string_view columns) {
    auto db = open(path);
    std::string sql = fmt::format("SELECT {} FROM {} ORDER BY rowid", column_list(columns), quote_ident(table));
    auto st = prepare(db.get(), sql, path);
    int ncol = sqlite3_column_count(st.get());
    std::vector<CsvRecord> out;
    int rc;
    while ((rc = sqlite3_step(st.get())) == SQLITE_ROW) {
        CsvRecord rec;
        rec.line = static_cast<int>(out.size()) + 1;
        for (int c = 0; c < ncol; ++c) {
            CsvField f;
            f.line = rec.line;
            f.col = c + 1;
            if (sqlite3_column_type(st.get(), c) == SQLITE_NULL) {
                f.text = std::string(kNullText);
            } else {
                auto* txt = reinterpret_cast<const char*>(sqlite3_column_text(st.get(), c));
                f.text = txt ? txt : "";
            }
            rec.fields.push_back(std::move(f));
        }
        out.push_back(std::move(rec));
    }
    if (rc != SQLITE_DONE)
        fail(Errc::SchemaError, fmt::format("reading {}: {}", table, sqlite3_errmsg(db.get())), {path.string(), 0, 0});
    return out;
}

namespace {

template <class Row, class F>
std::vector<Row> typed(const fs::path& db, std::string_view table, std::string_view header, F&& fn) {
    std::string where = fmt::format("{}#{}", db.string(), table);
    std::vector<Row> out;
    for (const auto& rec : records(db, table, header)) out.push_back(fn(rec, where));
    return out;
}

}  // namespace

std::vector<Generator> generators(const fs::path& db, std::string_view table) {
    return typed<Generator>(db, table, headers::generators, generator_from);
}
std::vector<RelationRow> relations(const fs::path& db, std::string_view table, Arity arity) {
    return typed<RelationRow>(db, table, headers::relations,
                              [&](const CsvRecord& r, const std::string& w) { return relation_from(r, arity, w); });
}
std::vector<BasisRow> basis(const fs::path& db, std::string_view table, Arity arity) {
    return typed<BasisRow>(db, table, headers::basis,
                           [&](const CsvRecord& r, const std::string& w) { return basis_from(r, arity, w); });
}
std::vector<MapRow> map_rows(const fs::path& db, std::string_view table, Arity target) {
    return typed<MapRow>(db, table, headers::map,
                         [&](const CsvRecord& r, const std::string& w) { return map_row_from(r, target, w); });
}
std::vector<SsRow> ss(const fs::path& db, std::string_view table) {
    return typed<SsRow>(db, table, headers::ss, ss_from);
}
std::vector<CofseqRow> cofseq(const fs::path& db, std::string_view table) {
    return typed<CofseqRow>(db, table, headers::cofseq, cofseq_from);
}
std::vector<ProofRow> proofs(const fs::path& db, std::string_view table) {
    return typed<ProofRow>(db, table, headers::proofs, proof_from);
}

}  // namespace sseq::sqlite
