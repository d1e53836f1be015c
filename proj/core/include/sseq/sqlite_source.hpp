#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "sseq/formats.hpp"

namespace sseq::sqlite {

// Read-only access to .db files holding the same logical tables as the CSV files.
// SQL NULL is mapped to the "[NULL]" text so the CSV row parsers apply unchanged.
std::vector<CsvRecord> records(const std::filesystem::path& db, std::string_view table, std::string_view columns);
std::vector<std::string> tables(const std::filesystem::path& db);

std::vector<Generator> generators(const std::filesystem::path& db, std::string_view table);
std::vector<RelationRow> relations(const std::filesystem::path& db, std::string_view table, Arity arity);
std::vector<BasisRow> basis(const std::filesystem::path& db, std::string_view table, Arity arity);
std::vector<MapRow> map_rows(const std::filesystem::path& db, std::string_view table, Arity target);
std::vector<SsRow> ss(const std::filesystem::path& db, std::string_view table);
std::vector<CofseqRow> cofseq(const std::filesystem::path& db, std::string_view table);
std::vector<ProofRow> proofs(const std::filesystem::path& db, std::string_view table = "proofs");

}  // namespace sseq::sqlite
