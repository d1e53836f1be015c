#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sseq/algebra.hpp"
#include "sseq/csv.hpp"

namespace sseq {

inline constexpr std::string_view kNullText = "[NULL]";

int parse_int(std::string_view text);
Element parse_expr(std::string_view text, Arity arity);
std::string serialize_expr(const Element& e);
// A single basis monomial; for rings the empty text is the unit.
Monomial parse_monomial(std::string_view text, Arity arity);
std::string serialize_monomial(const Monomial& m);

// "[NULL]" is Unknown (nullopt); "" is the zero vector.
std::optional<IndexSet> parse_index_vec(std::string_view text);
std::string serialize_index_vec(const std::optional<IndexSet>& v);

struct MapRow {
    int id = 0;
    Element image;
};

struct SsRow {
    int stem = 0;
    int s = 0;
    IndexSet base;
    std::optional<IndexSet> diff;
    int level = 0;
};

struct CofseqRow {
    int iC = 0;
    int stem = 0;
    int s = 0;
    IndexSet base;
    std::optional<IndexSet> diff;
    int level = 0;
};

enum class Reason { d2, N, G, XX, XY, ToCs, OutCsI, CsCm, Syn, SynCs, SynIn, T, D, TI, DI, GI };
inline constexpr int kReasonCount = 16;

std::string_view reason_name(Reason r);
std::optional<Reason> parse_reason(std::string_view text);
// Rows whose stem, s, t describe dx instead of x.
bool is_dx_keyed(Reason r);

struct ProofRow {
    long long id = 0;
    int depth = 0;
    Reason reason = Reason::D;
    std::string name;
    int stem = 0;
    int s = 0;
    int t = 0;
    int r = 0;
    std::optional<IndexSet> x;
    std::optional<IndexSet> dx;
    std::optional<std::string> info;

    bool dx_keyed() const { return is_dx_keyed(reason); }
};

namespace headers {
inline constexpr std::string_view generators = "id,name,stem,s";
inline constexpr std::string_view relations = "rel,stem,s";
inline constexpr std::string_view basis = "index,mon,stem,s,d2";
inline constexpr std::string_view map = "id,map";
inline constexpr std::string_view ss = "stem,s,base,diff,level";
inline constexpr std::string_view cofseq = "iC,stem,s,base,diff,level";
inline constexpr std::string_view proofs = "id,depth,reason,name,stem,s,t,r,x,dx,info";
}  // namespace headers

// Each parser takes the whole file text (header included) and the file name for diagnostics.
std::vector<Generator> parse_generators(std::string_view text, const std::string& file = {});
std::vector<RelationRow> parse_relations(std::string_view text, Arity arity, const std::string& file = {});
std::vector<BasisRow> parse_basis(std::string_view text, Arity arity, const std::string& file = {});
std::vector<MapRow> parse_map(std::string_view text, Arity target, const std::string& file = {});
std::vector<SsRow> parse_ss(std::string_view text, const std::string& file = {});
std::vector<CofseqRow> parse_cofseq(std::string_view text, const std::string& file = {});
std::vector<ProofRow> parse_proofs(std::string_view text, const std::string& file = {});

std::string serialize_generators(std::span<const Generator> rows);
std::string serialize_relations(std::span<const RelationRow> rows);
std::string serialize_basis(std::span<const BasisRow> rows);
std::string serialize_map(std::span<const MapRow> rows);
std::string serialize_ss(std::span<const SsRow> rows);
std::string serialize_cofseq(std::span<const CofseqRow> rows);
std::string serialize_proofs(std::span<const ProofRow> rows);
std::vector<std::string> proof_fields(const ProofRow& row);

// Row parsers over already-split records, shared with the SQLite adapter.
Generator generator_from(const CsvRecord& rec, const std::string& file);
RelationRow relation_from(const CsvRecord& rec, Arity arity, const std::string& file);
BasisRow basis_from(const CsvRecord& rec, Arity arity, const std::string& file);
MapRow map_row_from(const CsvRecord& rec, Arity target, const std::string& file);
SsRow ss_from(const CsvRecord& rec, const std::string& file);
CofseqRow cofseq_from(const CsvRecord& rec, const std::string& file);
ProofRow proof_from(const CsvRecord& rec, const std::string& file);

std::string read_file(const std::filesystem::path& path);

struct SpectrumFiles {
    std::filesystem::path generators;
    std::filesystem::path relations;
    std::filesystem::path basis;
};
SpectrumFiles spectrum_files(const std::filesystem::path& dir, std::string_view name);

// Only S0 and tmf are rings; "tmf_X" is a tmf-module, everything else an S0-module.
bool is_ring_name(std::string_view name);
std::string ring_of(std::string_view name);

// Loads and cross-validates one spectrum. A module needs its ring passed in.
SpectrumData load_spectrum(const std::filesystem::path& dir, std::string_view name,
                           std::shared_ptr<const SpectrumData> ring = nullptr, int max_t = -1);
MapData load_map(const std::filesystem::path& path, std::string source, std::string target, Arity target_arity);
std::vector<SsRow> load_ss(const std::filesystem::path& path);
std::vector<CofseqRow> load_cofseq(const std::filesystem::path& path);

// Streams rows of one or more part files; ids must increase strictly across all parts.
void for_each_proof_row(std::span<const std::filesystem::path> parts,
                        const std::function<void(const ProofRow&, const SourceLoc&)>& fn);
std::vector<ProofRow> load_proofs(std::span<const std::filesystem::path> parts);

// Lazily loads and caches everything found under one data directory.
class Dataset {
public:
    explicit Dataset(std::filesystem::path dir);

    const std::filesystem::path& dir() const { return dir_; }
    bool has_spectrum(std::string_view name) const;
    std::shared_ptr<const SpectrumData> spectrum(const std::string& name);
    std::optional<std::filesystem::path> map_path(std::string_view source, std::string_view target) const;
    std::shared_ptr<const MapData> map(const std::string& source, const std::string& target);
    std::optional<std::filesystem::path> ss_path(std::string_view name) const;
    std::optional<std::filesystem::path> cofseq_path(std::string_view name) const;

    std::vector<std::string> spectrum_names() const;
    std::vector<std::filesystem::path> map_files() const;
    std::vector<std::string> cofseq_names() const;
    std::vector<std::filesystem::path> proof_files() const;

    void set_max_t(const std::string& name, int max_t) { max_t_override_[name] = max_t; }

private:
    std::filesystem::path dir_;
    std::map<std::string, std::shared_ptr<const SpectrumData>, std::less<>> spectra_;
    std::map<std::string, std::shared_ptr<const MapData>, std::less<>> maps_;
    std::map<std::string, int, std::less<>> max_t_override_;
};

}  // namespace sseq
