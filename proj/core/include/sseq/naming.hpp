#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sseq {

struct Keyword {
    std::string_view text;
    std::string_view element;  // LaTeX name of the homotopy class
    int degree;
};

// Attaching-map keywords and their stems; "2" is the degree-0 map.
std::span<const Keyword> keywords();
std::optional<int> keyword_degree(std::string_view kw);

struct SpectrumAst {
    enum class Kind { Sphere, Tmf, Cone, Chain, Wedge, CoWedge, ChainV, Eq, Dual, Smash, RP, CP, Fphi, Fphik, Alias };

    Kind kind = Kind::Sphere;
    std::vector<std::string> keywords;  // Cone, Chain, Wedge, CoWedge, ChainV, Eq
    int lo = 0;                         // Sphere dimension, RP/CP bottom, Fphik skeleton
    int hi = 0;                         // RP/CP top
    std::string alias;                  // Alias: the short name
    std::vector<SpectrumAst> parts;     // Dual: one; Smash: two or more; Alias: the expansion

    friend bool operator==(const SpectrumAst&, const SpectrumAst&) = default;
};

inline constexpr int kFphiDefaultBound = 256;

SpectrumAst parse_spectrum_name(std::string_view text);
std::string print(const SpectrumAst& ast);
// Sorted multiset of cell dimensions. Fphi is cut at the given top dimension;
// tmf has no finite cell structure and raises Unsupported.
std::vector<int> cells_of(const SpectrumAst& ast, int fphi_bound = kFphiDefaultBound);
bool has_finite_cells(const SpectrumAst& ast);
bool is_unbounded(const SpectrumAst& ast);  // contains Fphi

enum class MapKind { Inclusion, Quotient, Boundary, ByCell, TruncatedKahnPriddy, Hurewicz, RPQuotient, CellMap };
std::string_view map_kind_name(MapKind k);

struct MapAst {
    SpectrumAst source;
    SpectrumAst target;     // as written; for Boundary and RPQuotient the middle term of the cofiber sequence
    MapKind kind = MapKind::Inclusion;
    int suspension = 0;     // k: source stem n lands in target stem n - k
    std::optional<std::string> by_keyword;
    std::vector<int> landing_cells;  // cells of the complex the map actually lands in, for Boundary kinds
};

MapAst parse_map_name(std::string_view text);
std::string print(const MapAst& m);

struct CofseqAst {
    std::array<SpectrumAst, 3> terms;  // X, Y, Z
    std::array<int, 3> drops{};        // stem drop of f, g, h; h includes the shift into the suspension of X
    int middle = 1;                    // which term is the union of the other two cells
};

struct CofseqRef {
    CofseqAst seq;
    std::optional<int> leg;  // 0, 1, 2 for f, g, h
};

CofseqAst parse_cofseq_name(std::string_view text);
CofseqRef parse_cofseq_ref(std::string_view text);
std::string print(const CofseqAst& c);

// Multiset check that one term is the union of the other two under the drops.
bool cells_consistent(const CofseqAst& c);

}  // namespace sseq
