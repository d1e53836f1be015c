#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sseq/f2.hpp"

namespace sseq {

struct BiDegree {
    int stem = 0;
    int s = 0;

    constexpr int t() const { return stem + s; }
    constexpr BiDegree operator+(BiDegree o) const { return {stem + o.stem, s + o.s}; }
    constexpr BiDegree operator-(BiDegree o) const { return {stem - o.stem, s - o.s}; }
    friend constexpr auto operator<=>(const BiDegree&, const BiDegree&) = default;
};

std::string to_string(BiDegree d);  // "(stem,s)"

// Where d_r lands from a class at deg.
constexpr BiDegree diff_target(BiDegree deg, int r) { return {deg.stem - 1, deg.s + r}; }

enum class Arity { Ring, Module };

struct Generator {
    int id = 0;
    std::optional<std::string> name;
    BiDegree deg;
};

struct Monomial {
    std::vector<std::pair<int, int>> ring;  // (generator id, exponent), ids ascending
    std::optional<int> module_gen;

    std::vector<int> tokens() const;
    friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.tokens() <=> b.tokens(); }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct MonomialHash {
    size_t operator()(const Monomial& m) const noexcept;
};

Monomial multiply(const Monomial& a, const Monomial& b);
// m / divisor when divisor divides m (module part must match or be absent in divisor).
std::optional<Monomial> divide(const Monomial& m, const Monomial& divisor);

// F2 sum of monomials. Terms keep the order they were given in, so file text
// round-trips; arithmetic results come out in ascending token order.
struct Element {
    std::vector<Monomial> terms;

    bool is_zero() const { return terms.empty(); }
    Element canonical() const;
    friend bool operator==(const Element& a, const Element& b);
};

Element elem_add(const Element& a, const Element& b);

// Index vector in one bidegree's basis.
struct BasisVec {
    BiDegree deg;
    IndexSet idx;

    bool is_zero() const { return idx.empty(); }
    friend bool operator==(const BasisVec&, const BasisVec&) = default;
};

struct RelationRow {
    Element rel;
    BiDegree deg;
};

struct BasisRow {
    int index_col = 0;  // first column of the basis file, carried verbatim
    Monomial mon;
    BiDegree deg;
    std::optional<IndexSet> d2;  // nullopt = not computed ([NULL])
};

// E2 page of one spectrum: generators, relations and the per-bidegree monomial basis.
class SpectrumData {
public:
    std::string name;
    bool is_ring = true;
    std::shared_ptr<const SpectrumData> ring;  // acting ring when is_ring is false
    std::vector<Generator> generators;
    std::vector<RelationRow> relations;
    std::vector<BasisRow> basis_rows;  // file order
    int max_t = -1;  // -1: take the largest t present in the basis

    // Validates degrees and indexes the basis. Throws CrossValidation.
    void finalize();

    const SpectrumData& ring_ctx() const;
    Arity arity() const { return is_ring ? Arity::Ring : Arity::Module; }

    BiDegree degree_of(const Monomial& m) const;
    // Degree shared by all terms; nullopt for zero. Throws DegreeMismatch.
    std::optional<BiDegree> degree_of(const Element& e) const;

    int dim(BiDegree d) const;
    const std::vector<int>& rows_at(BiDegree d) const;  // indices into basis_rows
    std::vector<BiDegree> degrees() const;               // ascending
    std::optional<std::pair<BiDegree, int>> locate(const Monomial& m) const;
    const Monomial& basis_monomial(BiDegree d, int i) const;
    const BasisRow& basis_row(BiDegree d, int i) const;
    Element element_of(const BasisVec& v) const;

private:
    std::map<BiDegree, std::vector<int>> by_degree_;
    std::unordered_map<Monomial, std::pair<BiDegree, int>, MonomialHash> lookup_;
};

inline constexpr int kRewriteStepLimit = 10000;

BasisVec normal_form(const Element& e, const SpectrumData& ctx, std::optional<BiDegree> zero_deg = {});
// a acts from the ring side; at most one factor may carry a module generator.
BasisVec mul(const Element& a, const Element& b, const SpectrumData& ctx);
BasisVec mul(const BasisVec& a, const BasisVec& b, const SpectrumData& ctx);

struct MapData {
    std::string source;
    std::string target;
    std::map<int, Element> images;  // generator id -> image in the target
};

struct MapShift {
    int stem_drop = 0;  // k: the map lands in the k-fold suspension of the target
    int af = 0;
};

// Inferred from the lowest-id nonzero image; all others must agree.
MapShift infer_shift(const MapData& f, const SpectrumData& src, const SpectrumData& dst);
// Substitution without reduction.
Element map_image(const MapData& f, const Element& e, const SpectrumData& src, const SpectrumData& dst);
BasisVec apply_map(const MapData& f, const Element& e, const SpectrumData& src, const SpectrumData& dst);
BasisVec apply_map(const MapData& f, const BasisVec& v, const SpectrumData& src, const SpectrumData& dst);

struct LeibnizResult {
    BasisVec xy;
    BasisVec dxy;
};

// x and dx live in the acting ring of ctx (or ctx itself for rings); y and dy in ctx.
LeibnizResult leibniz_product(const BasisVec& x, const BasisVec& dx, const BasisVec& y, const BasisVec& dy, int r,
                              const SpectrumData& ctx);

}  // namespace sseq
