#include "sseq/algebra.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "sseq/error.hpp"

namespace sseq {

std::string to_string(BiDegree d) { return fmt::format("({},{})", d.stem, d.s); }

std::vector<int> Monomial::tokens() const {
    std::vector<int> out;
    out.reserve(ring.size() * 2 + 1);
    for (auto [g, e] : ring) {
        out.push_back(g);
        out.push_back(e);
    }
    if (module_gen) out.push_back(*module_gen);
    return out;
}

size_t MonomialHash::operator()(const Monomial& m) const noexcept {
    size_t h = m.module_gen ? static_cast<size_t>(*m.module_gen) * 0x9e3779b97f4a7c15ULL : 17;
    for (auto [g, e] : m.ring) h = (h ^ (static_cast<size_t>(g) << 16 ^ static_cast<size_t>(e))) * 1099511628211ULL;
    return h;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
    if (a.module_gen && b.module_gen) fail(Errc::ModuleTimesModule, "product of two module monomials");
    Monomial out;
    out.module_gen = a.module_gen ? a.module_gen : b.module_gen;
    auto ia = a.ring.begin();
    auto ib = b.ring.begin();
    while (ia != a.ring.end() || ib != b.ring.end()) {
        if (ib == b.ring.end() || (ia != a.ring.end() && ia->first < ib->first)) {
            out.ring.push_back(*ia++);
        } else if (ia == a.ring.end() || ib->first < ia->first) {
            out.ring.push_back(*ib++);
        } else {
            out.ring.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    return out;
}

std::optional<Monomial> divide(const Monomial& m, const Monomial& divisor) {
    Monomial q;
    if (divisor.module_gen) {
        if (m.module_gen != divisor.module_gen) return std::nullopt;
    } else {
        q.module_gen = m.module_gen;
    }
    auto id = divisor.ring.begin();
    for (auto [g, e] : m.ring) {
        if (id != divisor.ring.end() && id->first < g) return std::nullopt;
        if (id != divisor.ring.end() && id->first == g) {
            if (id->second > e) return std::nullopt;
            if (e > id->second) q.ring.emplace_back(g, e - id->second);
            ++id;
        } else {
            q.ring.emplace_back(g, e);
        }
    }
    if (id != divisor.ring.end()) return std::nullopt;
    return q;
}

namespace {

void toggle(std::set<Monomial>& acc, Monomial m) {
    auto [it, inserted] = acc.insert(std::move(m));
    if (!inserted) acc.erase(it);
}

Element from_set(const std::set<Monomial>& s) { return Element{std::vector<Monomial>(s.begin(), s.end())}; }

Element expand_product(const Element& a, const Element& b) {
    std::set<Monomial> acc;
    for (const auto& x : a.terms)
        for (const auto& y : b.terms) toggle(acc, multiply(x, y));
    return from_set(acc);
}

}  // namespace

Element Element::canonical() const {
    std::set<Monomial> acc;
    for (const auto& m : terms) toggle(acc, m);
    return from_set(acc);
}

bool operator==(const Element& a, const Element& b) { return a.canonical().terms == b.canonical().terms; }

Element elem_add(const Element& a, const Element& b) {
    std::set<Monomial> acc;
    for (const auto& m : a.terms) toggle(acc, m);
    for (const auto& m : b.terms) toggle(acc, m);
    return from_set(acc);
}

const SpectrumData& SpectrumData::ring_ctx() const {
    if (is_ring) return *this;
    if (!ring) fail(Errc::UnknownGenerator, fmt::format("module {} has no acting ring loaded", name));
    return *ring;
}

BiDegree SpectrumData::degree_of(const Monomial& m) const {
    const SpectrumData& r = ring_ctx();
    BiDegree d;
    for (auto [g, e] : m.ring) {
        if (g < 0 || g >= static_cast<int>(r.generators.size()))
            fail(Errc::UnknownGenerator, fmt::format("ring generator {} not in {}", g, r.name));
        d.stem += e * r.generators[g].deg.stem;
        d.s += e * r.generators[g].deg.s;
    }
    if (m.module_gen) {
        int g = *m.module_gen;
        if (is_ring) fail(Errc::ArityMismatch, fmt::format("module generator in ring {}", name));
        if (g < 0 || g >= static_cast<int>(generators.size()))
            fail(Errc::UnknownGenerator, fmt::format("generator {} not in {}", g, name));
        d = d + generators[g].deg;
    }
    return d;
}

std::optional<BiDegree> SpectrumData::degree_of(const Element& e) const {
    std::optional<BiDegree> d;
    for (const auto& m : e.terms) {
        BiDegree dm = degree_of(m);
        if (d && *d != dm)
            fail(Errc::DegreeMismatch, fmt::format("terms at {} and {}", to_string(*d), to_string(dm)));
        d = dm;
    }
    return d;
}

void SpectrumData::finalize() {
    for (size_t i = 0; i < generators.size(); ++i)
        if (generators[i].id != static_cast<int>(i))
            fail(Errc::CrossValidation, fmt::format("{}: generator ids not dense at row {}", name, i + 1));
    if (!is_ring) (void)ring_ctx();
    for (size_t i = 0; i < relations.size(); ++i) {
        const auto& rel = relations[i];
        for (const auto& m : rel.rel.terms)
            if (is_ring == m.module_gen.has_value())
                fail(Errc::ArityMismatch, fmt::format("{}: relation {} has wrong arity", name, i + 1));
        auto d = degree_of(rel.rel);
        if (d && *d != rel.deg)
            fail(Errc::CrossValidation, fmt::format("{}: relation {} has degree {} but is listed at {}", name, i + 1,
                                                    to_string(*d), to_string(rel.deg)));
    }
    by_degree_.clear();
    lookup_.clear();
    int top = 0;
    for (size_t i = 0; i < basis_rows.size(); ++i) {
        const auto& row = basis_rows[i];
        if (is_ring == row.mon.module_gen.has_value())
            fail(Errc::ArityMismatch, fmt::format("{}: basis row {} has wrong arity", name, i + 1));
        BiDegree d = degree_of(row.mon);
        if (d != row.deg)
            fail(Errc::CrossValidation, fmt::format("{}: basis row {} has degree {} but is listed at {}", name, i + 1,
                                                    to_string(d), to_string(row.deg)));
        auto& slot = by_degree_[d];
        if (!lookup_.emplace(row.mon, std::pair{d, static_cast<int>(slot.size())}).second)
            fail(Errc::CrossValidation, fmt::format("{}: basis row {} repeats a monomial", name, i + 1));
        slot.push_back(static_cast<int>(i));
        top = std::max(top, d.t());
    }
    if (max_t < 0) max_t = top;
    for (size_t i = 0; i < basis_rows.size(); ++i) {
        const auto& row = basis_rows[i];
        if (!row.d2) continue;
        BiDegree target = diff_target(row.deg, 2);
        int n = dim(target);
        for (int k : *row.d2)
            if (k < 0 || k >= n)
                fail(Errc::CrossValidation, fmt::format("{}: basis row {} d2 index {} outside {} of dimension {}", name,
                                                        i + 1, k, to_string(target), n));
    }
}

int SpectrumData::dim(BiDegree d) const {
    auto it = by_degree_.find(d);
    return it == by_degree_.end() ? 0 : static_cast<int>(it->second.size());
}

const std::vector<int>& SpectrumData::rows_at(BiDegree d) const {
    static const std::vector<int> empty;
    auto it = by_degree_.find(d);
    return it == by_degree_.end() ? empty : it->second;
}

std::vector<BiDegree> SpectrumData::degrees() const {
    std::vector<BiDegree> out;
    out.reserve(by_degree_.size());
    for (const auto& [d, rows] : by_degree_) out.push_back(d);
    return out;
}

std::optional<std::pair<BiDegree, int>> SpectrumData::locate(const Monomial& m) const {
    auto it = lookup_.find(m);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

const BasisRow& SpectrumData::basis_row(BiDegree d, int i) const {
    const auto& rows = rows_at(d);
    if (i < 0 || i >= static_cast<int>(rows.size()))
        fail(Errc::CrossValidation,
             fmt::format("{}: index {} outside {} of dimension {}", name, i, to_string(d), rows.size()));
    return basis_rows[rows[i]];
}

const Monomial& SpectrumData::basis_monomial(BiDegree d, int i) const { return basis_row(d, i).mon; }

Element SpectrumData::element_of(const BasisVec& v) const {
    if (!v.idx.empty() && v.deg.t() > max_t)
        fail(Errc::OutOfRange, fmt::format("{}: {} beyond max t {}", name, to_string(v.deg), max_t));
    Element e;
    for (int i : v.idx) e.terms.push_back(basis_monomial(v.deg, i));
    return e;
}

BasisVec normal_form(const Element& e, const SpectrumData& ctx, std::optional<BiDegree> zero_deg) {
    auto deg = ctx.degree_of(e);
    if (!deg) return BasisVec{zero_deg.value_or(BiDegree{}), {}};
    if (deg->t() > ctx.max_t)
        fail(Errc::OutOfRange, fmt::format("{}: {} beyond max t {}", ctx.name, to_string(*deg), ctx.max_t));
    for (const auto& m : e.terms)
        if (ctx.is_ring == m.module_gen.has_value())
            fail(Errc::ArityMismatch, fmt::format("{}: term of wrong arity", ctx.name));

    const SpectrumData* ring = ctx.is_ring ? nullptr : &ctx.ring_ctx();
    std::set<Monomial> work;
    for (const auto& m : e.terms) toggle(work, m);

    auto rewrite = [&](const Monomial& term) -> bool {
        auto try_rel = [&](const RelationRow& row) {
            if (row.rel.terms.empty()) return false;
            auto q = divide(term, row.rel.terms.front());
            if (!q) return false;
            toggle(work, term);
            for (size_t k = 1; k < row.rel.terms.size(); ++k) toggle(work, multiply(*q, row.rel.terms[k]));
            return true;
        };
        for (const auto& row : ctx.relations)
            if (try_rel(row)) return true;
        if (ring)
            for (const auto& row : ring->relations)
                if (try_rel(row)) return true;
        return false;
    };

    for (int steps = 0;; ++steps) {
        auto it = std::find_if(work.begin(), work.end(), [&](const Monomial& m) { return !ctx.locate(m); });
        if (it == work.end()) break;
        if (steps >= kRewriteStepLimit)
            fail(Errc::NonConfluent, fmt::format("{}: rewriting at {} exceeded {} steps", ctx.name, to_string(*deg),
                                                 kRewriteStepLimit));
        Monomial term = *it;
        if (!rewrite(term))
            fail(Errc::NonConfluent, fmt::format("{}: monomial [{}] at {} is irreducible but not in the basis",
                                                 ctx.name, fmt::join(term.tokens(), ","), to_string(*deg)));
    }

    BasisVec out{*deg, {}};
    for (const auto& m : work) out.idx.push_back(ctx.locate(m)->second);
    std::sort(out.idx.begin(), out.idx.end());
    return out;
}

namespace {

bool has_module_term(const Element& e) {
    return std::any_of(e.terms.begin(), e.terms.end(), [](const Monomial& m) { return m.module_gen.has_value(); });
}

BasisVec mul_at(Element a, Element b, const SpectrumData& ctx, std::optional<BiDegree> deg) {
    bool am = has_module_term(a);
    bool bm = has_module_term(b);
    if (am && bm) fail(Errc::ModuleTimesModule, "both factors carry a module generator");
    if (am) std::swap(a, b);
    if (deg && deg->t() > ctx.max_t)
        fail(Errc::OutOfRange, fmt::format("{}: product at {} beyond max t {}", ctx.name, to_string(*deg), ctx.max_t));
    return normal_form(expand_product(a, b), ctx, deg);
}

}  // namespace

BasisVec mul(const Element& a, const Element& b, const SpectrumData& ctx) {
    std::optional<BiDegree> deg;
    auto da = ctx.degree_of(a);
    auto db = ctx.degree_of(b);
    if (da && db) deg = *da + *db;
    return mul_at(a, b, ctx, deg);
}

BasisVec mul(const BasisVec& a, const BasisVec& b, const SpectrumData& ctx) {
    return mul_at(ctx.ring_ctx().element_of(a), ctx.element_of(b), ctx, a.deg + b.deg);
}

namespace {

BiDegree source_generator_degree(const MapData& f, int id, const SpectrumData& src, const SpectrumData& dst) {
    if (src.is_ring && !dst.is_ring) {
        if (id != 0) fail(Errc::MissingImage, fmt::format("{}__{}: ring source has only the unit, got id {}", f.source, f.target, id));
        return {};
    }
    if (id < 0 || id >= static_cast<int>(src.generators.size()))
        fail(Errc::UnknownGenerator, fmt::format("{}: map row id {} has no generator", src.name, id));
    return src.generators[id].deg;
}

const Element& image_of(const MapData& f, int id) {
    auto it = f.images.find(id);
    if (it == f.images.end())
        fail(Errc::MissingImage, fmt::format("{}__{}: no image for generator {}", f.source, f.target, id));
    return it->second;
}

}  // namespace

MapShift infer_shift(const MapData& f, const SpectrumData& src, const SpectrumData& dst) {
    std::optional<MapShift> shift;
    int first_id = -1;
    for (const auto& [id, img] : f.images) {
        auto d = dst.degree_of(img);
        if (!d) continue;
        BiDegree g = source_generator_degree(f, id, src, dst);
        MapShift here{g.stem - d->stem, d->s - g.s};
        if (!shift) {
            shift = here;
            first_id = id;
        } else if (here.stem_drop != shift->stem_drop || here.af != shift->af) {
            fail(Errc::CrossValidation,
                 fmt::format("{}__{}: generator {} shifts by (-{}, +{}) but generator {} by (-{}, +{})", f.source,
                             f.target, id, here.stem_drop, here.af, first_id, shift->stem_drop, shift->af));
        }
    }
    return shift.value_or(MapShift{});
}

Element map_image(const MapData& f, const Element& e, const SpectrumData& src, const SpectrumData& dst) {
    std::set<Monomial> acc;
    bool ring_hom = src.is_ring && dst.is_ring;
    if (!ring_hom && src.ring_ctx().name != dst.ring_ctx().name)
        fail(Errc::Unsupported, fmt::format("{}__{}: change of acting ring", f.source, f.target));
    for (const auto& m : e.terms) {
        Element piece;
        if (ring_hom) {
            if (m.module_gen) fail(Errc::ArityMismatch, "module term in a ring map");
            piece.terms.push_back(Monomial{});
            for (auto [g, ex] : m.ring)
                for (int k = 0; k < ex; ++k) piece = expand_product(piece, image_of(f, g));
        } else {
            if (src.is_ring == m.module_gen.has_value()) fail(Errc::ArityMismatch, "term arity does not match source");
            int g = src.is_ring ? 0 : *m.module_gen;
            Element coeff{{Monomial{m.ring, std::nullopt}}};
            piece = expand_product(coeff, image_of(f, g));
        }
        for (auto& t : piece.terms) toggle(acc, std::move(t));
    }
    return from_set(acc);
}

BasisVec apply_map(const MapData& f, const Element& e, const SpectrumData& src, const SpectrumData& dst) {
    std::optional<BiDegree> zero_deg;
    if (auto d = src.degree_of(e)) {
        MapShift sh = infer_shift(f, src, dst);
        zero_deg = BiDegree{d->stem - sh.stem_drop, d->s + sh.af};
    }
    return normal_form(map_image(f, e, src, dst), dst, zero_deg);
}

BasisVec apply_map(const MapData& f, const BasisVec& v, const SpectrumData& src, const SpectrumData& dst) {
    MapShift sh = infer_shift(f, src, dst);
    BiDegree target{v.deg.stem - sh.stem_drop, v.deg.s + sh.af};
    return normal_form(map_image(f, src.element_of(v), src, dst), dst, target);
}

LeibnizResult leibniz_product(const BasisVec& x, const BasisVec& dx, const BasisVec& y, const BasisVec& dy, int r,
                              const SpectrumData& ctx) {
    if (dx.deg != diff_target(x.deg, r) || dy.deg != diff_target(y.deg, r))
        fail(Errc::DegreeMismatch, fmt::format("d_{} values must sit at (stem-1, s+{})", r, r));
    const SpectrumData& ring = ctx.ring_ctx();
    BiDegree xy_deg = x.deg + y.deg;
    BiDegree dxy_deg = diff_target(xy_deg, r);
    if (dxy_deg.t() > ctx.max_t)
        fail(Errc::OutOfRange, fmt::format("{}: d_{} of product lands at {} beyond max t {}", ctx.name, r,
                                           to_string(dxy_deg), ctx.max_t));
    Element ex = ring.element_of(x);
    Element edx = ring.element_of(dx);
    Element ey = ctx.element_of(y);
    Element edy = ctx.element_of(dy);
    LeibnizResult out;
    out.xy = mul_at(ex, ey, ctx, xy_deg);
    BasisVec a = mul_at(edx, ey, ctx, dxy_deg);
    BasisVec b = mul_at(ex, edy, ctx, dxy_deg);
    out.dxy = BasisVec{dxy_deg, xor_sets(a.idx, b.idx)};
    return out;
}

}  // namespace sseq
