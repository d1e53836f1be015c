#include "sseq/naming.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "sseq/error.hpp"

namespace sseq {

namespace {

constexpr std::array<Keyword, 9> kKeywords{{
    {"2", "2", 0},
    {"eta", "\\eta", 1},
    {"nu", "\\nu", 3},
    {"sigma", "\\sigma", 7},
    {"2nu", "2\\nu", 3},
    {"2sigma", "2\\sigma", 7},
    {"sigmasq", "\\sigma^2", 14},
    {"theta4", "\\theta_4", 30},
    {"theta5", "\\theta_5", 62},
}};

using Kind = SpectrumAst::Kind;

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

// "12" -> 12, "m7" -> -7; no signs, no leading zeros.
std::optional<int> parse_dim(std::string_view s) {
    bool neg = !s.empty() && s.front() == 'm';
    if (neg) s.remove_prefix(1);
    if (s.empty() || s.size() > 6) return std::nullopt;
    if (!std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) return std::nullopt;
    if (s.size() > 1 && s.front() == '0') return std::nullopt;
    int v = std::atoi(std::string(s).c_str());
    if (neg && v == 0) return std::nullopt;
    return neg ? -v : v;
}

std::string dim_text(int v) { return v < 0 ? fmt::format("m{}", -v) : std::to_string(v); }

int deg(const std::string& kw) { return *keyword_degree(kw); }

SpectrumAst keyword_node(Kind k, std::vector<std::string> kws) {
    SpectrumAst a;
    a.kind = k;
    a.keywords = std::move(kws);
    return a;
}

SpectrumAst parse_atom(std::string_view t);

SpectrumAst alias_node(std::string_view name, std::string_view expansion) {
    SpectrumAst a;
    a.kind = Kind::Alias;
    a.alias = std::string(name);
    a.parts.push_back(parse_atom(expansion));
    return a;
}

SpectrumAst parse_cw(std::string_view whole, std::string_view body) {
    std::vector<std::string> toks;
    for (auto piece : split(body, '_')) {
        if (piece.empty()) fail(Errc::Malformed, fmt::format("'{}' has an empty token", whole));
        toks.emplace_back(piece);
    }
    std::vector<size_t> markers;
    for (size_t i = 0; i < toks.size(); ++i) {
        if (toks[i] == "V" || toks[i] == "A" || toks[i] == "Eq") {
            markers.push_back(i);
        } else if (!keyword_degree(toks[i])) {
            fail(Errc::UnknownKeyword, fmt::format("'{}' in '{}' is not a keyword", toks[i], whole));
        }
    }
    auto without = [&](size_t skip) {
        std::vector<std::string> out;
        for (size_t i = 0; i < toks.size(); ++i)
            if (i != skip) out.push_back(toks[i]);
        return out;
    };
    if (markers.empty()) {
        if (toks.size() < 2) fail(Errc::Malformed, fmt::format("'{}' needs at least two keywords", whole));
        return keyword_node(Kind::Chain, toks);
    }
    if (markers.size() == 1) {
        const auto& m = toks[markers[0]];
        size_t n = toks.size();
        if (n == 3 && markers[0] == 1 && m == "V") return keyword_node(Kind::Wedge, without(1));
        if (n == 3 && markers[0] == 1 && m == "A") return keyword_node(Kind::CoWedge, without(1));
        if (n == 4 && markers[0] == 2 && m == "V") return keyword_node(Kind::ChainV, without(2));
        if (n == 6 && markers[0] == 3 && m == "Eq") return keyword_node(Kind::Eq, without(3));
    }
    fail(Errc::Malformed, fmt::format("'{}' does not match any CW pattern", whole));
}

SpectrumAst parse_atom(std::string_view t) {
    if (t.empty()) fail(Errc::Malformed, "empty name");
    if (t == "tmf") return SpectrumAst{Kind::Tmf, {}, 0, 0, {}, {}};
    if (t == "C2h4") return alias_node(t, "CW_2_sigmasq");
    if (t == "C2h5") return alias_node(t, "CW_2_theta4");
    if (t == "C2h6") return alias_node(t, "CW_2_theta5");
    if (t == "Joker") return alias_node(t, "CW_2_eta_2_Eq_eta_eta");
    if (t == "Fphi") return SpectrumAst{Kind::Fphi, {}, 0, 0, {}, {}};
    if (t.starts_with("Fphi")) {
        auto k = parse_dim(t.substr(4));
        if (!k || *k < 1) fail(Errc::Malformed, fmt::format("'{}' has a bad skeleton bound", t));
        return SpectrumAst{Kind::Fphik, {}, *k, 0, {}, {}};
    }
    if (t.starts_with("RP") || t.starts_with("CP")) {
        auto bounds = split(t.substr(2), '_');
        if (bounds.size() == 2) {
            auto lo = parse_dim(bounds[0]);
            auto hi = parse_dim(bounds[1]);
            if (lo && hi) {
                if (*lo > *hi) fail(Errc::Malformed, fmt::format("'{}' has bottom above top", t));
                return SpectrumAst{t[0] == 'R' ? Kind::RP : Kind::CP, {}, *lo, *hi, {}, {}};
            }
        }
        fail(Errc::Malformed, fmt::format("'{}' is not of the form RPm_n", t));
    }
    if (t.starts_with("S")) {
        if (auto n = parse_dim(t.substr(1))) return SpectrumAst{Kind::Sphere, {}, *n, 0, {}, {}};
    }
    if (t.starts_with("CW_")) return parse_cw(t, t.substr(3));
    if (t.size() > 1 && t.front() == 'D') {
        SpectrumAst d;
        d.kind = Kind::Dual;
        d.parts.push_back(parse_atom(t.substr(1)));
        return d;
    }
    if (t.size() > 1 && t.front() == 'C') {
        auto kw = t.substr(1);
        if (!keyword_degree(kw)) fail(Errc::UnknownKeyword, fmt::format("'{}' in '{}' is not a keyword", kw, t));
        return keyword_node(Kind::Cone, {std::string(kw)});
    }
    fail(Errc::Malformed, fmt::format("'{}' is not a spectrum name", t));
}

std::vector<int> reflect(std::vector<int> c) {
    if (c.empty()) return c;
    int top = *std::max_element(c.begin(), c.end());
    for (int& x : c) x = top - x;
    std::sort(c.begin(), c.end());
    return c;
}

std::vector<int> chain_cells(const std::vector<std::string>& kws) {
    std::vector<int> c{0};
    for (const auto& k : kws) c.push_back(c.back() + deg(k) + 1);
    return c;
}

std::vector<int> shifted(std::vector<int> c, int by) {
    for (int& x : c) x += by;
    return c;
}

// Removes sub from whole as multisets; nullopt if sub is not contained.
std::optional<std::vector<int>> remove_multiset(const std::vector<int>& whole, const std::vector<int>& sub) {
    std::vector<int> rest;
    auto i = whole.begin();
    auto j = sub.begin();
    while (i != whole.end()) {
        if (j != sub.end() && *j < *i) return std::nullopt;
        if (j != sub.end() && *j == *i) {
            ++i;
            ++j;
        } else {
            rest.push_back(*i++);
        }
    }
    if (j != sub.end()) return std::nullopt;
    return rest;
}

bool literal_dims(const SpectrumAst& a) {
    return a.kind == Kind::RP || a.kind == Kind::CP || (a.kind == Kind::Sphere && a.lo != 0);
}

bool is_tmf_side(const SpectrumAst& a) {
    return a.kind == Kind::Tmf || (a.kind == Kind::Smash && a.parts.front().kind == Kind::Tmf);
}

}  // namespace

std::span<const Keyword> keywords() { return kKeywords; }

std::optional<int> keyword_degree(std::string_view kw) {
    for (const auto& k : kKeywords)
        if (k.text == kw) return k.degree;
    return std::nullopt;
}

SpectrumAst parse_spectrum_name(std::string_view text) {
    if (text.empty()) fail(Errc::Malformed, "empty name");
    for (char c : text)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
            fail(Errc::Malformed, fmt::format("'{}' contains '{}'", text, c));

    // Cut points: segment k runs between consecutive cuts.
    std::vector<size_t> cuts{0};
    for (size_t i = 0; i < text.size(); ++i)
        if (text[i] == '_') cuts.push_back(i + 1);
    size_t n = cuts.size();
    auto seg = [&](size_t a, size_t b) {
        size_t end = b == n ? text.size() : cuts[b] - 1;
        return text.substr(cuts[a], end - cuts[a]);
    };

    std::map<std::pair<size_t, size_t>, std::optional<SpectrumAst>> memo;
    std::optional<Error> whole_error;
    auto atom = [&](size_t a, size_t b) -> const std::optional<SpectrumAst>& {
        auto key = std::pair{a, b};
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::optional<SpectrumAst> result;
        try {
            result = parse_atom(seg(a, b));
        } catch (const Error& e) {
            if (a == 0 && b == n) whole_error = e;
        }
        return memo.emplace(key, std::move(result)).first->second;
    };

    // ways[a]: readings of the suffix starting at cut a, capped at two.
    std::vector<std::vector<std::vector<SpectrumAst>>> ways(n + 1);
    ways[n].push_back({});
    for (size_t a = n; a-- > 0;) {
        for (size_t b = a + 1; b <= n && ways[a].size() < 2; ++b) {
            const auto& head = atom(a, b);
            if (!head) continue;
            for (const auto& tail : ways[b]) {
                if (ways[a].size() >= 2) break;
                std::vector<SpectrumAst> r{*head};
                r.insert(r.end(), tail.begin(), tail.end());
                ways[a].push_back(std::move(r));
            }
        }
    }
    if (ways[0].empty()) {
        if (whole_error) throw *whole_error;
        fail(Errc::Malformed, fmt::format("'{}' is not a spectrum name", text));
    }
    auto show = [](const std::vector<SpectrumAst>& r) {
        std::vector<std::string> names;
        for (const auto& a : r) names.push_back(print(a));
        return fmt::format("{}", fmt::join(names, " ^ "));
    };
    if (ways[0].size() > 1)
        fail(Errc::AmbiguousParse,
             fmt::format("'{}' reads as '{}' and as '{}'", text, show(ways[0][0]), show(ways[0][1])));
    auto& only = ways[0][0];
    if (only.size() == 1) return only[0];
    SpectrumAst sm;
    sm.kind = Kind::Smash;
    sm.parts = std::move(only);
    return sm;
}

std::string print(const SpectrumAst& a) {
    auto kws = [&](std::string_view marker, size_t at) {
        std::vector<std::string> t = a.keywords;
        if (!marker.empty()) t.insert(t.begin() + static_cast<long>(at), std::string(marker));
        return fmt::format("CW_{}", fmt::join(t, "_"));
    };
    switch (a.kind) {
        case Kind::Sphere: return "S" + dim_text(a.lo);
        case Kind::Tmf: return "tmf";
        case Kind::Cone: return "C" + a.keywords.at(0);
        case Kind::Chain: return kws("", 0);
        case Kind::Wedge: return kws("V", 1);
        case Kind::CoWedge: return kws("A", 1);
        case Kind::ChainV: return kws("V", 2);
        case Kind::Eq: return kws("Eq", 3);
        case Kind::Dual: return "D" + print(a.parts.at(0));
        case Kind::Smash: {
            std::vector<std::string> names;
            for (const auto& p : a.parts) names.push_back(print(p));
            return fmt::format("{}", fmt::join(names, "_"));
        }
        case Kind::RP: return "RP" + dim_text(a.lo) + "_" + dim_text(a.hi);
        case Kind::CP: return "CP" + dim_text(a.lo) + "_" + dim_text(a.hi);
        case Kind::Fphi: return "Fphi";
        case Kind::Fphik: return "Fphi" + std::to_string(a.lo);
        case Kind::Alias: return a.alias;
    }
    return {};
}

bool is_unbounded(const SpectrumAst& a) {
    if (a.kind == Kind::Fphi) return true;
    return std::any_of(a.parts.begin(), a.parts.end(), [](const SpectrumAst& p) { return is_unbounded(p); });
}

bool has_finite_cells(const SpectrumAst& a) {
    if (a.kind == Kind::Tmf) return false;
    return std::all_of(a.parts.begin(), a.parts.end(), [](const SpectrumAst& p) { return has_finite_cells(p); });
}

std::vector<int> cells_of(const SpectrumAst& a, int fphi_bound) {
    const auto& k = a.keywords;
    std::vector<int> c;
    switch (a.kind) {
        case Kind::Sphere: c = {a.lo}; break;
        case Kind::Tmf: fail(Errc::Unsupported, "tmf has no finite cell structure");
        case Kind::Cone: c = {0, deg(k[0]) + 1}; break;
        case Kind::Chain: c = chain_cells(k); break;
        case Kind::Wedge: c = {0, deg(k[0]) + 1, deg(k[1]) + 1}; break;
        case Kind::CoWedge: c = reflect({0, deg(k[0]) + 1, deg(k[1]) + 1}); break;
        case Kind::ChainV:
            c = chain_cells({k[0], k[1]});
            c.push_back(deg(k[2]) + 1);
            break;
        case Kind::Eq:
            c = chain_cells({k[0], k[1]});
            c.push_back(deg(k[3]) + 1);
            c.push_back(deg(k[0]) + deg(k[1]) + deg(k[2]) + 3);
            break;
        case Kind::Dual: c = reflect(cells_of(a.parts[0], fphi_bound)); break;
        case Kind::Smash: {
            c = {0};
            for (const auto& p : a.parts) {
                std::vector<int> next;
                for (int x : c)
                    for (int y : cells_of(p, fphi_bound)) next.push_back(x + y);
                c = std::move(next);
            }
            break;
        }
        case Kind::RP:
            for (int i = a.lo; i <= a.hi; ++i) c.push_back(i);
            break;
        case Kind::CP:
            for (int i = a.lo; i <= a.hi; ++i) c.push_back(2 * i);
            break;
        case Kind::Fphi:
            c.push_back(0);
            for (int i = 2; i <= fphi_bound; ++i) c.push_back(i);
            break;
        case Kind::Fphik:
            c.push_back(0);
            for (int i = 2; i <= a.lo + 1; ++i) c.push_back(i);
            break;
        case Kind::Alias: c = cells_of(a.parts[0], fphi_bound); break;
    }
    std::sort(c.begin(), c.end());
    return c;
}

std::string_view map_kind_name(MapKind k) {
    switch (k) {
        case MapKind::Inclusion: return "Inclusion";
        case MapKind::Quotient: return "Quotient";
        case MapKind::Boundary: return "Boundary";
        case MapKind::ByCell: return "ByCell";
        case MapKind::TruncatedKahnPriddy: return "TruncatedKahnPriddy";
        case MapKind::Hurewicz: return "Hurewicz";
        case MapKind::RPQuotient: return "RPQuotient";
        case MapKind::CellMap: return "CellMap";
    }
    return {};
}

namespace {

int partner_bound(const std::vector<const SpectrumAst*>& finite) {
    int top = 0;
    for (const auto* p : finite) {
        auto c = cells_of(*p);
        if (!c.empty()) top = std::max(top, c.back());
    }
    return top + 1;
}

std::vector<int> cells_with_partners(const SpectrumAst& a, const std::vector<const SpectrumAst*>& others) {
    if (!is_unbounded(a)) return cells_of(a);
    std::vector<const SpectrumAst*> finite;
    for (const auto* o : others)
        if (!is_unbounded(*o)) finite.push_back(o);
    return cells_of(a, partner_bound(finite));
}

// Shift k with small ⊆ big + k (or small + k ⊆ big when `into_big` is false), with the
// subcomplex placed at the bottom of the bigger complex and quotients at the top.
std::optional<int> pick_shift(const std::vector<int>& small, const std::vector<int>& big, bool inclusion,
                              bool prefer_zero) {
    std::vector<int> ks;
    for (int b : big) {
        int k = inclusion ? small.front() - b : b - small.front();
        auto sub = inclusion ? shifted(small, -k) : shifted(small, k);
        if (remove_multiset(big, sub) && std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
    }
    if (ks.empty()) return std::nullopt;
    if (prefer_zero && std::find(ks.begin(), ks.end(), 0) != ks.end()) return 0;
    auto good = [&](int k) {
        if (inclusion) return std::binary_search(small.begin(), small.end(), big.front() + k);
        return small.back() + k == big.back();
    };
    std::stable_sort(ks.begin(), ks.end(), [&](int a, int b) {
        if (good(a) != good(b)) return good(a);
        if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
        return a > b;
    });
    return ks.front();
}

}  // namespace

MapAst parse_map_name(std::string_view text) {
    std::string_view src_text;
    std::string_view tgt_text;
    if (auto pos = text.find("__"); pos != std::string_view::npos) {
        src_text = text.substr(0, pos);
        tgt_text = text.substr(pos + 2);
        if (tgt_text.find("__") != std::string_view::npos)
            fail(Errc::Malformed, fmt::format("'{}' has more than two components", text));
    } else if (auto to = text.find("_to_"); to != std::string_view::npos) {
        src_text = text.substr(0, to);
        tgt_text = text.substr(to + 4);
    } else {
        fail(Errc::Malformed, fmt::format("'{}' has no '__' separator", text));
    }
    MapAst m;
    bool boundary = tgt_text.starts_with("Q_");
    if (boundary) tgt_text.remove_prefix(2);
    if (auto by = tgt_text.rfind("_by_"); by != std::string_view::npos) {
        auto kw = tgt_text.substr(by + 4);
        if (!keyword_degree(kw)) fail(Errc::UnknownKeyword, fmt::format("'{}' in '{}' is not a keyword", kw, text));
        m.by_keyword = std::string(kw);
        tgt_text = tgt_text.substr(0, by);
    }
    m.source = parse_spectrum_name(src_text);
    m.target = parse_spectrum_name(tgt_text);
    const auto& X = m.source;
    const auto& Y = m.target;

    auto inconsistent = [&]() {
        fail(Errc::InconsistentCells, fmt::format("no suspension makes the cells of '{}' fit", text));
    };

    if (is_tmf_side(Y)) {
        m.kind = MapKind::Hurewicz;
        return m;
    }
    if (!has_finite_cells(X)) inconsistent();
    auto xc = cells_with_partners(X, {&Y});
    auto yc = cells_with_partners(Y, {&X});

    if (m.by_keyword) {
        if (boundary) fail(Errc::Malformed, fmt::format("'{}' mixes Q_ and by_", text));
        m.kind = MapKind::ByCell;
        m.suspension = xc.front() - yc.back() - *keyword_degree(*m.by_keyword);
        return m;
    }
    if (boundary) {
        auto kq = pick_shift(xc, yc, false, literal_dims(X) && literal_dims(Y));
        if (!kq || xc.size() >= yc.size()) inconsistent();
        m.kind = MapKind::Boundary;
        m.suspension = 1 - *kq;
        m.landing_cells = *remove_multiset(yc, shifted(xc, *kq));
        return m;
    }
    if (X.kind == Kind::RP && Y.kind == Kind::Sphere && Y.lo == 0 && X.lo == 1) {
        m.kind = MapKind::TruncatedKahnPriddy;
        return m;
    }
    if (X.kind == Kind::RP && Y.kind == Kind::RP) {
        int n = X.lo, l = X.hi, p = Y.lo, q = Y.hi;
        if (p < q && q == n - 1 && n < l) {
            m.kind = MapKind::RPQuotient;
            m.suspension = 1;
            m.landing_cells = yc;
            return m;
        }
    }
    bool prefer_zero = literal_dims(X) || literal_dims(Y);
    if (xc.size() < yc.size()) {
        auto k = pick_shift(xc, yc, true, prefer_zero);
        if (!k) inconsistent();
        m.kind = MapKind::Inclusion;
        m.suspension = *k;
    } else if (xc.size() > yc.size()) {
        auto k = pick_shift(yc, xc, false, prefer_zero);
        if (!k) inconsistent();
        m.kind = MapKind::Quotient;
        m.suspension = *k;
    } else {
        m.kind = MapKind::CellMap;
        m.suspension = xc.front() - yc.front();
    }
    return m;
}

std::string print(const MapAst& m) {
    std::string tgt = print(m.target);
    if (m.by_keyword) tgt += "_by_" + *m.by_keyword;
    if (m.kind == MapKind::Boundary) tgt = "Q_" + tgt;
    return print(m.source) + "__" + tgt;
}

namespace {

struct UnionFit {
    int da;
    int db;
};

// Solutions of whole = (a - da) ⊎ (b + db), smallest shifts first.
std::optional<UnionFit> fit_union(const std::vector<int>& whole, const std::vector<int>& a, const std::vector<int>& b) {
    if (whole.size() != a.size() + b.size() || a.empty() || b.empty()) return std::nullopt;
    std::vector<UnionFit> fits;
    for (int w : whole) {
        int da = a.front() - w;
        auto rest = remove_multiset(whole, shifted(a, -da));
        if (!rest || rest->empty()) continue;
        int db = rest->front() - b.front();
        if (*rest == shifted(b, db)) fits.push_back({da, db});
    }
    if (fits.empty()) return std::nullopt;
    std::stable_sort(fits.begin(), fits.end(), [](const UnionFit& x, const UnionFit& y) {
        if (std::abs(x.da) != std::abs(y.da)) return std::abs(x.da) < std::abs(y.da);
        return std::abs(x.db) < std::abs(y.db);
    });
    return fits.front();
}

std::array<std::vector<int>, 3> cofseq_cells(const CofseqAst& c) {
    std::array<std::vector<int>, 3> out;
    for (int i = 0; i < 3; ++i) {
        std::vector<const SpectrumAst*> others{&c.terms[(i + 1) % 3], &c.terms[(i + 2) % 3]};
        if (!has_finite_cells(c.terms[i])) fail(Errc::Unsupported, "cofiber sequence through tmf");
        out[i] = cells_with_partners(c.terms[i], others);
    }
    return out;
}

}  // namespace

CofseqAst parse_cofseq_name(std::string_view text) {
    auto parts = std::vector<std::string_view>{};
    size_t start = 0;
    for (;;) {
        size_t pos = text.find("__", start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 2;
    }
    if (parts.size() != 3) fail(Errc::Malformed, fmt::format("'{}' is not of the form X__Y__Z", text));
    CofseqAst c;
    for (int i = 0; i < 3; ++i) c.terms[i] = parse_spectrum_name(parts[i]);
    auto cells = cofseq_cells(c);
    // Y middle: Y = (X - df) + (Z + dg); Z middle: Z = (Y - dg) + (X + dh); X middle: X = (Z - dh) + (Y + df).
    for (int mid : {1, 2, 0}) {
        int a = (mid + 2) % 3;
        int b = (mid + 1) % 3;
        auto fit = fit_union(cells[mid], cells[a], cells[b]);
        if (!fit) continue;
        c.middle = mid;
        c.drops[a] = fit->da;
        c.drops[mid] = fit->db;
        c.drops[b] = 1 - fit->da - fit->db;
        return c;
    }
    fail(Errc::InconsistentCells, fmt::format("no term of '{}' is the union of the other two", text));
}

CofseqRef parse_cofseq_ref(std::string_view text) {
    CofseqRef ref;
    if (auto colon = text.find(':'); colon != std::string_view::npos) {
        auto leg = text.substr(colon + 1);
        if (leg != "0" && leg != "1" && leg != "2")
            fail(Errc::Malformed, fmt::format("leg '{}' in '{}' is not 0, 1 or 2", leg, text));
        ref.leg = leg[0] - '0';
        text = text.substr(0, colon);
    }
    ref.seq = parse_cofseq_name(text);
    return ref;
}

std::string print(const CofseqAst& c) {
    return print(c.terms[0]) + "__" + print(c.terms[1]) + "__" + print(c.terms[2]);
}

bool cells_consistent(const CofseqAst& c) {
    if (c.drops[0] + c.drops[1] + c.drops[2] != 1) return false;
    auto cells = cofseq_cells(c);
    int mid = c.middle;
    int a = (mid + 2) % 3;
    int b = (mid + 1) % 3;
    auto rest = remove_multiset(cells[mid], shifted(cells[a], -c.drops[a]));
    return rest && *rest == shifted(cells[b], c.drops[mid]);
}

}  // namespace sseq
