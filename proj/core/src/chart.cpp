#include "sseq/chart.hpp"

#include <algorithm>
#include <vector>

#include <fmt/format.h>

#include "sseq/csv.hpp"
#include "sseq/error.hpp"

namespace sseq {

namespace {

std::optional<std::string> monomial_name(const SpectrumData& sp, const Monomial& m) {
    std::string out;
    auto name_of = [&](int id) -> std::optional<std::string> {
        for (const auto& g : sp.generators)
            if (g.id == id) return g.name;
        return std::nullopt;
    };
    const SpectrumData& ring = sp.ring_ctx();
    for (const auto& [id, e] : m.ring) {
        std::optional<std::string> n;
        for (const auto& g : ring.generators)
            if (g.id == id) n = g.name;
        if (!n) return std::nullopt;
        out += *n;
        if (e > 1) out += fmt::format("^{{{}}}", e);
    }
    if (m.module_gen) {
        auto n = name_of(*m.module_gen);
        if (!n) return std::nullopt;
        out += *n;
    }
    if (out.empty()) return std::string("1");
    return out;
}

std::string rstrip(std::string s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

struct Line {
    std::string element;
    std::string dr;
    std::string value;
};

std::vector<Line> lines_at(const SsState& st, const SpectrumData* sp, const Loc& loc, ChartSpec::Naming naming) {
    std::vector<Line> out;
    for (const auto& e : st.entries(loc)) {
        auto info = decode_level(e.level);
        Line line{element_label(st, sp, loc, e.base, naming), {}, {}};
        switch (info.kind) {
            case LevelInfo::Kind::Permanent: line.value = "Permanent"; break;
            case LevelInfo::Kind::Supports:
                if (info.r >= kMaxLength) continue;
                line.dr = fmt::format("d_{{{}}}", info.r);
                line.value = e.diff ? element_label(st, sp, st.target(loc, info.r), *e.diff, naming) : "?";
                break;
            case LevelInfo::Kind::Hit:
                if (info.r == 0) continue;
                line.dr = fmt::format("d_{{{}}}^{{-1}}", info.r);
                line.value = e.diff ? element_label(st, sp, st.source(loc, info.r), *e.diff, naming) : "?";
                break;
        }
        out.push_back(std::move(line));
    }
    return out;
}

std::string s_label(int lo, int hi) { return lo == hi ? std::to_string(lo) : fmt::format("{}-{}", lo, hi); }

std::string render_text(const SsState& st, const SpectrumData* sp, const ChartSpec& spec) {
    std::string out;
    for (int stem = spec.stem_lo; stem <= spec.stem_hi; ++stem) {
        if (stem != spec.stem_lo) out += '\n';
        out += fmt::format("{} stem {}\n", spec.spectrum, stem);
        out += "s | Elements | d_r | value\n";
        int empty_hi = -1;
        auto close_empty = [&](int lo) {
            if (empty_hi >= 0) out += rstrip(fmt::format("{} |  |  | ", s_label(lo, empty_hi))) + '\n';
            empty_hi = -1;
        };
        for (int s = spec.s_hi; s >= spec.s_lo; --s) {
            auto lines = lines_at(st, sp, Loc{0, {stem, s}}, spec.naming);
            if (lines.empty()) {
                if (empty_hi < 0) empty_hi = s;
                continue;
            }
            close_empty(s + 1);
            for (size_t i = 0; i < lines.size(); ++i) {
                const auto& l = lines[i];
                out += rstrip(fmt::format("{} | {} | {} | {}", i == 0 ? std::to_string(s) : std::string(), l.element,
                                          l.dr, l.value)) +
                       '\n';
            }
        }
        close_empty(spec.s_lo);
    }
    return out;
}

std::string render_csv(const SsState& st, const SpectrumData* sp, const ChartSpec& spec) {
    std::string out = "stem,s,element,d_r,value\n";
    for (int stem = spec.stem_lo; stem <= spec.stem_hi; ++stem)
        for (int s = spec.s_hi; s >= spec.s_lo; --s)
            for (const auto& l : lines_at(st, sp, Loc{0, {stem, s}}, spec.naming))
                out += csv_line({std::to_string(stem), std::to_string(s), l.element, l.dr, l.value});
    return out;
}

std::string render_svg(const SsState& st, const ChartSpec& spec) {
    constexpr int cell = 24;
    int w = (spec.stem_hi - spec.stem_lo + 2) * cell;
    int h = (spec.s_hi - spec.s_lo + 2) * cell;
    auto px = [&](BiDegree d, int k, int n) {
        double x = (d.stem - spec.stem_lo + 1) * cell + (n > 1 ? (k - (n - 1) / 2.0) * 5.0 : 0.0);
        double y = h - (d.s - spec.s_lo + 1) * cell;
        return std::pair{x, y};
    };
    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n", w, h, w, h);
    for (int stem = spec.stem_lo; stem <= spec.stem_hi; ++stem) {
        double x = px({stem, spec.s_lo}, 0, 1).first;
        out += fmt::format("<text x=\"{:.1f}\" y=\"{}\" font-size=\"8\" text-anchor=\"middle\">{}</text>\n", x, h - 4, stem);
    }
    for (int stem = spec.stem_lo; stem <= spec.stem_hi; ++stem) {
        for (int s = spec.s_lo; s <= spec.s_hi; ++s) {
            Loc loc{0, {stem, s}};
            int n = st.dim(loc);
            for (int k = 0; k < n; ++k) {
                auto [x, y] = px(loc.deg, k, n);
                out += fmt::format("<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"2\"/>\n", x, y);
            }
            for (const auto& e : st.entries(loc)) {
                auto info = decode_level(e.level);
                if (info.kind != LevelInfo::Kind::Supports || !e.diff || e.diff->empty() || info.r >= kMaxLength) continue;
                Loc tgt = st.target(loc, info.r);
                auto [x0, y0] = px(loc.deg, e.base.front(), n);
                auto [x1, y1] = px(tgt.deg, e.diff->front(), st.dim(tgt));
                out += fmt::format(
                    "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"blue\" data-r=\"{}\"/>\n", x0,
                    y0, x1, y1, info.r);
            }
        }
    }
    return out + "</svg>\n";
}

}  // namespace

std::string element_label(const SsState& state, const SpectrumData* spectrum, const Loc& loc, const IndexSet& v,
                          ChartSpec::Naming naming) {
    auto fallback = [&] {
        return fmt::format("{} ({},{}) [{}]", state.name(), loc.deg.stem, loc.deg.s, format_indices(v));
    };
    if (naming == ChartSpec::Naming::Indices || !spectrum || v.empty()) return fallback();
    std::string out;
    for (int i : v) {
        if (i >= spectrum->dim(loc.deg)) return fallback();
        auto n = monomial_name(*spectrum, spectrum->basis_monomial(loc.deg, i));
        if (!n) return fallback();
        if (!out.empty()) out += '+';
        out += *n;
    }
    return out;
}

std::string render_chart(const SsState& state, const SpectrumData* spectrum, const ChartSpec& spec) {
    if (spec.stem_lo > spec.stem_hi || spec.s_lo > spec.s_hi)
        fail(Errc::RangeEmpty, fmt::format("empty range stems [{},{}] s [{},{}]", spec.stem_lo, spec.stem_hi, spec.s_lo,
                                           spec.s_hi));
    bool any = false;
    for (const Loc& l : state.locations())
        if (l.comp == 0 && l.deg.stem >= spec.stem_lo && l.deg.stem <= spec.stem_hi && l.deg.s >= spec.s_lo &&
            l.deg.s <= spec.s_hi)
            any = true;
    if (!any)
        fail(Errc::RangeEmpty, fmt::format("no {} data in stems [{},{}] s [{},{}]", state.name(), spec.stem_lo,
                                           spec.stem_hi, spec.s_lo, spec.s_hi));
    switch (spec.format) {
        case ChartSpec::Format::Text: return render_text(state, spectrum, spec);
        case ChartSpec::Format::Csv: return render_csv(state, spectrum, spec);
        case ChartSpec::Format::Svg: return render_svg(state, spec);
    }
    return {};
}

}  // namespace sseq
