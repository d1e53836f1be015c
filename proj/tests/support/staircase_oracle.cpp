#include "staircase_oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

#include <fmt/format.h>

namespace sseq::testing {

namespace {

using Bits = uint64_t;

Bits bits_of(const IndexSet& v) {
    Bits b = 0;
    for (int i : v) b ^= Bits{1} << i;
    return b;
}

struct Line {
    Bits base = 0;
    int level = 0;
    std::optional<Bits> diff;
};

// Level kinds decoded by hand: 1..4999 hit, 9000 permanent, 9001..10000 supports.
bool hit(int level) { return level >= 1 && level < 5000; }
bool supports(int level) { return level > 9000 && level <= 10000; }
int length(int level) { return hit(level) ? level : 10000 - level; }

struct Column {
    int dim = 0;
    std::vector<Line> lines;  // ascending level

    // Subset of lines whose bases sum to v, or nullopt. Uncovered directions are ignored here.
    std::optional<Bits> express(Bits v, auto keep) const {
        int n = static_cast<int>(lines.size());
        for (Bits mask = 0; mask < (Bits{1} << n); ++mask) {
            Bits sum = 0;
            bool allowed = true;
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1) {
                    if (!keep(lines[i])) { allowed = false; break; }
                    sum ^= lines[i].base;
                }
            if (allowed && sum == v) return mask;
        }
        return std::nullopt;
    }
    bool in_B(Bits v, int r) const {
        return express(v, [&](const Line& l) { return hit(l.level) && l.level <= r; }).has_value();
    }
    bool in_Z(Bits v, int r) const {
        return express(v, [&](const Line& l) { return !supports(l.level) || length(l.level) > r; }).has_value();
    }
    // Highest level needed to write v; 10000 - r_min + 1 when a direction outside every line is needed.
    int top(Bits v, int r_min) const {
        auto mask = express(v, [](const Line&) { return true; });
        if (!mask) return 10000 - r_min + 1;
        int best = -1;
        for (size_t i = 0; i < lines.size(); ++i)
            if (*mask >> i & 1) best = std::max(best, lines[i].level);
        return best;
    }
};

bool valid(const IndexSet& v, int dim) {
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 0 || v[i] >= dim) return false;
        if (i > 0 && v[i] <= v[i - 1]) return false;
    }
    return true;
}

}  // namespace

std::vector<std::string> staircase_oracle(std::span<const SsRow> rows, const std::map<BiDegree, int>& dims,
                                          int r_min) {
    std::vector<std::string> out;
    auto dim_at = [&](BiDegree d) {
        auto it = dims.find(d);
        return it == dims.end() ? 0 : it->second;
    };

    std::vector<size_t> order(rows.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return std::tuple{rows[a].stem, rows[a].s, rows[a].level} < std::tuple{rows[b].stem, rows[b].s, rows[b].level};
    });

    std::map<BiDegree, Column> cols;
    for (const auto& [d, n] : dims) cols[d].dim = n;

    // Row-local rules first; only rows that pass them enter the columns.
    for (size_t i : order) {
        const auto& row = rows[i];
        BiDegree at{row.stem, row.s};
        auto where = fmt::format("row ({},{}) level {}", row.stem, row.s, row.level);
        bool legal = hit(row.level) || row.level == 9000 || supports(row.level);
        if (!legal) { out.push_back(where + ": illegal level"); continue; }
        if (row.level != 9000 && length(row.level) < r_min) { out.push_back(where + ": too short"); continue; }
        if (row.level == 9000 && row.diff && !row.diff->empty()) { out.push_back(where + ": permanent with value"); continue; }
        if (row.base.empty() || !valid(row.base, dim_at(at))) { out.push_back(where + ": bad base"); continue; }
        auto& col = cols[at];
        if (col.express(bits_of(row.base), [](const Line&) { return true; })) {
            out.push_back(where + ": dependent base");
            continue;
        }
        std::optional<Bits> diff;
        if (row.diff && row.level != 9000) {
            BiDegree other = hit(row.level) ? BiDegree{row.stem + 1, row.s - row.level}
                                            : BiDegree{row.stem - 1, row.s + length(row.level)};
            if (!valid(*row.diff, dim_at(other))) { out.push_back(where + ": bad diff"); continue; }
            diff = bits_of(*row.diff);
        }
        col.lines.push_back({bits_of(row.base), row.level, diff});
    }

    for (const auto& [at, col] : cols) {
        for (const auto& line : col.lines) {
            if (!line.diff) continue;
            int r = length(line.level);
            auto where = fmt::format("({},{}) level {}", at.stem, at.s, line.level);
            if (supports(line.level)) {
                BiDegree td{at.stem - 1, at.s + r};
                const Column& tc = cols[td];
                Bits y = *line.diff;
                if (tc.in_B(y, r - 1)) { out.push_back(where + ": value in B_{r-1}"); continue; }
                auto mask = tc.express(y, [&](const Line& l) { return hit(l.level) && l.level <= r; });
                if (!mask) { out.push_back(where + ": value outside B_r"); continue; }
                Bits src = 0;
                bool known = true;
                for (size_t k = 0; k < tc.lines.size(); ++k) {
                    if (!(*mask >> k & 1) || tc.lines[k].level != r) continue;
                    if (!tc.lines[k].diff) known = false;
                    else src ^= *tc.lines[k].diff;
                }
                if (known && !col.in_Z(src ^ line.base, r)) out.push_back(where + ": source coset mismatch");
            } else {
                BiDegree sd{at.stem + 1, at.s - r};
                const Column& sc = cols[sd];
                Bits x = *line.diff;
                if (sc.top(x, r_min) != 10000 - r) { out.push_back(where + ": source not in Z_{r-1} minus Z_r"); continue; }
                auto mask = sc.express(x, [](const Line&) { return true; });
                Bits value = 0;
                bool known = true;
                for (size_t k = 0; k < sc.lines.size(); ++k) {
                    if (!(*mask >> k & 1) || sc.lines[k].level != 10000 - r) continue;
                    if (!sc.lines[k].diff) known = false;
                    else value ^= *sc.lines[k].diff;
                }
                if (known && !col.in_B(value ^ line.base, r - 1)) out.push_back(where + ": target coset mismatch");
            }
        }
    }
    return out;
}

}  // namespace sseq::testing
