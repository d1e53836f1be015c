#include "leibniz_toy.hpp"

#include <algorithm>

namespace sseq::testing {

namespace {

constexpr std::array<BiDegree, 3> kDeg{BiDegree{0, 1}, BiDegree{1, 1}, BiDegree{2, 3}};

BiDegree degree(const Exps& e) {
    BiDegree d{0, 0};
    for (int g = 0; g < 3; ++g) d = d + BiDegree{kDeg[g].stem * e[g], kDeg[g].s * e[g]};
    return d;
}

}  // namespace

LeibnizToy make_leibniz_toy(int top_t) {
    LeibnizToy toy;
    toy.top = top_t;
    auto sp = std::make_shared<SpectrumData>();
    sp->name = "R";
    sp->generators = {{0, "a", kDeg[0]}, {1, "b", kDeg[1]}, {2, "c", kDeg[2]}};
    for (int k = 0; 5 * k <= top_t; ++k)
        for (int j = 0; 5 * k + 2 * j <= top_t; ++j)
            for (int i = 0; 5 * k + 2 * j + i <= top_t; ++i) toy.monomials.push_back({i, j, k});
    std::stable_sort(toy.monomials.begin(), toy.monomials.end(),
                     [](const Exps& x, const Exps& y) { return degree(x) < degree(y); });
    std::map<BiDegree, int> next;
    for (const auto& e : toy.monomials) {
        Monomial m;
        for (int g = 0; g < 3; ++g)
            if (e[g] > 0) m.ring.push_back({g, e[g]});
        BiDegree d = degree(e);
        int i = next[d]++;
        sp->basis_rows.push_back({static_cast<int>(sp->basis_rows.size()), m, d, {}});
        toy.index[e] = BasisVec{d, {i}};
    }
    sp->max_t = top_t;
    sp->finalize();
    toy.ring = sp;
    return toy;
}

BasisVec LeibnizToy::derivation(const Exps& e) const {
    BasisVec out{diff_target(degree(e), 2), {}};
    auto add = [&](const Exps& m) {
        const auto& v = index.at(m).idx;
        out.idx = xor_sets(out.idx, v);
    };
    if (e[1] % 2 == 1) add({e[0] + 3, e[1] - 1, e[2]});
    if (e[2] % 2 == 1) add({e[0] + 4, e[1] + 1, e[2] - 1});
    return out;
}

}  // namespace sseq::testing
