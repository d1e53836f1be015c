#include <filesystem>
#include <random>

#include <benchmark/benchmark.h>

#include "sseq/chart.hpp"
#include "sseq/deduce.hpp"
#include "sseq/formats.hpp"
#include "sseq/proofs.hpp"
#include "sseq/ss.hpp"

namespace fs = std::filesystem;
using namespace sseq;

namespace {

const fs::path kFixtures{SSEQ_FIXTURES};

std::vector<Element> random_monomials(const SpectrumData& sp, int count) {
    std::mt19937_64 rng(7);
    std::vector<Element> out;
    auto degs = sp.degrees();
    for (int i = 0; i < count; ++i) {
        auto d = degs[rng() % degs.size()];
        out.push_back(Element{{sp.basis_monomial(d, static_cast<int>(rng() % static_cast<unsigned>(sp.dim(d))))}});
    }
    return out;
}

void BM_parse_ss(benchmark::State& state) {
    std::string text = read_file(kFixtures / "chart" / "S0_AdamsE2_ss.csv");
    for (auto _ : state) benchmark::DoNotOptimize(parse_ss(text));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_parse_ss);

void BM_normal_form(benchmark::State& state) {
    Dataset data(kFixtures / "data");
    auto c2 = data.spectrum("C2");
    auto s0 = data.spectrum("S0");
    auto xs = random_monomials(*s0, 64);
    auto ys = random_monomials(*c2, 64);
    size_t i = 0;
    for (auto _ : state) {
        auto& x = xs[i % xs.size()];
        auto& y = ys[(i * 7) % ys.size()];
        try {
            benchmark::DoNotOptimize(mul(x, y, *c2));
        } catch (const Error&) {
        }
        ++i;
    }
}
BENCHMARK(BM_normal_form);

void BM_build_staircase(benchmark::State& state) {
    Dataset data(kFixtures / "chart");
    auto sp = data.spectrum("S0");
    auto rows = load_ss(*data.ss_path("S0"));
    for (auto _ : state) benchmark::DoNotOptimize(build(SsState::adams(*sp), rows, BuildOptions{false, true}));
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * rows.size()));
}
BENCHMARK(BM_build_staircase);

void BM_render_chart(benchmark::State& state) {
    Dataset data(kFixtures / "chart");
    auto sp = data.spectrum("S0");
    auto built = build(SsState::adams(*sp), load_ss(*data.ss_path("S0")), BuildOptions{false, true});
    ChartSpec spec{"S0", 122, 127, 0, 25};
    for (auto _ : state) benchmark::DoNotOptimize(render_chart(built.state, sp.get(), spec));
}
BENCHMARK(BM_render_chart);

World toy_world() {
    Dataset data(kFixtures / "toy");
    World w;
    for (std::string n : {"S0", "M"}) {
        auto sp = data.spectrum(n);
        w.spectra[n] = sp;
        w.states.emplace(n, build(SsState::adams(*sp), load_ss(*data.ss_path(n))).state);
    }
    return w;
}

void BM_propagate(benchmark::State& state) {
    World base = toy_world();
    for (auto _ : state) {
        World w = base;
        benchmark::DoNotOptimize(propagate(w, Hypothesis{"M", Loc{0, {10, 2}}, {0}, 2, {0}}));
    }
}
BENCHMARK(BM_propagate);

void BM_deduce(benchmark::State& state) {
    World w = toy_world();
    for (auto _ : state) benchmark::DoNotOptimize(deduce(w, "M", Loc{0, {10, 2}}, {0}, 2));
}
BENCHMARK(BM_deduce);

void BM_proof_forest(benchmark::State& state) {
    auto rows = load_proofs(std::vector<fs::path>{kFixtures / "tables" / "proofs.csv"});
    for (auto _ : state) benchmark::DoNotOptimize(build_forest(rows));
}
BENCHMARK(BM_proof_forest);

}  // namespace
BENCHMARK_MAIN();
