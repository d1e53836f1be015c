#include "doctest.h"
#include "fixture_dir.hpp"
#include "sseq/deduce.hpp"
#include "sseq/naming.hpp"
#include "sseq/ss.hpp"

using namespace sseq;
using sseq::testing::kFixtureDir;

namespace {

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return Errc::Malformed;
}

// x at (15,0) may support a d_3 into the 2-dim (14,3), which is also hit from (15,1) by a d_2.
SsState small() { return SsState::adams("S0", {{{15, 0}, 1}, {{15, 1}, 1}, {{14, 3}, 2}}); }

}  // namespace

TEST_CASE("level codes") {
    using K = LevelInfo::Kind;
    CHECK(decode_level(9998) == LevelInfo{K::Supports, 2});
    CHECK(decode_level(2) == LevelInfo{K::Hit, 2});
    CHECK(decode_level(9000) == LevelInfo{K::Permanent, 0});
    CHECK(decode_level(10000) == LevelInfo{K::Supports, 0});
    CHECK(encode_level({K::Supports, 12}) == 9988);
    CHECK(code_of([] { decode_level(5000); }) == Errc::SentinelConflict);
    CHECK(code_of([] { decode_level(0); }) == Errc::SentinelConflict);
}

TEST_CASE("a differential is mirrored at its target") {
    SsState st = SsState::adams("S0", {{{15, 1}, 1}, {{14, 3}, 1}});
    Loc src{0, {15, 1}}, tgt{0, {14, 3}};
    CHECK(st.target(src, 2) == tgt);
    CHECK(st.source(tgt, 2) == src);
    st.insert_differential(src, {0}, 2, IndexSet{0});
    REQUIRE(st.entries(src).size() == 1);
    CHECK(st.entries(src)[0].level == 9998);
    CHECK(st.entries(src)[0].diff == std::optional<IndexSet>{IndexSet{0}});
    REQUIRE(st.entries(tgt).size() == 1);
    CHECK(st.entries(tgt)[0].level == 2);
    CHECK(st.entries(tgt)[0].diff == std::optional<IndexSet>{IndexSet{0}});
    SsState again = st;
    again.insert_differential(src, {0}, 2, IndexSet{0});
    CHECK(again == st);
    CHECK(st.check_consistency().ok());
}

TEST_CASE("values of d_r are compared modulo B_{r-1}") {
    SsState st = small();
    Loc x{0, {15, 0}};
    st.insert_differential(x, {0}, 3, IndexSet{0});
    SsState before = st;
    CHECK(code_of([&] { st.insert_differential(x, {0}, 3, IndexSet{1}); }) == Errc::Contradiction);
    CHECK(st == before);

    SsState wider = small();
    wider.insert_differential({0, {15, 1}}, {0}, 2, IndexSet{0, 1});
    wider.insert_differential(x, {0}, 3, IndexSet{0});
    wider.insert_differential(x, {0}, 3, IndexSet{1});
    CHECK(wider.check_consistency().ok());
    CHECK(wider.B({0, {14, 3}}, 3).rank() == 2);
}

TEST_CASE("a value in B_{r-1} is the zero coset") {
    SsState st = small();
    Loc x{0, {15, 0}};
    st.insert_differential({0, {15, 1}}, {0}, 2, IndexSet{0});
    st.insert_differential(x, {0}, 3, IndexSet{0});
    CHECK(st.known_diff(x, {0}, 3) == std::optional<IndexSet>{IndexSet{}});
    CHECK(st.is_survivor(x, {0}, 4));
    std::vector<SsRow> rows{{15, 1, {0}, IndexSet{0}, 9998}, {14, 3, {0}, IndexSet{0}, 2}, {15, 0, {0}, IndexSet{0}, 9997}};
    CHECK_FALSE(build(small(), rows, BuildOptions{false, true}).report.ok());
}

TEST_CASE("permanent cycles support nothing") {
    SsState st = small();
    st.insert_permanent({0, {15, 0}}, {0});
    CHECK(code_of([&] { st.insert_differential({0, {15, 0}}, {0}, 3, IndexSet{1}); }) == Errc::Contradiction);
    st.insert_differential({0, {15, 0}}, {0}, 3, IndexSet{});
    CHECK(st.check_consistency().ok());
}

TEST_CASE("known values and survivors") {
    SsState st = small();
    Loc x{0, {15, 0}};
    CHECK_FALSE(st.known_diff(x, {0}, 2).has_value());
    st.insert_differential(x, {0}, 3, IndexSet{1});
    CHECK(st.known_diff(x, {0}, 2) == std::optional<IndexSet>{IndexSet{}});
    CHECK(st.known_diff(x, {0}, 3) == std::optional<IndexSet>{IndexSet{1}});
    CHECK_FALSE(st.is_survivor(x, {0}, 4));
    CHECK(code_of([&] { (void)st.known_diff(x, {0}, 4); }) == Errc::NotASurvivor);
}

TEST_CASE("vectors outside the bidegree") {
    SsState st = small();
    CHECK(code_of([&] { st.insert_differential({0, {15, 0}}, {0}, 3, IndexSet{2}); }) == Errc::DegreeMismatch);
}

TEST_CASE("degree reasons") {
    SsState st = small();
    CHECK(degree_reason_trivial(st, {0, {15, 0}}, {0}, 2));
    CHECK_FALSE(degree_reason_trivial(st, {0, {15, 1}}, {0}, 2));
    SsState full = SsState::adams("S0", {{{15, 0}, 1}, {{15, 1}, 1}, {{14, 3}, 1}});
    full.insert_differential({0, {15, 1}}, {0}, 2, IndexSet{0});
    CHECK(degree_reason_trivial(full, {0, {15, 0}}, {0}, 3));
}

TEST_CASE("the stem 123 staircase") {
    auto rows = load_ss(kFixtureDir / "ss" / "S0_stem123_ss.csv");
    auto built = build(SsState::adams("S0", dims_from_rows(rows)), rows, BuildOptions{false, true});
    CHECK(built.report.ok());
    const SsState& st = built.state;
    Loc at{0, {123, 11}};
    CHECK(st.B(at, 2) == st.B(at, 4));
    CHECK(st.B(at, 5) == st.B(at, 6));
    CHECK(st.B(at, 4).rank() == 1);
    CHECK(st.B(at, 4).contains(IndexSet{4}));
    CHECK(st.B(at, 5).contains(IndexSet{3}));
    CHECK(st.Z(at, 3) == st.Z(at, 6));
    CHECK(st.Z(at, 6).contains(IndexSet{0, 1, 2}));
    CHECK_FALSE(st.Z(at, 6).contains(IndexSet{0, 1}));
    for (int r = 2; r < 12; ++r) {
        CHECK(st.Z(at, r).contains(st.B(at, r)));
        CHECK(st.B(at, r + 1).contains(st.B(at, r)));
        CHECK(st.Z(at, r).contains(st.Z(at, r + 1)));
    }
}

TEST_CASE("rebuilding from dumped rows is a fixed point") {
    auto rows = load_ss(kFixtureDir / "ss" / "S0_stem123_ss.csv");
    auto empty = SsState::adams("S0", dims_from_rows(rows));
    auto first = build(empty, rows);
    auto dumped = first.state.dump();
    auto second = build(empty, dumped);
    CHECK(second.report.ok());
    CHECK(second.state == first.state);
    CHECK(serialize_ss(second.state.dump()) == serialize_ss(dumped));
}

TEST_CASE("empty tables and bad rows") {
    auto none = build(SsState::adams("S0", {}), std::vector<SsRow>{});
    CHECK(none.report.ok());
    std::vector<SsRow> rows{{15, 1, {0}, IndexSet{0}, 9998}, {15, 1, {0}, std::nullopt, 5000}};
    auto bad = build(SsState::adams("S0", {{{15, 1}, 1}, {{14, 3}, 1}}), rows);
    CHECK(bad.report.violations.size() == 1);
}

TEST_CASE("basis d2 column is cross-checked") {
    auto ring = std::make_shared<SpectrumData>();
    ring->name = "S0";
    ring->generators = {{0, "a", {15, 1}}, {1, "b", {14, 3}}};
    ring->basis_rows = {{0, Monomial{{{0, 1}}, {}}, {15, 1}, IndexSet{}}, {0, Monomial{{{1, 1}}, {}}, {14, 3}, {}}};
    ring->max_t = 17;
    ring->finalize();
    std::vector<SsRow> rows{{15, 1, {0}, IndexSet{0}, 9998}};
    auto res = build(SsState::adams(*ring), rows, {}, ring.get());
    REQUIRE(res.report.violations.size() == 1);
    CHECK(res.report.violations[0].message.find("basis d2") != std::string::npos);
}

TEST_CASE("extension staircases") {
    auto seq = parse_cofseq_name("Cnu__CW_nu_eta_2__C2");
    std::array<std::map<BiDegree, int>, 3> dims;
    dims[1][{15, 2}] = 1;
    dims[2][{9, 4}] = 1;
    SsState cs("Cnu__CW_nu_eta_2__C2", SsState::Geometry{3, 0, seq.drops}, dims);
    CHECK(cs.target({1, {15, 2}}, 2) == Loc{2, {9, 4}});
    insert_extension(cs, 1, {15, 2}, {0}, 2, IndexSet{0});
    SsState again = cs;
    insert_extension(again, 1, {15, 2}, {0}, 2, IndexSet{0});
    CHECK(again == cs);
    REQUIRE(cs.entries({2, {9, 4}}).size() == 1);
    CHECK(cs.entries({2, {9, 4}})[0].level == 2);
    CHECK(code_of([&] { insert_extension(cs, 1, {15, 2}, {0}, 2, IndexSet{1}); }) == Errc::ShiftMismatch);
    CHECK(code_of([&] { insert_extension(cs, 3, {15, 2}, {0}, 2, IndexSet{0}); }) == Errc::OutOfRange);
}

TEST_CASE("r = 0 extensions round-trip through the cofseq format") {
    auto rows = load_cofseq(kFixtureDir / "tables" / "cofseq_S0__C2__S0.csv");
    auto seq = parse_cofseq_name("S0__C2__S0");
    SsState empty("S0__C2__S0", SsState::Geometry{3, 0, seq.drops}, dims_from_cofseq_rows(rows, seq.drops));
    auto built = build_cofseq(empty, rows);
    CHECK(built.report.ok());
    const auto& es = built.state.entries({1, {118, 19}});
    REQUIRE_FALSE(es.empty());
    CHECK(es.back().level == 10000);
    CHECK(es.back().diff == std::optional<IndexSet>{IndexSet{1, 3}});
    auto again = build_cofseq(empty, built.state.dump_cofseq());
    CHECK(again.state == built.state);
}
