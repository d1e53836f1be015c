#include "doctest.h"
#include "fixture_dir.hpp"
#include "sseq/chart.hpp"
#include "sseq/formats.hpp"

using namespace sseq;
using sseq::testing::kFixtureDir;

namespace {

struct ChartFixture {
    Dataset data{kFixtureDir / "chart"};
    std::shared_ptr<const SpectrumData> s0 = data.spectrum("S0");
    SsState state = build(SsState::adams(*s0), load_ss(*data.ss_path("S0")), BuildOptions{false, true}).state;

    std::string text(int stem, int lo, int hi, ChartSpec::Format f = ChartSpec::Format::Text) const {
        return render_chart(state, s0.get(), ChartSpec{"S0", stem, stem, lo, hi, f});
    }
};

bool has_line(const std::string& text, const std::string& line) {
    return ("\n" + text).find("\n" + line + "\n") != std::string::npos;
}

}  // namespace

TEST_CASE_FIXTURE(ChartFixture, "unknown targets print a question mark") {
    CHECK(has_line(text(123, 8, 25), "9 | x_{123,9}+h_0x_{123,8} | d_{12} | ?"));
    CHECK(has_line(text(126, 0, 10), "2 | h_6^2 | d_{7} | ?"));
}

TEST_CASE_FIXTURE(ChartFixture, "inverse rows") {
    CHECK(has_line(text(126, 0, 10), "3 | h_0h_6^2 | d_{2}^{-1} | h_7"));
}

TEST_CASE_FIXTURE(ChartFixture, "charts are stable") {
    CHECK(text(125, 0, 19) == text(125, 0, 19));
    CHECK(text(125, 0, 19) == read_file(kFixtureDir / "chart" / "S0_125_0_19.txt"));
}

TEST_CASE_FIXTURE(ChartFixture, "csv output") {
    std::string csv = text(126, 0, 10, ChartSpec::Format::Csv);
    CHECK(csv.starts_with("stem,s,element,d_r,value\n"));
    CHECK(csv.find("126,2,h_6^2,d_{7},?\n") != std::string::npos);
}

TEST_CASE_FIXTURE(ChartFixture, "svg output") {
    std::string svg = text(126, 0, 10, ChartSpec::Format::Svg);
    CHECK(svg.starts_with("<svg"));
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE_FIXTURE(ChartFixture, "labels") {
    CHECK(element_label(state, s0.get(), {0, {126, 2}}, {0}) == "h_6^2");
    CHECK(element_label(state, s0.get(), {0, {126, 2}}, {0}, ChartSpec::Naming::Indices) == "S0 (126,2) [0]");
    CHECK(element_label(state, nullptr, {0, {126, 2}}, {0}) == "S0 (126,2) [0]");
}

TEST_CASE_FIXTURE(ChartFixture, "empty ranges") {
    try {
        text(126, 10, 0);
        FAIL("reversed range rendered");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::RangeEmpty);
    }
    CHECK_THROWS_AS(text(300, 0, 3), Error);
}
