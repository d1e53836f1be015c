#include "doctest.h"
#include "sseq/csv.hpp"

using namespace sseq;

TEST_CASE("quoted fields may hold commas, quotes and newlines") {
    auto recs = read_csv("a,b\n\"1,2\",\"say \"\"hi\"\"\"\n\"x\ny\",z\n", "t.csv");
    REQUIRE(recs.size() == 3);
    CHECK(recs[1].fields[0].text == "1,2");
    CHECK(recs[1].fields[1].text == "say \"hi\"");
    CHECK(recs[2].fields[0].text == "x\ny");
    CHECK(recs[2].line == 3);
    CHECK(recs[1].fields[1].col == 7);
}

TEST_CASE("CRLF endings and empty fields") {
    auto recs = read_csv("a,,c\r\n,\r\n", "t.csv");
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].fields.size() == 3);
    CHECK(recs[0].fields[1].text.empty());
    CHECK(recs[1].fields.size() == 2);
}

TEST_CASE("non-ASCII bytes are rejected with a position") {
    try {
        read_csv("a,b\nc,\xc3\xa9\n", "bad.csv");
        FAIL("expected NonAscii");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonAscii);
        CHECK(e.loc().line == 2);
        CHECK(e.loc().col == 3);
        CHECK(e.loc().str() == "bad.csv:2:3");
    }
}

TEST_CASE("malformed quoting") {
    CHECK_THROWS_AS(read_csv("\"open\n", "t.csv"), Error);
    CHECK_THROWS_AS(read_csv("\"a\"b\n", "t.csv"), Error);
    CHECK_THROWS_AS(read_csv("a\"b\n", "t.csv"), Error);
}

TEST_CASE("escaping quotes only when needed") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("0,1") == "\"0,1\"");
    CHECK(csv_escape("a\"b") == "\"a\"\"b\"");
    CHECK(csv_line({"1", "0,2", ""}) == "1,\"0,2\",\n");
}
