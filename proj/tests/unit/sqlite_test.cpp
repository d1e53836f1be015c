#include <filesystem>
#include <memory>

#include <sqlite3.h>

#include "doctest.h"
#include "sseq/sqlite_source.hpp"

using namespace sseq;

namespace {

struct TempDb {
    std::filesystem::path path = std::filesystem::temp_directory_path() / "sseq_unit.db";

    explicit TempDb(const char* sql) {
        std::filesystem::remove(path);
        sqlite3* raw = nullptr;
        REQUIRE(sqlite3_open(path.c_str(), &raw) == SQLITE_OK);
        std::unique_ptr<sqlite3, decltype(&sqlite3_close)> db(raw, sqlite3_close);
        char* err = nullptr;
        REQUIRE(sqlite3_exec(db.get(), sql, nullptr, nullptr, &err) == SQLITE_OK);
    }
    ~TempDb() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("tables read like their CSV files") {
    TempDb db(
        "CREATE TABLE C2_AdamsE2_generators (id INTEGER, name TEXT, stem INTEGER, s INTEGER);"
        "INSERT INTO C2_AdamsE2_generators VALUES (0, '[0]', 0, 0), (1, '(h_1[1])', 2, 1);"
        "CREATE TABLE S0_AdamsE2_ss (stem INTEGER, s INTEGER, base TEXT, diff TEXT, level INTEGER);"
        "INSERT INTO S0_AdamsE2_ss VALUES (15, 1, '0', '0', 9998), (0, 17, '0', NULL, 9000);");
    auto names = sqlite::tables(db.path);
    CHECK(names == std::vector<std::string>{"C2_AdamsE2_generators", "S0_AdamsE2_ss"});
    auto gens = sqlite::generators(db.path, "C2_AdamsE2_generators");
    REQUIRE(gens.size() == 2);
    CHECK(gens[1].name == "(h_1[1])");
    CHECK(gens[1].deg == BiDegree{2, 1});
    auto ss = sqlite::ss(db.path, "S0_AdamsE2_ss");
    REQUIRE(ss.size() == 2);
    CHECK(ss[0].level == 9998);
    CHECK_FALSE(ss[1].diff.has_value());
}

TEST_CASE("missing tables") {
    TempDb db("CREATE TABLE t (x INTEGER);");
    CHECK_THROWS_AS(sqlite::ss(db.path, "S0_AdamsE2_ss"), Error);
    CHECK_THROWS_AS(sqlite::tables(db.path.parent_path() / "no_such.db"), Error);
}
