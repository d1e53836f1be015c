#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sseq::cli {

struct Common {
    std::filesystem::path data_dir = ".";
    std::vector<std::string> seeds;  // NAME=PATH
};

int cmd_validate(const Common& c, std::ostream& out, std::ostream& err);

struct QueryArgs {
    std::string name;
    int stem = 0;
    int s = 0;
    std::optional<std::string> vec;
};
int cmd_query(const Common& c, const QueryArgs& a, std::ostream& out);

struct ChartArgs {
    std::string name;
    std::string stems;
    std::optional<std::string> s_range;
    std::string format = "text";
    bool indices = false;
};
int cmd_chart(const Common& c, const ChartArgs& a, std::ostream& out, std::ostream& err);

struct DeduceArgs {
    std::string name;  // spectrum, or X__Y__Z:leg
    int stem = 0;
    int s = 0;
    std::string x;
    int r = 2;
    int max_depth = 3;
    int budget = 10000;
    bool inverse = false;
};
// 0 when a value was deduced, 3 when the search stayed inconclusive.
int cmd_deduce(const Common& c, const DeduceArgs& a, std::ostream& out, std::ostream& err);

struct CheckArgs {
    std::vector<std::string> paths;
    std::string format = "text";
    int budget = 10000;
    bool replay = true;
};
int cmd_check_proofs(const Common& c, const CheckArgs& a, std::ostream& out, std::ostream& err);

inline constexpr int kExitInconclusive = 3;

}  // namespace sseq::cli
