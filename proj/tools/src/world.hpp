#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sseq/deduce.hpp"
#include "sseq/formats.hpp"

namespace sseq::cli {

struct Finding {
    SourceLoc loc;
    std::string message;
};

std::string format_finding(const Finding& f);

struct Loaded {
    std::map<std::string, std::shared_ptr<const SpectrumData>> spectra;
    std::vector<Finding> errors;
};

// Rings first, then modules concurrently. Failures become findings.
Loaded load_spectra(const std::filesystem::path& dir, const std::vector<std::string>& names);

// "map_C2_to_C2h4.csv" -> {"C2", "C2h4"}
std::optional<std::pair<std::string, std::string>> map_endpoints(const std::filesystem::path& file);

// Staircase of one spectrum with report rows pointed back at their lines in the ss file.
struct StaircaseLoad {
    SsState state;
    std::vector<Finding> findings;
};
StaircaseLoad load_staircase(const SpectrumData& sp, const std::filesystem::path& ss_file,
                             const std::vector<SsRow>& extra = {}, bool mirrors = true);

struct WorldOptions {
    std::vector<std::pair<std::string, std::string>> seeds;  // spectrum, ss-format file
    bool strict = true;                                      // throw on the first load problem
};

inline constexpr const char* kNullCompositionsFile = "null_compositions.csv";

// Everything under a data directory: spectra with their staircases, maps, extension staircases.
World load_world(const std::filesystem::path& dir, const WorldOptions& opts = {});

}  // namespace sseq::cli
