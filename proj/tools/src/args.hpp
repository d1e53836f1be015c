#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "sseq/algebra.hpp"
#include "sseq/chart.hpp"

namespace sseq::cli {

struct IntRange {
    int lo = 0;
    int hi = 0;
};

// "123", "122:127", "122..127" or "122-127"; a leading minus belongs to the first bound.
IntRange parse_range(std::string_view text);
ChartSpec::Format parse_chart_format(std::string_view text);

// "NAME=PATH" for a seed differentials file.
std::pair<std::string, std::string> parse_seed(std::string_view text);

}  // namespace sseq::cli
