#include "args.hpp"

#include <fmt/format.h>

#include "sseq/formats.hpp"

namespace sseq::cli {

IntRange parse_range(std::string_view text) {
    auto bad = [&] { fail(Errc::Malformed, fmt::format("bad range '{}'", text), {"<command line>", 1, 1}); };
    if (text.empty()) bad();
    size_t split = std::string_view::npos, width = 0;
    for (std::string_view sep : {"..", ":"}) {
        if (auto p = text.find(sep); p != std::string_view::npos) {
            split = p;
            width = sep.size();
            break;
        }
    }
    if (split == std::string_view::npos) {
        if (auto p = text.find('-', 1); p != std::string_view::npos) {
            split = p;
            width = 1;
        }
    }
    try {
        if (split == std::string_view::npos) {
            int v = parse_int(text);
            return {v, v};
        }
        IntRange r{parse_int(text.substr(0, split)), parse_int(text.substr(split + width))};
        if (r.lo > r.hi) bad();
        return r;
    } catch (const Error&) {
        bad();
    }
    return {};
}

ChartSpec::Format parse_chart_format(std::string_view text) {
    if (text == "text") return ChartSpec::Format::Text;
    if (text == "csv") return ChartSpec::Format::Csv;
    if (text == "svg") return ChartSpec::Format::Svg;
    fail(Errc::Malformed, fmt::format("unknown format '{}'", text), {"<command line>", 1, 1});
}

std::pair<std::string, std::string> parse_seed(std::string_view text) {
    auto eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == text.size())
        fail(Errc::Malformed, fmt::format("seed '{}' is not NAME=PATH", text), {"<command line>", 1, 1});
    return {std::string(text.substr(0, eq)), std::string(text.substr(eq + 1))};
}

}  // namespace sseq::cli
