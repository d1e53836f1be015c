#pragma once

#include <string>

#include "sseq/algebra.hpp"
#include "sseq/ss.hpp"

namespace sseq {

struct ChartSpec {
    enum class Format { Text, Csv, Svg };
    enum class Naming { Names, Indices };

    std::string spectrum;
    int stem_lo = 0;
    int stem_hi = 0;
    int s_lo = 0;
    int s_hi = 0;
    Format format = Format::Text;
    Naming naming = Naming::Names;
};

// "h_0x_{123,8}+x_{123,9}" from generator names, or "S0 (123,9) [0,1]" when a name is missing.
std::string element_label(const SsState& state, const SpectrumData* spectrum, const Loc& loc, const IndexSet& v,
                          ChartSpec::Naming naming = ChartSpec::Naming::Names);

// Per stem, s descending; entries within one s by ascending level. Throws RangeEmpty.
std::string render_chart(const SsState& state, const SpectrumData* spectrum, const ChartSpec& spec);

}  // namespace sseq
