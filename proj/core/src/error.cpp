#include "sseq/error.hpp"

#include <fmt/format.h>

namespace sseq {

std::string_view errc_name(Errc c) {
    switch (c) {
        case Errc::UnknownGenerator: return "UnknownGenerator";
        case Errc::DegreeMismatch: return "DegreeMismatch";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::NonConfluent: return "NonConfluent";
        case Errc::ModuleTimesModule: return "ModuleTimesModule";
        case Errc::MissingImage: return "MissingImage";
        case Errc::ArityMismatch: return "ArityMismatch";
        case Errc::MalformedInteger: return "MalformedInteger";
        case Errc::DuplicateIndex: return "DuplicateIndex";
        case Errc::MissingFile: return "MissingFile";
        case Errc::SchemaError: return "SchemaError";
        case Errc::CrossValidation: return "CrossValidation";
        case Errc::NonMonotoneIds: return "NonMonotoneIds";
        case Errc::NonAscii: return "NonAscii";
        case Errc::UnknownReason: return "UnknownReason";
        case Errc::UnknownKeyword: return "UnknownKeyword";
        case Errc::AmbiguousParse: return "AmbiguousParse";
        case Errc::Malformed: return "Malformed";
        case Errc::Unsupported: return "Unsupported";
        case Errc::InconsistentCells: return "InconsistentCells";
        case Errc::KeywordDegreeError: return "KeywordDegreeError";
        case Errc::SentinelConflict: return "SentinelConflict";
        case Errc::Contradiction: return "Contradiction";
        case Errc::ShiftMismatch: return "ShiftMismatch";
        case Errc::NotASurvivor: return "NotASurvivor";
        case Errc::MalformedNesting: return "MalformedNesting";
        case Errc::NotFound: return "NotFound";
        case Errc::RangeEmpty: return "RangeEmpty";
    }
    return "Unknown";
}

std::string SourceLoc::str() const {
    if (file.empty() && line == 0) return {};
    return fmt::format("{}:{}:{}", file.empty() ? "<input>" : file, line, col);
}

static std::string compose(Errc code, const std::string& msg, const SourceLoc& loc) {
    auto where = loc.str();
    if (where.empty()) return fmt::format("{}: {}", errc_name(code), msg);
    return fmt::format("{}: {}: {}", where, errc_name(code), msg);
}

Error::Error(Errc code, std::string msg, SourceLoc loc)
    : std::runtime_error(compose(code, msg, loc)), code_(code), detail_(std::move(msg)), loc_(std::move(loc)) {}

Error Error::located(const SourceLoc& where) const {
    if (loc_.line != 0) return *this;
    SourceLoc merged = where;
    if (merged.col == 0) merged.col = 1;
    return Error(code_, detail_, merged);
}

void fail(Errc code, std::string msg, SourceLoc loc) { throw Error(code, std::move(msg), std::move(loc)); }

}  // namespace sseq
