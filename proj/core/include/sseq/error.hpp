#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sseq {

enum class Errc {
    UnknownGenerator,
    DegreeMismatch,
    OutOfRange,
    NonConfluent,
    ModuleTimesModule,
    MissingImage,
    ArityMismatch,
    MalformedInteger,
    DuplicateIndex,
    MissingFile,
    SchemaError,
    CrossValidation,
    NonMonotoneIds,
    NonAscii,
    UnknownReason,
    UnknownKeyword,
    AmbiguousParse,
    Malformed,
    Unsupported,
    InconsistentCells,
    KeywordDegreeError,
    SentinelConflict,
    Contradiction,
    ShiftMismatch,
    NotASurvivor,
    MalformedNesting,
    NotFound,
    RangeEmpty,
};

std::string_view errc_name(Errc c);

// Position inside an input file; line and column are 1-based, 0 means unknown.
struct SourceLoc {
    std::string file;
    int line = 0;
    int col = 0;

    std::string str() const;
};

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string msg, SourceLoc loc = {});

    Errc code() const noexcept { return code_; }
    const SourceLoc& loc() const noexcept { return loc_; }
    const std::string& detail() const noexcept { return detail_; }

    // Same error with the location filled in where it was missing.
    Error located(const SourceLoc& where) const;

private:
    Errc code_;
    std::string detail_;
    SourceLoc loc_;
};

[[noreturn]] void fail(Errc code, std::string msg, SourceLoc loc = {});

}  // namespace sseq
