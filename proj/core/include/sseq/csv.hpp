#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "sseq/error.hpp"

namespace sseq {

struct CsvField {
    std::string text;
    int line = 0;
    int col = 0;
};

struct CsvRecord {
    std::vector<CsvField> fields;
    int line = 0;
};

// RFC 4180 reader: comma separator, double-quote quoting, quoted fields may span lines.
// Accepts LF or CRLF line ends. Any byte outside 7-bit ASCII is rejected.
class CsvStream {
public:
    CsvStream(std::istream& in, std::string file);

    bool next(CsvRecord& out);
    const std::string& file() const { return file_; }
    SourceLoc here() const { return {file_, line_, col_}; }

private:
    int get();
    int peek();

    std::istream& in_;
    std::string file_;
    int line_ = 1;
    int col_ = 1;
};

std::vector<CsvRecord> read_csv(std::string_view text, const std::string& file);

// Quotes only when the field holds a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);
std::string csv_line(const std::vector<std::string>& fields);

}  // namespace sseq
