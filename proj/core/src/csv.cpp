#include "sseq/csv.hpp"

#include <sstream>

#include <fmt/format.h>

namespace sseq {

CsvStream::CsvStream(std::istream& in, std::string file) : in_(in), file_(std::move(file)) {}

int CsvStream::peek() { return in_.peek(); }

int CsvStream::get() {
    int c = in_.get();
    if (c == std::char_traits<char>::eof()) return c;
    if (static_cast<unsigned char>(c) > 0x7f)
        fail(Errc::NonAscii, fmt::format("byte 0x{:02x} is not ASCII", static_cast<unsigned char>(c)), here());
    if (c == '\n') {
        ++line_;
        col_ = 1;
    } else {
        ++col_;
    }
    return c;
}

bool CsvStream::next(CsvRecord& out) {
    constexpr int eof = std::char_traits<char>::eof();
    out = CsvRecord{};
    if (peek() == eof) return false;
    out.line = line_;
    CsvField field{{}, line_, col_};
    bool quoted = false;
    bool after_quote = false;
    for (;;) {
        int c = get();
        if (quoted) {
            if (c == eof) fail(Errc::SchemaError, "unterminated quoted field", {file_, field.line, field.col});
            if (c == '"') {
                if (peek() == '"') {
                    get();
                    field.text += '"';
                } else {
                    quoted = false;
                    after_quote = true;
                }
            } else {
                field.text += static_cast<char>(c);
            }
            continue;
        }
        if (c == ',' ) {
            out.fields.push_back(std::move(field));
            field = CsvField{{}, line_, col_};
            after_quote = false;
            continue;
        }
        if (c == eof || c == '\n' || c == '\r') {
            if (c == '\r') {
                if (peek() != '\n') fail(Errc::SchemaError, "bare carriage return", here());
                get();
            }
            out.fields.push_back(std::move(field));
            return true;
        }
        if (after_quote) fail(Errc::SchemaError, "text after closing quote", here());
        if (c == '"') {
            if (!field.text.empty()) fail(Errc::SchemaError, "quote inside unquoted field", here());
            quoted = true;
            continue;
        }
        field.text += static_cast<char>(c);
    }
}

std::vector<CsvRecord> read_csv(std::string_view text, const std::string& file) {
    std::istringstream in{std::string(text)};
    CsvStream stream(in, file);
    std::vector<CsvRecord> out;
    CsvRecord rec;
    while (stream.next(rec)) out.push_back(std::move(rec));
    return out;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(fields[i]);
    }
    out += '\n';
    return out;
}

}  // namespace sseq
