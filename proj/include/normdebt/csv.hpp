#pragma once

#include <string>
#include <vector>

namespace normdebt {

struct CsvField {
    std::string text;
    bool quoted = false;
};

// RFC 4180 records: quoted fields may contain commas, doubled quotes and
// newlines. Each record remembers the 1-based line it started on so load
// errors can point at the file.
struct CsvRecord {
    std::vector<CsvField> fields;
    long long line = 0;
};

// Parses a whole document. Throws DataFileError (with `origin` and line) on
// unbalanced quotes. CRLF and a trailing newline are tolerated.
std::vector<CsvRecord> parse_csv(const std::string& content, const std::string& origin);

std::string csv_escape(const std::string& field);

} // namespace normdebt
