#include "normdebt/csv.hpp"

#include "normdebt/errors.hpp"

namespace normdebt {

std::vector<CsvRecord> parse_csv(const std::string& content, const std::string& origin) {
    std::vector<CsvRecord> records;
    CsvRecord record;
    CsvField field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool record_has_data = false;
    long long line = 1;
    record.line = 1;

    auto end_field = [&] {
        field.quoted = field_was_quoted;
        record.fields.push_back(std::move(field));
        field = CsvField{};
        field_was_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record = CsvRecord{};
        record_has_data = false;
    };

    for (size_t i = 0; i < content.size(); ++i) {
        char c = content[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    field.text += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.text += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            // Leading quote opens a quoted field; a quote mid-field is kept verbatim.
            if (field.text.empty() && !field_was_quoted) {
                in_quotes = true;
                field_was_quoted = true;
            } else {
                field.text += '"';
            }
            record_has_data = true;
            break;
        case ',':
            end_field();
            record_has_data = true;
            break;
        case '\r':
            break;
        case '\n':
            ++line;
            if (record_has_data || !record.fields.empty() || !field.text.empty()) {
                end_record();
            }
            record.line = line;
            break;
        default:
            field.text += c;
            record_has_data = true;
            break;
        }
    }
    if (in_quotes) {
        throw DataFileError(origin + ":" + std::to_string(record.line) + ": unterminated quoted field");
    }
    if (record_has_data || !record.fields.empty() || !field.text.empty()) {
        end_record();
    }
    return records;
}

std::string csv_escape(const std::string& field) {
    bool needs_quotes = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

} // namespace normdebt
