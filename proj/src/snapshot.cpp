#include "normdebt/snapshot.hpp"

#include "normdebt/csv.hpp"
#include "normdebt/encoded_table.hpp"
#include "normdebt/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace normdebt {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool match_boolean(const std::string& v) {
    std::string low;
    low.reserve(v.size());
    for (char c : v) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return low == "true" || low == "false";
}

bool match_integer(const std::string& v) {
    size_t i = 0;
    if (i < v.size() && (v[i] == '+' || v[i] == '-')) ++i;
    if (i >= v.size()) return false;
    for (; i < v.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(v[i]))) return false;
    return true;
}

bool match_decimal(const std::string& v) {
    size_t i = 0;
    if (i < v.size() && (v[i] == '+' || v[i] == '-')) ++i;
    size_t digits = 0, frac = 0;
    while (i < v.size() && std::isdigit(static_cast<unsigned char>(v[i]))) { ++i; ++digits; }
    if (i < v.size() && v[i] == '.') {
        ++i;
        while (i < v.size() && std::isdigit(static_cast<unsigned char>(v[i]))) { ++i; ++frac; }
    }
    if (digits + frac == 0) return false;
    if (i < v.size() && (v[i] == 'e' || v[i] == 'E')) {
        ++i;
        if (i < v.size() && (v[i] == '+' || v[i] == '-')) ++i;
        if (i >= v.size()) return false;
        while (i < v.size() && std::isdigit(static_cast<unsigned char>(v[i]))) ++i;
    }
    return i == v.size();
}

bool match_date_like(const std::string& v) {
    // YYYY-MM-DD, optionally followed by a time part.
    if (v.size() < 10) return false;
    for (int i : {0, 1, 2, 3, 5, 6, 8, 9})
        if (!std::isdigit(static_cast<unsigned char>(v[static_cast<size_t>(i)]))) return false;
    if (v[4] != '-' || v[7] != '-') return false;
    if (v.size() == 10) return true;
    return v[10] == ' ' || v[10] == 'T';
}

std::string read_file(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataFileError(std::string(what) + " not found: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

const char* to_string(ColumnKind k) {
    switch (k) {
    case ColumnKind::integer: return "integer";
    case ColumnKind::decimal: return "decimal";
    case ColumnKind::text: return "text";
    case ColumnKind::boolean: return "boolean";
    case ColumnKind::date_like: return "date-like";
    }
    return "text";
}

AttributeSet::AttributeSet(std::vector<int> v) : idx(std::move(v)) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
}

bool AttributeSet::contains(int col) const {
    return std::binary_search(idx.begin(), idx.end(), col);
}

bool AttributeSet::is_subset_of(const AttributeSet& other) const {
    return std::includes(other.idx.begin(), other.idx.end(), idx.begin(), idx.end());
}

AttributeSet AttributeSet::set_union(const AttributeSet& other) const {
    std::vector<int> out;
    std::set_union(idx.begin(), idx.end(), other.idx.begin(), other.idx.end(), std::back_inserter(out));
    AttributeSet r;
    r.idx = std::move(out);
    return r;
}

AttributeSet AttributeSet::set_minus(const AttributeSet& other) const {
    std::vector<int> out;
    std::set_difference(idx.begin(), idx.end(), other.idx.begin(), other.idx.end(), std::back_inserter(out));
    AttributeSet r;
    r.idx = std::move(out);
    return r;
}

bool canonical_less(const AttributeSet& a, const AttributeSet& b) {
    if (a.idx.size() != b.idx.size()) return a.idx.size() < b.idx.size();
    return a.idx < b.idx;
}

int TableSnapshot::column_index(const std::string& column_name) const {
    for (size_t i = 0; i < columns.size(); ++i)
        if (columns[i].name == column_name) return static_cast<int>(i);
    throw UnknownColumnError("unknown column '" + column_name + "' in table '" + name + "'");
}

AttributeSet TableSnapshot::attrs_of(const std::vector<std::string>& column_names) const {
    std::vector<int> v;
    v.reserve(column_names.size());
    for (const auto& n : column_names) v.push_back(column_index(n));
    return AttributeSet(std::move(v));
}

std::string TableSnapshot::column_list(const AttributeSet& attrs, const char* sep) const {
    std::string out;
    for (size_t i = 0; i < attrs.idx.size(); ++i) {
        if (i) out += sep;
        out += columns[static_cast<size_t>(attrs.idx[i])].name;
    }
    return out;
}

const TableSnapshot* DatabaseSnapshot::find_table(const std::string& table_name) const {
    for (const auto& t : tables)
        if (t.name == table_name) return &t;
    return nullptr;
}

const TableSnapshot& DatabaseSnapshot::table(const std::string& table_name) const {
    const TableSnapshot* t = find_table(table_name);
    if (!t) throw UnknownTableError("unknown table '" + table_name + "'");
    return *t;
}

ColumnKind infer_column_kind(const std::vector<std::string>& raw_values) {
    bool any = false;
    bool all_bool = true, all_int = true, all_dec = true, all_date = true;
    for (const auto& raw : raw_values) {
        std::string v = trim(raw);
        if (v.empty()) continue; // null marker
        any = true;
        if (all_bool && !match_boolean(v)) all_bool = false;
        if (all_int && !match_integer(v)) all_int = false;
        if (all_dec && !match_decimal(v)) all_dec = false;
        if (all_date && !match_date_like(v)) all_date = false;
    }
    if (!any) return ColumnKind::text;
    if (all_bool) return ColumnKind::boolean;
    if (all_int) return ColumnKind::integer;
    if (all_dec) return ColumnKind::decimal;
    if (all_date) return ColumnKind::date_like;
    return ColumnKind::text;
}

namespace {

AttributeSet columns_from_json(const nlohmann::json& arr, const TableSnapshot& table, const char* what) {
    if (!arr.is_array() || arr.empty())
        throw ManifestParseError(std::string(what) + " of table '" + table.name + "' must be a nonempty array");
    std::vector<int> v;
    for (const auto& el : arr) {
        if (!el.is_string())
            throw ManifestParseError(std::string(what) + " of table '" + table.name + "' must contain column names");
        try {
            v.push_back(table.column_index(el.get<std::string>()));
        } catch (const UnknownColumnError& e) {
            throw ManifestParseError(std::string(what) + " of table '" + table.name + "': " + e.what());
        }
    }
    return AttributeSet(std::move(v));
}

TableSnapshot load_table(const nlohmann::json& spec, const std::filesystem::path& base_dir) {
    if (!spec.is_object()) throw ManifestParseError("table entries must be objects");
    if (!spec.contains("name") || !spec["name"].is_string())
        throw ManifestParseError("table entry missing string 'name'");
    if (!spec.contains("file") || !spec["file"].is_string())
        throw ManifestParseError("table entry missing string 'file'");

    TableSnapshot table;
    table.name = spec["name"].get<std::string>();

    std::filesystem::path file = base_dir / spec["file"].get<std::string>();
    std::string content = read_file(file.string(), "data file");
    std::vector<CsvRecord> records = parse_csv(content, file.string());
    if (records.empty())
        throw DataFileError(file.string() + ":1: missing header row");

    const CsvRecord& header = records[0];
    std::unordered_set<std::string> seen;
    for (const auto& f : header.fields) {
        std::string name = trim(f.text);
        if (name.empty())
            throw DataFileError(file.string() + ":" + std::to_string(header.line) + ": empty column name");
        if (!seen.insert(name).second)
            throw DataFileError(file.string() + ":" + std::to_string(header.line) +
                                ": duplicate column name '" + name + "'");
        ColumnMeta meta;
        meta.name = name;
        table.columns.push_back(std::move(meta));
    }

    size_t width = table.columns.size();
    table.rows.reserve(records.size() - 1);
    for (size_t r = 1; r < records.size(); ++r) {
        const CsvRecord& rec = records[r];
        if (rec.fields.size() != width)
            throw DataFileError(file.string() + ":" + std::to_string(rec.line) + ": expected " +
                                std::to_string(width) + " fields, got " + std::to_string(rec.fields.size()));
        std::vector<CellValue> row;
        row.reserve(width);
        for (const auto& f : rec.fields) {
            std::string text = trim(f.text);
            if (!f.quoted && text.empty()) row.push_back(CellValue::make_null());
            else row.push_back(CellValue::of(std::move(text)));
        }
        table.rows.push_back(std::move(row));
    }

    // Kind and nullability per column, from the loaded cells.
    for (size_t c = 0; c < width; ++c) {
        std::vector<std::string> non_null;
        bool nullable = false;
        for (const auto& row : table.rows) {
            if (row[c].null) nullable = true;
            else non_null.push_back(row[c].text);
        }
        table.columns[c].inferred_kind = infer_column_kind(non_null);
        table.columns[c].nullable = nullable;
    }

    if (spec.contains("primary_key") && !spec["primary_key"].is_null())
        table.declared_primary_key = columns_from_json(spec["primary_key"], table, "primary_key");
    if (spec.contains("indexes")) {
        if (!spec["indexes"].is_array())
            throw ManifestParseError("indexes of table '" + table.name + "' must be an array");
        for (const auto& ix : spec["indexes"])
            table.declared_indexes.push_back(columns_from_json(ix, table, "index"));
    }
    if (spec.contains("foreign_keys")) {
        if (!spec["foreign_keys"].is_array())
            throw ManifestParseError("foreign_keys of table '" + table.name + "' must be an array");
        for (const auto& fk : spec["foreign_keys"]) {
            if (!fk.is_object() || !fk.contains("columns") || !fk.contains("references") ||
                !fk["references"].is_string())
                throw ManifestParseError("foreign key of table '" + table.name +
                                         "' needs 'columns' and a string 'references'");
            ForeignKeyRef ref;
            ref.columns = columns_from_json(fk["columns"], table, "foreign key");
            ref.references = fk["references"].get<std::string>();
            table.declared_foreign_keys.push_back(std::move(ref));
        }
    }
    if (spec.contains("size_mb")) {
        if (!spec["size_mb"].is_number())
            throw ManifestParseError("size_mb of table '" + table.name + "' must be a number");
        table.size_mb_override = spec["size_mb"].get<double>();
    }
    if (spec.contains("task_count")) {
        if (!spec["task_count"].is_number_integer())
            throw ManifestParseError("task_count of table '" + table.name + "' must be an integer");
        table.task_count_override = spec["task_count"].get<int>();
    }
    if (spec.contains("rdi")) {
        if (!spec["rdi"].is_number())
            throw ManifestParseError("rdi of table '" + table.name + "' must be a number");
        table.rdi_override = spec["rdi"].get<double>();
    }
    if (spec.contains("weight")) {
        if (!spec["weight"].is_number_integer())
            throw ManifestParseError("weight of table '" + table.name + "' must be an integer");
        table.weight_override = spec["weight"].get<int>();
    }

    if (table.declared_primary_key) {
        const AttributeSet& pk = *table.declared_primary_key;
        EncodedTable enc = EncodedTable::from(table);
        for (int col : pk.idx)
            if (enc.column_has_null[static_cast<size_t>(col)])
                throw PrimaryKeyViolationError("table '" + table.name + "': primary key column '" +
                                               table.columns[static_cast<size_t>(col)].name + "' contains null");
        if (distinct_count(enc, pk) != enc.rows)
            throw PrimaryKeyViolationError("table '" + table.name + "': primary key (" +
                                           table.column_list(pk) + ") is not unique");
    }
    return table;
}

} // namespace

DatabaseSnapshot load_snapshot(const std::string& manifest_path) {
    std::string content = read_file(manifest_path, "manifest");
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& e) {
        throw ManifestParseError(std::string("manifest ") + manifest_path + ": " + e.what());
    }
    if (!manifest.is_object() || !manifest.contains("name") || !manifest["name"].is_string() ||
        !manifest.contains("tables") || !manifest["tables"].is_array())
        throw ManifestParseError("manifest " + manifest_path + ": expected {\"name\": ..., \"tables\": [...]}");

    DatabaseSnapshot snapshot;
    snapshot.name = manifest["name"].get<std::string>();
    std::filesystem::path base_dir = std::filesystem::path(manifest_path).parent_path();

    std::set<std::string> names;
    for (const auto& spec : manifest["tables"]) {
        TableSnapshot table = load_table(spec, base_dir);
        if (!names.insert(table.name).second)
            throw DuplicateTableNameError("duplicate table name '" + table.name + "'");
        snapshot.tables.push_back(std::move(table));
    }
    std::sort(snapshot.tables.begin(), snapshot.tables.end(),
              [](const TableSnapshot& a, const TableSnapshot& b) { return a.name < b.name; });

    for (const auto& t : snapshot.tables)
        for (const auto& fk : t.declared_foreign_keys)
            if (!snapshot.find_table(fk.references))
                snapshot.warnings.push_back("table '" + t.name + "': foreign key (" + t.column_list(fk.columns) +
                                            ") references absent table '" + fk.references + "'");
    return snapshot;
}

std::string snapshot_to_json(const DatabaseSnapshot& snapshot) {
    nlohmann::ordered_json doc;
    doc["name"] = snapshot.name;
    doc["tables"] = nlohmann::ordered_json::array();
    for (const auto& t : snapshot.tables) {
        nlohmann::ordered_json jt;
        jt["name"] = t.name;
        jt["columns"] = nlohmann::ordered_json::array();
        for (const auto& c : t.columns)
            jt["columns"].push_back({{"name", c.name}, {"kind", to_string(c.inferred_kind)}, {"nullable", c.nullable}});
        jt["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json jr = nlohmann::ordered_json::array();
            for (const auto& cell : row) {
                if (cell.null) jr.push_back(nullptr);
                else jr.push_back(cell.text);
            }
            jt["rows"].push_back(std::move(jr));
        }
        if (t.declared_primary_key) jt["primary_key"] = t.declared_primary_key->idx;
        if (!t.declared_indexes.empty()) {
            jt["indexes"] = nlohmann::ordered_json::array();
            for (const auto& ix : t.declared_indexes) jt["indexes"].push_back(ix.idx);
        }
        if (!t.declared_foreign_keys.empty()) {
            jt["foreign_keys"] = nlohmann::ordered_json::array();
            for (const auto& fk : t.declared_foreign_keys)
                jt["foreign_keys"].push_back({{"columns", fk.columns.idx}, {"references", fk.references}});
        }
        if (t.size_mb_override) jt["size_mb"] = *t.size_mb_override;
        if (t.task_count_override) jt["task_count"] = *t.task_count_override;
        if (t.rdi_override) jt["rdi"] = *t.rdi_override;
        if (t.weight_override) jt["weight"] = *t.weight_override;
        doc["tables"].push_back(std::move(jt));
    }
    return doc.dump(2) + "\n";
}

} // namespace normdebt
