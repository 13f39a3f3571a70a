#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace normdebt {

// A cell is either null or exact (trimmed) text. Equality is byte-wise;
// two nulls compare equal. This is the one null rule everything downstream
// inherits, except candidate-key checks where any null disqualifies.
struct CellValue {
    bool null = true;
    std::string text;

    static CellValue make_null() { return CellValue{}; }
    static CellValue of(std::string t) { return CellValue{false, std::move(t)}; }

    friend bool operator==(const CellValue& a, const CellValue& b) {
        if (a.null || b.null) return a.null && b.null;
        return a.text == b.text;
    }
};

enum class ColumnKind { integer, decimal, text, boolean, date_like };

const char* to_string(ColumnKind k);

struct ColumnMeta {
    std::string name;
    ColumnKind inferred_kind = ColumnKind::text;
    bool nullable = false;
};

// Set of column indices, kept sorted and unique. Comparisons are on the
// sorted index vector; canonical_less() orders by size first so singleton
// sets enumerate before composite ones.
struct AttributeSet {
    std::vector<int> idx;

    AttributeSet() = default;
    explicit AttributeSet(std::vector<int> v);

    int size() const { return static_cast<int>(idx.size()); }
    bool empty() const { return idx.empty(); }
    bool contains(int col) const;
    bool is_subset_of(const AttributeSet& other) const;
    AttributeSet set_union(const AttributeSet& other) const;
    AttributeSet set_minus(const AttributeSet& other) const;

    friend bool operator==(const AttributeSet& a, const AttributeSet& b) { return a.idx == b.idx; }
    friend bool operator<(const AttributeSet& a, const AttributeSet& b) { return a.idx < b.idx; }
};

// size, then lexicographic. The ordering used everywhere candidates or keys
// are enumerated or serialized.
bool canonical_less(const AttributeSet& a, const AttributeSet& b);

struct ForeignKeyRef {
    AttributeSet columns;
    std::string references; // referenced table name; may be absent from the snapshot (warning only)
};

struct TableSnapshot {
    std::string name;
    std::vector<ColumnMeta> columns;
    std::vector<std::vector<CellValue>> rows; // file order
    std::optional<AttributeSet> declared_primary_key;
    std::vector<AttributeSet> declared_indexes;
    std::vector<ForeignKeyRef> declared_foreign_keys;
    std::optional<double> size_mb_override;
    std::optional<int> task_count_override;
    std::optional<double> rdi_override;
    std::optional<int> weight_override;

    int column_count() const { return static_cast<int>(columns.size()); }
    long long row_count() const { return static_cast<long long>(rows.size()); }
    // Throws UnknownColumnError.
    int column_index(const std::string& column_name) const;
    AttributeSet attrs_of(const std::vector<std::string>& column_names) const;
    std::string column_list(const AttributeSet& attrs, const char* sep = ", ") const;
};

struct DatabaseSnapshot {
    std::string name;
    std::vector<TableSnapshot> tables; // sorted by name, byte-wise ascending
    std::vector<std::string> warnings; // e.g. foreign keys referencing absent tables

    const TableSnapshot* find_table(const std::string& table_name) const;
    // Throws UnknownTableError.
    const TableSnapshot& table(const std::string& table_name) const;
};

// Most specific kind matching every non-empty value; empty input or no match
// falls back to text.
ColumnKind infer_column_kind(const std::vector<std::string>& raw_values);

// Loads manifest JSON plus the CSV files it references. Throws
// ManifestParseError, DataFileError, DuplicateTableNameError,
// PrimaryKeyViolationError.
DatabaseSnapshot load_snapshot(const std::string& manifest_path);

// Deterministic serialized form; loading the same manifest twice must
// produce byte-identical output here.
std::string snapshot_to_json(const DatabaseSnapshot& snapshot);

} // namespace normdebt
