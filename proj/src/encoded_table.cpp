#include "normdebt/encoded_table.hpp"

#include "normdebt/errors.hpp"

#include <unordered_map>

namespace normdebt {

EncodedTable EncodedTable::from(const TableSnapshot& table) {
    EncodedTable enc;
    enc.rows = table.row_count();
    size_t cols = table.columns.size();
    enc.codes.resize(cols);
    enc.column_has_null.assign(cols, false);
    for (size_t c = 0; c < cols; ++c) {
        auto& column = enc.codes[c];
        column.resize(static_cast<size_t>(enc.rows));
        std::unordered_map<std::string, int32_t> dict;
        int32_t next = 1; // 0 is the null code
        for (size_t r = 0; r < static_cast<size_t>(enc.rows); ++r) {
            const CellValue& cell = table.rows[r][c];
            if (cell.null) {
                column[r] = 0;
                enc.column_has_null[c] = true;
            } else {
                auto [it, inserted] = dict.emplace(cell.text, next);
                if (inserted) ++next;
                column[r] = it->second;
            }
        }
    }
    return enc;
}

namespace {

// One refinement step: split every group of `base` by one column's codes.
void refine_by_column(const std::vector<int32_t>& column, Partition& p) {
    std::unordered_map<uint64_t, int32_t> seen;
    seen.reserve(p.group_of_row.size());
    int32_t next = 0;
    for (size_t r = 0; r < p.group_of_row.size(); ++r) {
        uint64_t key = (static_cast<uint64_t>(static_cast<uint32_t>(p.group_of_row[r])) << 32) |
                       static_cast<uint32_t>(column[r]);
        auto [it, inserted] = seen.emplace(key, next);
        if (inserted) ++next;
        p.group_of_row[r] = it->second;
    }
    p.groups = next;
}

} // namespace

Partition partition_by(const EncodedTable& t, const AttributeSet& attrs) {
    Partition p;
    p.group_of_row.assign(static_cast<size_t>(t.rows), 0);
    p.groups = t.rows > 0 ? 1 : 0;
    for (int col : attrs.idx) refine_by_column(t.codes[static_cast<size_t>(col)], p);
    return p;
}

Partition refine(const EncodedTable& t, const Partition& base, const AttributeSet& extra) {
    Partition p = base;
    for (int col : extra.idx) refine_by_column(t.codes[static_cast<size_t>(col)], p);
    return p;
}

long long distinct_count(const EncodedTable& t, const AttributeSet& attrs) {
    return partition_by(t, attrs).groups;
}

void check_attrs(const TableSnapshot& table, const AttributeSet& attrs, const char* what) {
    if (attrs.empty())
        throw InvalidAttributeIndexError(std::string(what) + ": attribute set is empty (table '" + table.name + "')");
    for (int col : attrs.idx)
        if (col < 0 || col >= table.column_count())
            throw InvalidAttributeIndexError(std::string(what) + ": column index " + std::to_string(col) +
                                             " out of range for table '" + table.name + "'");
}

} // namespace normdebt
