#pragma once

#include "normdebt/snapshot.hpp"

#include <cstdint>
#include <vector>

namespace normdebt {

// Dictionary-encoded view of a table: each column's cells become dense codes
// with 0 reserved for null. Codes are assigned in first-appearance order, so
// the encoding is deterministic for a given table but carries no meaning
// beyond equality. All partition-based checks (keys, FDs, MVDs, duplicate
// counts) run on this instead of re-hashing strings.
struct EncodedTable {
    long long rows = 0;
    std::vector<std::vector<int32_t>> codes;   // [column][row]
    std::vector<bool> column_has_null;

    static EncodedTable from(const TableSnapshot& table);
};

// Refines rows into groups by the projection onto `attrs`: returns one dense
// group id per row plus the group count. Nulls group together (code 0).
// `attrs` must be valid; empty attrs puts every row in group 0.
struct Partition {
    std::vector<int32_t> group_of_row;
    int32_t groups = 0;
};

Partition partition_by(const EncodedTable& t, const AttributeSet& attrs);

// Further refines an existing partition by extra columns; used to split
// lhs groups by rhs values without recomputing from scratch.
Partition refine(const EncodedTable& t, const Partition& base, const AttributeSet& extra);

long long distinct_count(const EncodedTable& t, const AttributeSet& attrs);

void check_attrs(const TableSnapshot& table, const AttributeSet& attrs, const char* what);

} // namespace normdebt
