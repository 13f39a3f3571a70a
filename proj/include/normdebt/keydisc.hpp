#pragma once

#include "normdebt/snapshot.hpp"

#include <vector>

namespace normdebt {

struct CandidateKeySet {
    std::string table;
    std::vector<AttributeSet> keys; // canonical order, mutually non-nested
    int max_arity_searched = 0;
    bool insufficient_data = false; // 0-row table: only the declared key is reported
};

// True iff the projection onto attrs has no nulls and as many distinct
// tuples as rows. Vacuously true on 0-row tables. Throws
// InvalidAttributeIndexError on empty or out-of-range attrs.
bool is_unique_and_nonnull(const TableSnapshot& table, const AttributeSet& attrs);

// Levelwise search over subsets of size 1..max_arity, pruning supersets of
// found keys. The declared primary key is always part of the result unless a
// discovered key is a proper subset of it (minimality wins); it is the sole
// result for 0-row tables.
CandidateKeySet find_candidate_keys(const TableSnapshot& table, int max_arity = 3);

} // namespace normdebt
