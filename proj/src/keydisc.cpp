#include "normdebt/keydisc.hpp"

#include "normdebt/encoded_table.hpp"
#include "normdebt/errors.hpp"

#include <algorithm>

namespace normdebt {

bool is_unique_and_nonnull(const TableSnapshot& table, const AttributeSet& attrs) {
    check_attrs(table, attrs, "is_unique_and_nonnull");
    if (table.rows.empty()) return true;
    EncodedTable enc = EncodedTable::from(table);
    for (int col : attrs.idx)
        if (enc.column_has_null[static_cast<size_t>(col)]) return false;
    return distinct_count(enc, attrs) == enc.rows;
}

namespace {

// Visits all size-k index subsets in lexicographic order.
template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
    if (k > n || k <= 0) return;
    std::vector<int> c(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<size_t>(i)] = i;
    while (true) {
        fn(c);
        int i = k - 1;
        while (i >= 0 && c[static_cast<size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++c[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j) c[static_cast<size_t>(j)] = c[static_cast<size_t>(j - 1)] + 1;
    }
}

bool superset_of_any(const AttributeSet& attrs, const std::vector<AttributeSet>& keys) {
    for (const auto& key : keys)
        if (key.is_subset_of(attrs)) return true;
    return false;
}

} // namespace

CandidateKeySet find_candidate_keys(const TableSnapshot& table, int max_arity) {
    if (max_arity < 1) throw AnalysisError("find_candidate_keys: max_arity must be >= 1");
    CandidateKeySet result;
    result.table = table.name;
    result.max_arity_searched = max_arity;

    if (table.rows.empty()) {
        // Nothing to discover from; trust the declared key and flag it.
        result.insufficient_data = true;
        if (table.declared_primary_key) result.keys.push_back(*table.declared_primary_key);
        return result;
    }

    EncodedTable enc = EncodedTable::from(table);
    int n = table.column_count();
    for (int k = 1; k <= std::min(max_arity, n); ++k) {
        for_each_combination(n, k, [&](const std::vector<int>& combo) {
            AttributeSet attrs;
            attrs.idx = combo;
            if (superset_of_any(attrs, result.keys)) return;
            for (int col : attrs.idx)
                if (enc.column_has_null[static_cast<size_t>(col)]) return;
            if (distinct_count(enc, attrs) == enc.rows) result.keys.push_back(attrs);
        });
    }

    // A declared key wider than the search bound still counts, unless a
    // discovered key already sits inside it.
    if (table.declared_primary_key && !superset_of_any(*table.declared_primary_key, result.keys) &&
        std::find(result.keys.begin(), result.keys.end(), *table.declared_primary_key) == result.keys.end())
        result.keys.push_back(*table.declared_primary_key);

    std::sort(result.keys.begin(), result.keys.end(), canonical_less);
    return result;
}

} // namespace normdebt
