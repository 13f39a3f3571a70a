#include "normdebt/debtmetrics.hpp"

#include "normdebt/encoded_table.hpp"
#include "normdebt/errors.hpp"

#include <algorithm>
#include <vector>

namespace normdebt {

long long duplicate_count(const TableSnapshot& table, const AttributeSet& attrs) {
    check_attrs(table, attrs, "duplicate count");
    if (table.row_count() == 0) return 0;
    EncodedTable enc = EncodedTable::from(table);
    return static_cast<long long>(enc.rows) - distinct_count(enc, attrs);
}

InconsistencyRisk inconsistency_risk(const TableSnapshot& table, int k_max) {
    int cols = table.column_count();
    long long rows = table.row_count();
    if (cols == 0 || rows == 0)
        throw EmptyTableError("inconsistency risk needs a nonempty table, got " + table.name);

    InconsistencyRisk out;
    out.k_max = k_max > 0 ? std::min(k_max, cols) : std::min(cols, 12);
    out.exact = out.k_max >= cols;
    out.denominator = rows * cols;

    EncodedTable enc = EncodedTable::from(table);

    // Walk every nonempty subset of size <= k_max in lexicographic order,
    // refining the parent partition by one extra column each step.
    struct Frame {
        Partition part;
        int last; // highest column index in the subset so far
    };
    std::vector<Frame> stack;
    for (int c = 0; c < cols; ++c)
        stack.push_back({partition_by(enc, AttributeSet({c})), c});
    // Depth-first: pop a frame, count it, push its single-column extensions.
    long long sum = 0;
    std::vector<int> depth_of(stack.size(), 1);
    while (!stack.empty()) {
        Frame frame = std::move(stack.back());
        int depth = depth_of.back();
        stack.pop_back();
        depth_of.pop_back();
        sum += rows - frame.part.groups;
        if (depth >= out.k_max) continue;
        for (int c = frame.last + 1; c < cols; ++c) {
            stack.push_back({refine(enc, frame.part, AttributeSet({c})), c});
            depth_of.push_back(depth + 1);
        }
    }
    out.numerator = sum;
    out.value = static_cast<double>(out.numerator) / static_cast<double>(out.denominator);
    return out;
}

int complexity_weight(const TableSnapshot& table, const CandidateKeySet& keys) {
    return table.column_count() + static_cast<int>(table.declared_indexes.size()) +
           static_cast<int>(table.declared_foreign_keys.size()) + static_cast<int>(keys.keys.size());
}

double table_size_mb(const TableSnapshot& table) {
    if (table.size_mb_override) return *table.size_mb_override;
    long long bytes = 0;
    for (const auto& row : table.rows)
        for (const auto& cell : row)
            if (!cell.null) bytes += static_cast<long long>(cell.text.size());
    return static_cast<double>(bytes) / (1024.0 * 1024.0);
}

QualityMetrics compute_metrics(const TableSnapshot& table, const CandidateKeySet& keys, int k_max) {
    QualityMetrics out;
    out.table = table.name;
    if (table.rdi_override) {
        out.rdi = *table.rdi_override;
        out.rdi_overridden = true;
    } else {
        InconsistencyRisk risk = inconsistency_risk(table, k_max);
        out.rdi = risk.value;
        out.rdi_numerator = risk.numerator;
        out.rdi_denominator = risk.denominator;
        out.rdi_k_max = risk.k_max;
        out.rdi_exact = risk.exact;
    }
    out.complexity_weight = table.weight_override ? *table.weight_override : complexity_weight(table, keys);
    out.size_mb = table_size_mb(table);
    return out;
}

} // namespace normdebt
