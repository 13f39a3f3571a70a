#pragma once

#include "normdebt/keydisc.hpp"
#include "normdebt/snapshot.hpp"

#include <cstdint>

namespace normdebt {

// rows minus distinct projected tuples; nulls compare equal here.
long long duplicate_count(const TableSnapshot& table, const AttributeSet& attrs);

struct InconsistencyRisk {
    long long numerator = 0;   // sum of duplicate counts over all attribute subsets of size <= k_max
    long long denominator = 0; // rows * columns
    double value = 0.0;        // numerator / denominator, full double precision
    int k_max = 0;
    bool exact = false;        // k_max covered every subset (k_max >= column count)
};

// Throws EmptyTableError on 0-row or 0-column tables. k_max <= 0 selects the
// default min(columns, 12).
InconsistencyRisk inconsistency_risk(const TableSnapshot& table, int k_max = 0);

// columns + declared indexes + declared foreign keys + candidate keys; the
// declared primary key is one of the candidate keys, so it counts once.
int complexity_weight(const TableSnapshot& table, const CandidateKeySet& keys);

// Override verbatim when present, else UTF-8 bytes of non-null cells over
// 2^20. Full precision; reports round to 3 decimals at the edge.
double table_size_mb(const TableSnapshot& table);

struct QualityMetrics {
    std::string table;
    double rdi = 0.0;
    long long rdi_numerator = 0;
    long long rdi_denominator = 0;
    int rdi_k_max = 0;
    bool rdi_exact = false;
    bool rdi_overridden = false;
    int complexity_weight = 0;
    double size_mb = 0.0;
};

// Bundles the three metrics, honoring manifest overrides for rdi and weight.
QualityMetrics compute_metrics(const TableSnapshot& table, const CandidateKeySet& keys, int k_max = 0);

} // namespace normdebt
