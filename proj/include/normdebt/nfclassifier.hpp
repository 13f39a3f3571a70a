#pragma once

#include "normdebt/depminer.hpp"
#include "normdebt/keydisc.hpp"
#include "normdebt/snapshot.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace normdebt {

enum class NormalFormLevel { unnormalized, nf1, nf2, nf3, bcnf, nf4 };

const char* to_string(NormalFormLevel level);

struct FirstNormalFormCheck {
    bool violation = false;
    std::string reason;           // human-readable, names the offending cell or column group
    int column = -1;              // multi-valued cell column, if any
    long long row = -1;           // multi-valued cell row, if any
    bool width_warning = false;   // wide table; never a violation by itself
};

struct FirstNormalFormOptions {
    std::string delimiters = ";,|"; // list separators that flag a multi-valued cell
    int width_threshold = 40;
    int repeating_group_min = 3;    // columns sharing a stem + numeric suffix
};

// (a) non-numeric cell containing a delimiter with non-space characters on
// both sides, (b) >= repeating_group_min columns sharing a stem with numeric
// suffixes. Width only warns.
FirstNormalFormCheck check_1nf(const TableSnapshot& table, const FirstNormalFormOptions& options = {});

struct DependencyViolation {
    NfStage stage = NfStage::nf2;
    AttributeSet lhs;
    AttributeSet rhs;
    bool mvd = false;
    std::vector<long long> evidence_rows; // demonstration rows; may be empty
};

struct NormalFormAssessment {
    std::string table;
    NormalFormLevel level = NormalFormLevel::nf4;
    std::optional<std::string> first_nf_reason;        // set iff level == unnormalized
    std::optional<DependencyViolation> violation;      // first violating dependency in canonical order
    std::vector<AttributeSet> keys_used;
    bool approximate = false;        // tau < 1 was in effect
    bool insufficient_data = false;  // 0 or 1 rows; level is nominal and excluded from debt lists
    std::vector<std::string> warnings;
};

// Domain-suggested dependency pairs; when a table has hints, candidate
// dependencies at every stage are restricted to them.
struct TableHints {
    std::vector<DependencyCandidate> pairs;
};

struct ClassifyOptions {
    FirstNormalFormOptions first_nf;
    std::optional<TableHints> hints;
};

// 1NF -> 2NF (skipped when there is no composite key) -> 3NF -> BCNF -> 4NF,
// stopping at the first stage with a holding violating dependency.
NormalFormAssessment classify(const TableSnapshot& table,
                              const CandidateKeySet& keys,
                              double tau = 1.0,
                              int max_lhs = 2,
                              const ClassifyOptions& options = {});

// Tables below 4NF with sufficient data, sorted by name.
std::vector<std::string> debt_items(const DatabaseSnapshot& snapshot,
                                    const std::vector<NormalFormAssessment>& assessments);

// Hints file: { "TableName": [ {"lhs": ["Col", ...], "rhs": ["Col", ...]}, ... ] }
std::map<std::string, std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>>
load_hints_file(const std::string& path);

} // namespace normdebt
