#pragma once

#include "normdebt/encoded_table.hpp"
#include "normdebt/keydisc.hpp"
#include "normdebt/snapshot.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace normdebt {

// An item is one (column, value) pair; a rule's sides are disjoint item sets
// over distinct columns. Nulls are first-class item values.
struct RuleItem {
    int column = 0;
    CellValue value;
};

bool item_less(const RuleItem& a, const RuleItem& b);

struct AssociationRule {
    std::vector<RuleItem> antecedent; // sorted by item_less
    std::vector<RuleItem> consequent;
    long long support_count = 0;
    double support = 0.0;    // fraction of rows containing antecedent ∪ consequent
    double confidence = 0.0; // support(ant ∪ cons) / support(ant)
};

// FP-growth. Returns every rule over frequent itemsets (support >=
// min_support, itemset size <= max_itemset_size) restricted to `columns`,
// sorted canonically by (antecedent, consequent). Exact counts; must match
// naive enumeration. Throws EmptyTableError on 0 rows.
std::vector<AssociationRule> mine_rules(const TableSnapshot& table,
                                        const AttributeSet& columns,
                                        double min_support,
                                        int max_itemset_size);

std::string rules_to_csv(const TableSnapshot& table, const std::vector<AssociationRule>& rules);

struct FunctionalDependency {
    AttributeSet lhs;
    AttributeSet rhs;
    bool holds = false;
    double min_confidence_observed = 1.0; // min over lhs groups of the largest agreeing fraction
    std::optional<std::pair<long long, long long>> witness; // first violating row pair, iff confidence < 1
};

// Exact partition check: group rows by lhs projection; a group's confidence
// is its largest rhs-agreeing subgroup over the group size. holds iff the
// minimum group confidence >= tau. rhs ⊆ lhs holds trivially.
FunctionalDependency holds_fd(const TableSnapshot& table,
                              const AttributeSet& lhs,
                              const AttributeSet& rhs,
                              double tau = 1.0);

// Same check against a prebuilt encoding; callers running many checks over
// one table (the classifier, the metrics pass) encode once and use these.
FunctionalDependency holds_fd(const EncodedTable& enc,
                              const AttributeSet& lhs,
                              const AttributeSet& rhs,
                              double tau = 1.0);

struct MultivaluedDependency {
    AttributeSet lhs;
    AttributeSet rhs;
    AttributeSet complement;
    bool holds = false;
    bool trivial = false; // empty effective rhs or empty complement
};

// Exact check on deduplicated rows: every lhs group must equal the Cartesian
// product of its distinct rhs and complement projections.
MultivaluedDependency holds_mvd(const TableSnapshot& table,
                                const AttributeSet& lhs,
                                const AttributeSet& rhs);

MultivaluedDependency holds_mvd(const EncodedTable& enc,
                                const AttributeSet& lhs,
                                const AttributeSet& rhs);

enum class NfStage { nf2, nf3, bcnf, nf4 };

const char* to_string(NfStage stage);

struct DependencyCandidate {
    AttributeSet lhs;
    AttributeSet rhs;
};

// Candidate dependencies whose holding would violate the given stage:
//   2NF:  proper nonempty subsets of composite keys -> each non-prime attribute
//   3NF:  non-prime sets (size <= max_lhs) -> each non-prime attribute outside lhs
//   BCNF: non-superkey sets (size <= max_lhs) -> each attribute outside lhs
//   4NF:  MVD candidates: non-superkey lhs (size <= max_lhs) -> attribute set,
//         nonempty complement, deduplicated against the symmetric complement
// Canonical order, no trivial pairs.
std::vector<DependencyCandidate> candidate_violating_fds(const TableSnapshot& table,
                                                         NfStage stage,
                                                         const CandidateKeySet& keys,
                                                         int max_lhs = 2);

} // namespace normdebt
