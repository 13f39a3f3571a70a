#pragma once

#include "normdebt/debtmetrics.hpp"
#include "normdebt/nfclassifier.hpp"
#include "normdebt/principal.hpp"

#include <string>
#include <vector>

namespace normdebt {

// Ascending dense ranks: smallest value gets 1, ties share a rank, the next
// distinct value is exactly one higher. Throws EmptyInputError.
std::vector<int> dense_rank(const std::vector<double>& values);

struct RankRecord {
    std::string table;
    int cost_rank = 0;
    int rdi_rank = 0;
    int tc_rank = 0; // table complexity (weight)
    int tz_rank = 0; // table size
    int impact_sum = 0;
    int impact_rank = 0; // dense rank of impact_sum
};

// Ranks rdi / weight / size ascending and dense-ranks their sum. Order of
// the result matches the input order. Throws EmptyInputError.
std::vector<RankRecord> impact_ranks(const std::vector<QualityMetrics>& metrics);

enum class Decision { normalize, balanced, defer };

const char* to_string(Decision decision);

// Strictly above the decision-matrix diagonal means normalize.
Decision decide(int cost_rank, int impact_rank);

enum class ViewKind { aggregate, rdi, tc, tz };

const char* to_string(ViewKind view);

struct ReportRow {
    RankRecord ranks;
    NormalFormLevel level = NormalFormLevel::nf4;
    double rdi = 0.0;
    int weight = 0;
    double size_mb = 0.0;
    int task_count = 0;
    long long principal_cents = 0;
    Decision decision_aggregate = Decision::defer;
    Decision decision_rdi = Decision::defer;
    Decision decision_tc = Decision::defer;
    Decision decision_tz = Decision::defer;
};

struct ViewOption {
    ViewKind view = ViewKind::aggregate;
    std::vector<std::string> tables; // the strictly-above-diagonal selection
    long long total_cents = 0;
};

struct PriorityReport {
    std::vector<ReportRow> rows; // sorted by table name
    std::vector<ViewOption> options; // aggregate, rdi, tc, tz
    std::vector<std::string> conventional_tables; // every debt table
    long long conventional_cents = 0;
    std::vector<std::string> footnotes;
};

// Inputs must cover exactly the same tables (InconsistentTableSetsError) and
// be nonempty (EmptyInputError). Input order does not matter.
PriorityReport build_report(const std::vector<NormalFormAssessment>& assessments,
                            const std::vector<QualityMetrics>& metrics,
                            const std::vector<PrincipalEstimate>& principals);

std::string report_to_csv(const PriorityReport& report, const std::string& config_echo);

std::string report_to_json(const PriorityReport& report, const std::string& config_echo);

// Scatter of cost rank (x) against the view's criterion rank (y) with one
// labeled circle per table and the y = x diagonal. Deterministic bytes.
// Throws EmptyInputError.
std::string emit_matrix_svg(ViewKind view, const PriorityReport& report, const std::string& config_echo);

} // namespace normdebt
