#pragma once

#include "normdebt/nfclassifier.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace normdebt {

struct CostParameters {
    double hourly_wage = 51.38;
    double minutes_per_task = 7.5;
    std::string currency_code = "USD";
};

// Half-up rounding to whole cents happens here, before any multiplication by
// task counts; totals are integer cent arithmetic from then on.
long long per_task_cost_cents(const CostParameters& params);

std::string format_cents(long long cents); // "321.00"

enum class TaskPlanSource { manifest_override, category_estimate, heuristic };

const char* to_string(TaskPlanSource source);

struct TaskCategoryCounts {
    int create_tables = 0;
    int create_triggers = 0;
    int drop_triggers = 0;
    int sql_statement_updates = 0;
    int data_migration = 0;
    int app_metadata = 0;
    int presentation_refactors = 0;

    int total() const;
};

struct RefactoringTaskPlan {
    std::string table;
    TaskCategoryCounts categories;
    int total = 0;
    TaskPlanSource source = TaskPlanSource::heuristic;
    bool rough = false;      // heuristic estimates are labeled rough
    bool degenerate = false; // zero-task plan; kept but flagged
};

// Priority of inputs: manifest task_count override, then explicit category
// counts, then the d-based heuristic (d tables created, d trigger pairs,
// d migrations, d metadata updates -> 5d tasks, 10 at the default d = 2).
// Throws NotADebtItemError when the assessment is 4NF or insufficient data.
RefactoringTaskPlan estimate_tasks(const TableSnapshot& table,
                                   const NormalFormAssessment& assessment,
                                   const std::optional<TaskCategoryCounts>& category_inputs = std::nullopt,
                                   int decomposition_count = 2);

struct PrincipalEstimate {
    std::string table;
    int task_count = 0;
    long long per_task_cost_cents = 0;
    long long total_cost_cents = 0;
    std::string currency_code = "USD";
};

PrincipalEstimate principal_of(const RefactoringTaskPlan& plan, const CostParameters& params = {});

} // namespace normdebt
