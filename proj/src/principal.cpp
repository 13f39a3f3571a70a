#include "normdebt/principal.hpp"

#include "normdebt/errors.hpp"

#include <cmath>
#include <cstdio>

namespace normdebt {

long long per_task_cost_cents(const CostParameters& params) {
    return std::llround(params.hourly_wage * (params.minutes_per_task / 60.0) * 100.0);
}

std::string format_cents(long long cents) {
    char buf[32];
    bool neg = cents < 0;
    long long abs = neg ? -cents : cents;
    std::snprintf(buf, sizeof buf, "%s%lld.%02lld", neg ? "-" : "", abs / 100, abs % 100);
    return buf;
}

const char* to_string(TaskPlanSource source) {
    switch (source) {
    case TaskPlanSource::manifest_override: return "manifest";
    case TaskPlanSource::category_estimate: return "categories";
    case TaskPlanSource::heuristic: return "heuristic";
    }
    return "?";
}

int TaskCategoryCounts::total() const {
    return create_tables + create_triggers + drop_triggers + sql_statement_updates +
           data_migration + app_metadata + presentation_refactors;
}

RefactoringTaskPlan estimate_tasks(const TableSnapshot& table,
                                   const NormalFormAssessment& assessment,
                                   const std::optional<TaskCategoryCounts>& category_inputs,
                                   int decomposition_count) {
    if (assessment.insufficient_data || assessment.level == NormalFormLevel::nf4)
        throw NotADebtItemError("table '" + table.name + "' is not a debt item, no tasks to plan");

    RefactoringTaskPlan plan;
    plan.table = table.name;

    if (table.task_count_override) {
        plan.source = TaskPlanSource::manifest_override;
        plan.total = *table.task_count_override;
    } else if (category_inputs) {
        plan.source = TaskPlanSource::category_estimate;
        plan.categories = *category_inputs;
        plan.total = plan.categories.total();
    } else {
        // Splitting into d new tables needs the tables themselves, a
        // sync-trigger pair per table for the transition window, then one
        // migration and one metadata update per table.
        int d = decomposition_count;
        plan.source = TaskPlanSource::heuristic;
        plan.rough = true;
        plan.categories.create_tables = d;
        plan.categories.create_triggers = d;
        plan.categories.drop_triggers = d;
        plan.categories.data_migration = d;
        plan.categories.app_metadata = d;
        plan.total = plan.categories.total();
    }
    plan.degenerate = plan.total == 0;
    return plan;
}

PrincipalEstimate principal_of(const RefactoringTaskPlan& plan, const CostParameters& params) {
    PrincipalEstimate out;
    out.table = plan.table;
    out.task_count = plan.total;
    out.per_task_cost_cents = per_task_cost_cents(params);
    out.total_cost_cents = out.per_task_cost_cents * plan.total;
    out.currency_code = params.currency_code;
    return out;
}

} // namespace normdebt
