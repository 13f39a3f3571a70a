#include "normdebt/errors.hpp"
#include "normdebt/principal.hpp"

#include "tests/support/builders.hpp"

#include <doctest.h>

using namespace normdebt;
using namespace testsupport;

namespace {

NormalFormAssessment debt_assessment(const std::string& table) {
    NormalFormAssessment a;
    a.table = table;
    a.level = NormalFormLevel::nf1;
    return a;
}

} // namespace

TEST_CASE("the default parameters price a task at 642 cents") {
    CHECK(per_task_cost_cents(CostParameters{}) == 642); // 51.38/h for 7.5 min
}

TEST_CASE("rounding to cents is half-up and happens before multiplication") {
    CHECK(per_task_cost_cents({51.0, 7.5, "USD"}) == 638);  // 637.5 rounds up
    CHECK(per_task_cost_cents({50.96, 7.5, "USD"}) == 637); // 637.0 exactly
    CHECK(per_task_cost_cents({48.0, 7.5, "USD"}) == 600);

    RefactoringTaskPlan plan;
    plan.table = "t";
    plan.total = 100;
    PrincipalEstimate est = principal_of(plan, {51.0, 7.5, "USD"});
    CHECK(est.total_cost_cents == 63800); // not llround(637.5 * 100)
}

TEST_CASE("cents format as fixed-point currency text") {
    CHECK(format_cents(642) == "6.42");
    CHECK(format_cents(32100) == "321.00");
    CHECK(format_cents(79608) == "796.08");
    CHECK(format_cents(0) == "0.00");
    CHECK(format_cents(5) == "0.05");
    CHECK(format_cents(-5) == "-0.05");
    CHECK(format_cents(-32100) == "-321.00");
}

TEST_CASE("a manifest task count outranks categories and the heuristic") {
    TableSnapshot t = make_table("t", {"a"}, {{"1"}, {"1"}});
    t.task_count_override = 50;
    TaskCategoryCounts cats;
    cats.create_tables = 3;
    RefactoringTaskPlan plan = estimate_tasks(t, debt_assessment("t"), cats);
    CHECK(plan.total == 50);
    CHECK(plan.source == TaskPlanSource::manifest_override);
    CHECK_FALSE(plan.rough);
    CHECK(std::string(to_string(plan.source)) == "manifest");
}

TEST_CASE("explicit categories sum into the plan") {
    TableSnapshot t = make_table("t", {"a"}, {{"1"}, {"1"}});
    TaskCategoryCounts cats;
    cats.create_tables = 2;
    cats.create_triggers = 2;
    cats.drop_triggers = 2;
    cats.sql_statement_updates = 5;
    cats.data_migration = 2;
    cats.app_metadata = 2;
    cats.presentation_refactors = 1;
    CHECK(cats.total() == 16);
    RefactoringTaskPlan plan = estimate_tasks(t, debt_assessment("t"), cats);
    CHECK(plan.total == 16);
    CHECK(plan.source == TaskPlanSource::category_estimate);
    CHECK(plan.categories.sql_statement_updates == 5);
    CHECK_FALSE(plan.rough);
    CHECK(std::string(to_string(plan.source)) == "categories");
}

TEST_CASE("the heuristic plans five tasks per decomposed table") {
    TableSnapshot t = make_table("t", {"a"}, {{"1"}, {"1"}});
    RefactoringTaskPlan plan = estimate_tasks(t, debt_assessment("t"));
    CHECK(plan.total == 10); // d = 2 by default
    CHECK(plan.source == TaskPlanSource::heuristic);
    CHECK(plan.rough);
    CHECK(plan.categories.create_tables == 2);
    CHECK(plan.categories.create_triggers == 2);
    CHECK(plan.categories.drop_triggers == 2);
    CHECK(plan.categories.data_migration == 2);
    CHECK(plan.categories.app_metadata == 2);
    CHECK(std::string(to_string(plan.source)) == "heuristic");

    CHECK(estimate_tasks(t, debt_assessment("t"), std::nullopt, 3).total == 15);
}

TEST_CASE("clean or unjudged tables have no tasks to plan") {
    TableSnapshot t = make_table("t", {"a"}, {{"1"}});

    NormalFormAssessment clean;
    clean.table = "t";
    clean.level = NormalFormLevel::nf4;
    CHECK_THROWS_WITH_AS(estimate_tasks(t, clean),
                         doctest::Contains("table 't' is not a debt item"), NotADebtItemError);

    NormalFormAssessment thin;
    thin.table = "t";
    thin.level = NormalFormLevel::nf4;
    thin.insufficient_data = true;
    CHECK_THROWS_AS(estimate_tasks(t, thin), NotADebtItemError);
}

TEST_CASE("a zero-task override is degenerate but kept") {
    TableSnapshot t = make_table("t", {"a"}, {{"1"}, {"1"}});
    t.task_count_override = 0;
    RefactoringTaskPlan plan = estimate_tasks(t, debt_assessment("t"));
    CHECK(plan.total == 0);
    CHECK(plan.degenerate);
    PrincipalEstimate est = principal_of(plan);
    CHECK(est.total_cost_cents == 0);
}

TEST_CASE("principal is the task count times the per-task cost") {
    const std::pair<int, long long> cases[] = {{50, 32100}, {16, 10272}, {9, 5778}, {11, 7062},
                                               {8, 5136},   {10, 6420}, {12, 7704}};
    for (auto [tasks, cents] : cases) {
        RefactoringTaskPlan plan;
        plan.table = "t";
        plan.total = tasks;
        PrincipalEstimate est = principal_of(plan);
        CAPTURE(tasks);
        CHECK(est.per_task_cost_cents == 642);
        CHECK(est.total_cost_cents == cents);
        CHECK(est.task_count == tasks);
        CHECK(est.currency_code == "USD");
    }
}

TEST_CASE("alternate currencies pass through") {
    RefactoringTaskPlan plan;
    plan.table = "t";
    plan.total = 2;
    PrincipalEstimate est = principal_of(plan, {60.0, 10.0, "EUR"});
    CHECK(est.per_task_cost_cents == 1000);
    CHECK(est.total_cost_cents == 2000);
    CHECK(est.currency_code == "EUR");
}
