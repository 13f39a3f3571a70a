// End-to-end checks that the shipped behavior matches the published study:
// rank tables, repayment options, money arithmetic, oracle agreement for the
// dependency and redundancy machinery, classification of planted tables, and
// byte-determinism across worker counts. One PASS/FAIL line per criterion.

#include "normdebt/debtmetrics.hpp"
#include "normdebt/depminer.hpp"
#include "normdebt/keydisc.hpp"
#include "normdebt/nfclassifier.hpp"
#include "normdebt/pipeline.hpp"
#include "normdebt/principal.hpp"

#include "tests/support/builders.hpp"
#include "tests/support/fixture_gen.hpp"
#include "tests/support/oracles.hpp"
#include "tests/support/process.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace normdebt;
using namespace testsupport;

namespace {

std::string g_cli;
std::string g_casestudy;

bool g_ok = true;
std::ostringstream g_why;

void expect(bool cond, const std::string& what) {
    if (cond) return;
    g_ok = false;
    g_why << "    " << what << "\n";
}

template <typename T, typename U>
void expect_eq(const T& got, const U& want, const std::string& what) {
    if (got == want) return;
    g_ok = false;
    g_why << "    " << what << ": got " << got << ", want " << want << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

AnalysisResult analyze_casestudy() {
    RunConfig config;
    config.manifest_path = g_casestudy;
    return run_analysis(config);
}

NormalFormLevel classify_level(const TableSnapshot& table) {
    return classify(table, find_candidate_keys(table), 1.0, 2).level;
}

void check_case_study_ranks() {
    auto t0 = std::chrono::steady_clock::now();
    AnalysisResult result = analyze_casestudy();
    double secs = seconds_since(t0);
    expect(secs < 1.0, "analysis took " + std::to_string(secs) + "s, bound is 1s");

    expect_eq(result.snapshot.tables.size(), size_t{8}, "table count");
    expect_eq(result.debt_tables.size(), size_t{8}, "debt item count");
    expect_eq(result.report.rows.size(), size_t{8}, "report row count");
    if (result.report.rows.size() != 8) return;

    struct Expected {
        const char* table;
        const char* level;
        int cost, rdi, tc, tz, sum, impact;
        const char* decision;
    };
    const Expected expected[] = {
        {"Address", "BCNF", 5, 5, 5, 5, 15, 4, "DEFER"},
        {"Employee", "1NF", 6, 7, 6, 3, 16, 5, "DEFER"},
        {"EmployeePayHistory", "1NF", 2, 4, 2, 2, 8, 2, "BALANCED"},
        {"Product", "UNNORMALIZED", 7, 8, 7, 4, 19, 6, "DEFER"},
        {"ProductProductPhoto", "1NF", 4, 2, 1, 2, 5, 1, "DEFER"},
        {"SalesTaxRate", "BCNF", 1, 1, 3, 1, 5, 1, "BALANCED"},
        {"Vendor", "2NF", 3, 3, 4, 2, 9, 3, "BALANCED"},
        {"WorkOrder", "2NF", 1, 6, 4, 6, 16, 5, "NORMALIZE"},
    };
    for (size_t i = 0; i < 8; ++i) {
        const ReportRow& row = result.report.rows[i];
        const Expected& e = expected[i];
        std::string tag = std::string(e.table);
        expect_eq(row.ranks.table, std::string(e.table), tag + " position");
        expect_eq(std::string(to_string(row.level)), std::string(e.level), tag + " level");
        expect_eq(row.ranks.cost_rank, e.cost, tag + " cost rank");
        expect_eq(row.ranks.rdi_rank, e.rdi, tag + " rdi rank");
        expect_eq(row.ranks.tc_rank, e.tc, tag + " tc rank");
        expect_eq(row.ranks.tz_rank, e.tz, tag + " tz rank");
        expect_eq(row.ranks.impact_sum, e.sum, tag + " impact sum");
        expect_eq(row.ranks.impact_rank, e.impact, tag + " impact rank");
        expect_eq(std::string(to_string(row.decision_aggregate)), std::string(e.decision), tag + " decision");
    }
}

void check_case_study_options() {
    AnalysisResult result = analyze_casestudy();
    const PriorityReport& report = result.report;
    expect_eq(report.options.size(), size_t{4}, "option count");
    if (report.options.size() != 4) return;

    struct Expected {
        const char* view;
        std::vector<std::string> tables;
        long long cents;
    };
    const Expected expected[] = {
        {"aggregate", {"WorkOrder"}, 5136},
        {"rdi", {"Employee", "EmployeePayHistory", "Product", "WorkOrder"}, 53286},
        {"tc", {"SalesTaxRate", "Vendor", "WorkOrder"}, 16692},
        {"tz", {"WorkOrder"}, 5136},
    };
    for (size_t i = 0; i < 4; ++i) {
        const ViewOption& opt = report.options[i];
        std::string tag = std::string("option ") + expected[i].view;
        expect_eq(std::string(to_string(opt.view)), std::string(expected[i].view), tag + " view");
        expect(opt.tables == expected[i].tables, tag + " table selection");
        expect_eq(opt.total_cents, expected[i].cents, tag + " total cents");
    }

    expect_eq(report.conventional_tables.size(), size_t{8}, "conventional covers every debt item");
    expect_eq(report.conventional_cents, 79608LL, "conventional total cents");
    expect_eq(report.footnotes.size(), size_t{1}, "footnote count");
    if (!report.footnotes.empty()) {
        expect(report.footnotes[0].find("$796.08") != std::string::npos, "footnote quotes the total");
        expect(report.footnotes[0].find("$769.08") != std::string::npos,
               "footnote quotes the transposed variant");
        expect(report.footnotes[0].find("124 tasks") != std::string::npos, "footnote quotes the task count");
    }
}

void check_money() {
    expect_eq(per_task_cost_cents(CostParameters{}), 642LL, "default per-task cents");
    expect_eq(format_cents(642), std::string("6.42"), "default per-task rendering");
    expect_eq(per_task_cost_cents({51.0, 7.5, "USD"}), 638LL, "637.5 rounds half-up");
    expect_eq(per_task_cost_cents({50.96, 7.5, "USD"}), 637LL, "637.0 stays put");
    expect_eq(per_task_cost_cents({48.0, 7.5, "USD"}), 600LL, "whole-cent wage");

    struct Money {
        int tasks;
        long long cents;
    };
    const Money money[] = {{50, 32100}, {16, 10272}, {9, 5778}, {11, 7062},
                           {8, 5136},   {10, 6420},  {8, 5136}, {12, 7704}};
    long long sum = 0;
    for (const Money& m : money) {
        RefactoringTaskPlan plan;
        plan.table = "t";
        plan.total = m.tasks;
        PrincipalEstimate p = principal_of(plan);
        expect_eq(p.per_task_cost_cents, 642LL, std::to_string(m.tasks) + " tasks per-task cents");
        expect_eq(p.total_cost_cents, m.cents, std::to_string(m.tasks) + " tasks total cents");
        sum += p.total_cost_cents;
    }
    expect_eq(sum, 79608LL, "sum of the eight totals");
    expect_eq(format_cents(sum), std::string("796.08"), "sum rendering");

    // Cents are fixed before multiplying by the task count.
    RefactoringTaskPlan hundred;
    hundred.table = "t";
    hundred.total = 100;
    expect_eq(principal_of(hundred, {51.0, 7.5, "USD"}).total_cost_cents, 63800LL,
              "totals multiply the rounded per-task cents");
}

void check_fd_oracle() {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(8001);
    long long fd_checks = 0, rule_checks = 0;
    for (int trial = 0; trial < 100 && g_ok; ++trial) {
        TableSnapshot t = random_table(rng, "t", 5, 30, 3);
        int n = t.column_count();

        std::vector<std::vector<int>> determinants;
        for (int a = 0; a < n; ++a) determinants.push_back({a});
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) determinants.push_back({a, b});
        for (const auto& lhs : determinants) {
            for (int rhs = 0; rhs < n; ++rhs) {
                if (std::find(lhs.begin(), lhs.end(), rhs) != lhs.end()) continue;
                FunctionalDependency fd = holds_fd(t, AttributeSet(lhs), AttributeSet({rhs}));
                bool want = naive_fd_holds(t, lhs, {rhs});
                if (fd.holds != want)
                    expect(false, "trial " + std::to_string(trial) + ": verdict disagrees with enumeration");
                double conf = naive_min_confidence(t, lhs, {rhs});
                if (std::fabs(fd.min_confidence_observed - conf) > 1e-12)
                    expect(false, "trial " + std::to_string(trial) + ": confidence disagrees with enumeration");
                ++fd_checks;
            }
        }

        // Every mined rule must carry exact row-scan counts.
        std::vector<int> all;
        for (int c = 0; c < n; ++c) all.push_back(c);
        auto matches = [&](size_t r, const std::vector<RuleItem>& items) {
            for (const RuleItem& item : items) {
                const CellValue& cell = t.rows[r][static_cast<size_t>(item.column)];
                if (cell.null != item.value.null) return false;
                if (!cell.null && cell.text != item.value.text) return false;
            }
            return true;
        };
        for (const AssociationRule& rule : mine_rules(t, AttributeSet(all), 0.2, 2)) {
            long long ant = 0, both = 0;
            for (size_t r = 0; r < t.rows.size(); ++r) {
                if (!matches(r, rule.antecedent)) continue;
                ++ant;
                if (matches(r, rule.consequent)) ++both;
            }
            if (rule.support_count != both)
                expect(false, "trial " + std::to_string(trial) + ": rule support is not the scan count");
            if (std::fabs(rule.confidence - static_cast<double>(both) / static_cast<double>(ant)) > 1e-12)
                expect(false, "trial " + std::to_string(trial) + ": rule confidence is not the scan ratio");
            ++rule_checks;
        }
    }
    expect(fd_checks > 500, "only " + std::to_string(fd_checks) + " dependency checks ran");
    expect(rule_checks > 100, "only " + std::to_string(rule_checks) + " rule checks ran");
    double secs = seconds_since(t0);
    expect(secs < 30.0, "oracle sweep took " + std::to_string(secs) + "s, bound is 30s");
}

void check_rdi_oracle() {
    Rng rng(8002);
    for (int trial = 0; trial < 50 && g_ok; ++trial) {
        TableSnapshot t = random_table(rng, "t", 8, 25, 3);
        int n = t.column_count();

        InconsistencyRisk full = inconsistency_risk(t);
        auto [num, den] = naive_rdi(t, n);
        expect_eq(full.numerator, num, "trial " + std::to_string(trial) + " full numerator");
        expect_eq(full.denominator, den, "trial " + std::to_string(trial) + " full denominator");
        expect(full.exact, "trial " + std::to_string(trial) + " full sweep is exact");
        expect(std::fabs(full.value - static_cast<double>(num) / static_cast<double>(den)) < 1e-15,
               "trial " + std::to_string(trial) + " value is the exact ratio");

        int k = 1 + trial % 3;
        InconsistencyRisk part = inconsistency_risk(t, k);
        auto [pnum, pden] = naive_rdi(t, std::min(k, n));
        expect_eq(part.numerator, pnum, "trial " + std::to_string(trial) + " capped numerator");
        expect_eq(part.denominator, pden, "trial " + std::to_string(trial) + " capped denominator");
    }

    // Worked example: one duplicate in each single column, none across both.
    TableSnapshot ab = make_table("ab", {"alpha", "beta"}, {{"x", "1"}, {"x", "2"}, {"y", "1"}});
    InconsistencyRisk r = inconsistency_risk(ab);
    expect_eq(r.numerator, 2LL, "worked example numerator");
    expect_eq(r.denominator, 6LL, "worked example denominator");
    expect(std::fabs(r.value - 1.0 / 3.0) < 1e-15, "worked example value");
}

void check_classifier_levels() {
    Rng rng(8003);
    for (int i = 0; i < 30 && g_ok; ++i) {
        std::string tag = " (round " + std::to_string(i) + ")";
        expect(classify_level(make_unnormalized(rng, "t")) == NormalFormLevel::unnormalized,
               "flat-value violation missed" + tag);
        expect(classify_level(make_nf1(rng, "t")) == NormalFormLevel::nf1,
               "partial dependency missed" + tag);
        expect(classify_level(make_nf2(rng, "t")) == NormalFormLevel::nf2,
               "transitive dependency missed" + tag);
        expect(classify_level(make_nf3(rng, "t")) == NormalFormLevel::nf3,
               "non-key determinant missed" + tag);
        expect(classify_level(make_bcnf(rng, "t")) == NormalFormLevel::bcnf,
               "multivalued dependency missed" + tag);
        expect(classify_level(make_nf4(rng, "t")) == NormalFormLevel::nf4,
               "clean table misclassified" + tag);
    }
}

void check_mvd_sensitivity() {
    Rng rng(8004);
    for (int trial = 0; trial < 30 && g_ok; ++trial) {
        PlantedMvd plant;
        TableSnapshot t = make_bcnf(rng, "t", &plant);
        AttributeSet lhs({plant.x}), rhs({plant.y});
        expect(holds_mvd(t, lhs, rhs).holds, "trial " + std::to_string(trial) + ": planted product missed");
        expect(naive_mvd_holds(t, {plant.x}, {plant.y}),
               "trial " + std::to_string(trial) + ": oracle disagrees on the planted product");
        for (size_t r = 0; r < t.rows.size(); ++r) {
            TableSnapshot cut = t;
            cut.rows.erase(cut.rows.begin() + static_cast<long>(r));
            if (holds_mvd(cut, lhs, rhs).holds) {
                expect(false, "trial " + std::to_string(trial) + ": removing row " + std::to_string(r) +
                                  " left the product intact");
                break;
            }
        }
    }

    // Every exactly-holding dependency is also product-shaped.
    long long implications = 0;
    for (int trial = 0; trial < 30; ++trial) {
        TableSnapshot t = random_table(rng, "t", 4, 20, 2);
        int n = t.column_count();
        if (n < 3) continue;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (a == b || !naive_fd_holds(t, {a}, {b})) continue;
                if (!holds_mvd(t, AttributeSet({a}), AttributeSet({b})).holds)
                    expect(false, "trial " + std::to_string(trial) + ": exact dependency " +
                                      std::to_string(a) + " -> " + std::to_string(b) +
                                      " does not hold as a product");
                ++implications;
            }
        }
    }
    expect(implications > 0, "no exact dependencies arose across 30 random tables");
}

void check_determinism() {
    auto t0 = std::chrono::steady_clock::now();
    auto dir = scratch_dir("acceptance_determinism");
    std::string manifest = write_determinism_snapshot(dir / "snap");
    std::string base = shell_quote(g_cli) + " --manifest " + shell_quote(manifest);

    CommandResult serial = run_command(base + " --jobs 1 --out " + shell_quote((dir / "serial").string()) +
                                       " analyze");
    CommandResult parallel = run_command(base + " --jobs 4 --out " +
                                         shell_quote((dir / "parallel").string()) + " analyze");
    expect_eq(serial.exit_code, 0, "serial run exit code");
    expect_eq(parallel.exit_code, 0, "parallel run exit code");
    expect_eq(serial.out, std::string("64 tables, 23 debt items\n"), "serial census line");
    expect_eq(parallel.out, serial.out, "parallel census line");

    for (const char* name : {"assessments.csv", "metrics.csv", "principal.csv", "report.csv", "report.json",
                             "matrix_aggregate.svg", "matrix_rdi.svg", "matrix_tc.svg", "matrix_tz.svg"}) {
        std::string a = read_file(dir / "serial" / name);
        std::string b = read_file(dir / "parallel" / name);
        expect(!a.empty(), std::string(name) + " is empty");
        expect(a == b, std::string(name) + " differs between worker counts");
    }
    double secs = seconds_since(t0);
    expect(secs < 60.0, "determinism round-trip took " + std::to_string(secs) + "s, bound is 60s");
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: acceptance <normdebt-binary> <casestudy-manifest>\n");
        return 2;
    }
    g_cli = argv[1];
    g_casestudy = argv[2];

    struct Criterion {
        const char* name;
        void (*run)();
    };
    const Criterion criteria[] = {
        {"case study ranks and decisions reproduced", check_case_study_ranks},
        {"case study repayment options and conventional total", check_case_study_options},
        {"per-task cost rounding and integer-cent totals", check_money},
        {"dependency checks agree with exhaustive enumeration", check_fd_oracle},
        {"redundancy metric agrees with exhaustive enumeration", check_rdi_oracle},
        {"planted tables classify at every level", check_classifier_levels},
        {"product detection flips on any single row removal", check_mvd_sensitivity},
        {"output bytes identical across worker counts", check_determinism},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        g_ok = true;
        g_why.str("");
        try {
            c.run();
        } catch (const std::exception& e) {
            expect(false, std::string("unexpected exception: ") + e.what());
        }
        std::printf("%s: %s\n", g_ok ? "PASS" : "FAIL", c.name);
        std::fflush(stdout);
        if (!g_ok) {
            ++failed;
            std::fputs(g_why.str().c_str(), stderr);
        }
    }
    if (failed) std::fprintf(stderr, "%d of 8 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
