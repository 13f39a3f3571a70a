#include "normdebt/debtmetrics.hpp"
#include "normdebt/errors.hpp"
#include "normdebt/keydisc.hpp"

#include "tests/support/builders.hpp"
#include "tests/support/fixture_gen.hpp"
#include "tests/support/oracles.hpp"

#include <doctest.h>

using namespace normdebt;
using namespace testsupport;

TEST_CASE("duplicate counting projects and compares with null equality") {
    TableSnapshot t = make_table("t", {"a", "b"},
                                 {{"x", "1"}, {"x", "2"}, {"y", "1"}, {std::nullopt, "1"}, {std::nullopt, "2"}});
    CHECK(duplicate_count(t, attrs({0})) == 2);      // x twice, null twice
    CHECK(duplicate_count(t, attrs({1})) == 3);      // 1 three times, 2 twice
    CHECK(duplicate_count(t, attrs({0, 1})) == 0);
    CHECK(duplicate_count(make_table("e", {"a"}, {}), attrs({0})) == 0);
}

TEST_CASE("the worked two-column example scores exactly one third") {
    TableSnapshot t = make_table("t", {"a", "b"}, {{"1", "x"}, {"1", "y"}, {"2", "x"}});
    InconsistencyRisk r = inconsistency_risk(t);
    CHECK(r.numerator == 2);
    CHECK(r.denominator == 6);
    CHECK(r.value == doctest::Approx(1.0 / 3.0));
    CHECK(r.k_max == 2);
    CHECK(r.exact);
    CHECK(3 * r.numerator == r.denominator); // the ratio is exactly 1/3
}

TEST_CASE("the subset-size cap truncates the numerator") {
    TableSnapshot t = make_table("t", {"a", "b", "c"},
                                 {{"1", "x", "p"}, {"1", "x", "q"}, {"2", "y", "p"}});
    InconsistencyRisk capped = inconsistency_risk(t, 1);
    auto [num1, den] = naive_rdi(t, 1);
    CHECK(capped.numerator == num1);
    CHECK(capped.denominator == den);
    CHECK_FALSE(capped.exact);
    CHECK(capped.k_max == 1);

    InconsistencyRisk full = inconsistency_risk(t, 3);
    auto [num3, _] = naive_rdi(t, 3);
    CHECK(full.numerator == num3);
    CHECK(full.exact);
    CHECK(full.numerator >= capped.numerator);
}

TEST_CASE("redundancy matches exhaustive subset enumeration on random tables") {
    Rng rng(7041);
    for (int trial = 0; trial < 50; ++trial) {
        TableSnapshot t = random_table(rng, "t", 8, 30);
        int n = t.column_count();
        InconsistencyRisk r = inconsistency_risk(t, n);
        auto [num, den] = naive_rdi(t, n);
        CAPTURE(trial);
        CHECK(r.numerator == num);
        CHECK(r.denominator == den);
        CHECK(r.exact);
        CHECK(r.value == doctest::Approx(static_cast<double>(num) / static_cast<double>(den)));

        int k = 1 + trial % 3;
        InconsistencyRisk partial = inconsistency_risk(t, k);
        auto [pnum, pden] = naive_rdi(t, k);
        CHECK(partial.numerator == pnum);
        CHECK(partial.denominator == pden);
        CHECK(partial.exact == (k >= n));
    }
}

TEST_CASE("redundancy is monotone in the subset-size cap") {
    Rng rng(7042);
    for (int trial = 0; trial < 10; ++trial) {
        TableSnapshot t = random_table(rng, "t", 6, 25);
        long long prev = 0;
        for (int k = 1; k <= t.column_count(); ++k) {
            InconsistencyRisk r = inconsistency_risk(t, k);
            CHECK(r.numerator >= prev);
            prev = r.numerator;
        }
    }
}

TEST_CASE("the default cap is the column count, bounded at twelve") {
    TableSnapshot narrow = make_table("t", {"a", "b"}, {{"1", "2"}, {"3", "4"}});
    CHECK(inconsistency_risk(narrow).k_max == 2);
    CHECK(inconsistency_risk(narrow).exact);

    std::vector<std::string> cols;
    for (int i = 0; i < 13; ++i) cols.push_back(std::string(1, char('a' + i)));
    std::vector<Row> rows;
    for (int r = 0; r < 3; ++r) {
        Row row;
        for (int c = 0; c < 13; ++c) row.push_back("v" + std::to_string((r + c) % 2));
        rows.push_back(std::move(row));
    }
    TableSnapshot wide = make_table("wide", cols, rows);
    InconsistencyRisk r = inconsistency_risk(wide);
    CHECK(r.k_max == 12);
    CHECK_FALSE(r.exact);
}

TEST_CASE("empty tables cannot be scored") {
    CHECK_THROWS_WITH_AS(inconsistency_risk(make_table("bare", {"a"}, {})),
                         doctest::Contains("bare"), EmptyTableError);
    CHECK_THROWS_AS(inconsistency_risk(make_table("nocols", {}, {})), EmptyTableError);
}

TEST_CASE("complexity weight counts columns, indexes, foreign keys and keys") {
    TableSnapshot t = make_table("t", {"id", "ref", "v"},
                                 {{"1", "a", "x"}, {"2", "a", "y"}});
    t.declared_indexes = {attrs({1})};
    t.declared_foreign_keys = {{attrs({1}), "other"}};
    CandidateKeySet keys = find_candidate_keys(t);
    // id unique; v unique: two candidate keys.
    REQUIRE(keys.keys.size() == 2);
    CHECK(complexity_weight(t, keys) == 3 + 1 + 1 + 2);
}

TEST_CASE("size comes from the override or from non-null cell bytes") {
    TableSnapshot t = make_table("t", {"a", "b"}, {{"ab", std::nullopt}, {"c", ""}});
    CHECK(table_size_mb(t) == doctest::Approx(3.0 / (1024.0 * 1024.0)));
    t.size_mb_override = 4.125;
    CHECK(table_size_mb(t) == 4.125);
}

TEST_CASE("metric bundles honor manifest overrides") {
    TableSnapshot t = make_table("t", {"a", "b"}, {{"1", "x"}, {"1", "y"}, {"2", "x"}});
    CandidateKeySet keys = find_candidate_keys(t);

    QualityMetrics computed = compute_metrics(t, keys);
    CHECK_FALSE(computed.rdi_overridden);
    CHECK(computed.rdi == doctest::Approx(1.0 / 3.0));
    CHECK(computed.rdi_numerator == 2);
    CHECK(computed.rdi_denominator == 6);
    CHECK(computed.table == "t");

    t.rdi_override = 8.213;
    t.weight_override = 21;
    QualityMetrics overridden = compute_metrics(t, keys);
    CHECK(overridden.rdi_overridden);
    CHECK(overridden.rdi == 8.213);
    CHECK(overridden.rdi_numerator == 0);
    CHECK(overridden.rdi_denominator == 0);
    CHECK(overridden.complexity_weight == 21);
}
