#include "normdebt/csv.hpp"
#include "normdebt/errors.hpp"
#include "normdebt/snapshot.hpp"

#include "tests/support/builders.hpp"

#include <doctest.h>

using namespace normdebt;
using namespace testsupport;

TEST_CASE("csv parser handles plain and quoted fields") {
    auto records = parse_csv("a,b,c\n1,\"x,y\",3\n", "mem");
    REQUIRE(records.size() == 2);
    CHECK(records[0].fields.size() == 3);
    CHECK(records[1].fields[1].text == "x,y");
    CHECK(records[1].fields[1].quoted);
    CHECK_FALSE(records[1].fields[0].quoted);
}

TEST_CASE("csv parser handles doubled quotes, embedded newlines and CRLF") {
    auto records = parse_csv("h1,h2\r\n\"he said \"\"hi\"\"\",\"line1\nline2\"\r\n", "mem");
    REQUIRE(records.size() == 2);
    CHECK(records[1].fields[0].text == "he said \"hi\"");
    CHECK(records[1].fields[1].text == "line1\nline2");
}

TEST_CASE("csv parser keeps record start lines, counting multi-line fields") {
    auto records = parse_csv("h\n\"a\nb\"\nlast\n", "mem");
    REQUIRE(records.size() == 3);
    CHECK(records[0].line == 1);
    CHECK(records[1].line == 2);
    CHECK(records[2].line == 4); // the quoted field spanned lines 2-3
}

TEST_CASE("csv parser tolerates a missing trailing newline and skips blank lines") {
    auto records = parse_csv("a,b\n\n1,2", "mem");
    REQUIRE(records.size() == 2);
    CHECK(records[1].fields[0].text == "1");
}

TEST_CASE("csv parser rejects unterminated quotes with file and line") {
    try {
        parse_csv("h\n\"open\n", "data.csv");
        FAIL("expected DataFileError");
    } catch (const DataFileError& e) {
        CHECK(std::string(e.what()).find("data.csv:2") != std::string::npos);
        CHECK(std::string(e.what()).find("unterminated") != std::string::npos);
    }
}

TEST_CASE("csv escape quotes only when needed and round-trips") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    auto records = parse_csv(csv_escape("a,\"b\"\nc") + "\n", "mem");
    REQUIRE(records.size() == 1);
    CHECK(records[0].fields[0].text == "a,\"b\"\nc");
}

TEST_CASE("column kind inference picks the most specific match") {
    CHECK(infer_column_kind({"true", "False", "TRUE"}) == ColumnKind::boolean);
    CHECK(infer_column_kind({"1", "-42", "+7"}) == ColumnKind::integer);
    CHECK(infer_column_kind({"1", "2.5"}) == ColumnKind::decimal);
    CHECK(infer_column_kind({"1.5e3", ".5"}) == ColumnKind::decimal);
    CHECK(infer_column_kind({"2024-01-02", "2024-01-02 10:00:00"}) == ColumnKind::date_like);
    CHECK(infer_column_kind({"2024-01-02T10:00"}) == ColumnKind::date_like);
    CHECK(infer_column_kind({"1", "x"}) == ColumnKind::text);
    CHECK(infer_column_kind({"2024-13-99x"}) == ColumnKind::text);
    CHECK(infer_column_kind({}) == ColumnKind::text);
    CHECK(infer_column_kind({"", "  "}) == ColumnKind::text);
}

TEST_CASE("attribute sets sort, dedupe and support set algebra") {
    AttributeSet a({3, 1, 3, 2});
    CHECK(a.idx == std::vector<int>{1, 2, 3});
    CHECK(a.contains(2));
    CHECK_FALSE(a.contains(0));
    CHECK(AttributeSet({1}).is_subset_of(a));
    CHECK_FALSE(a.is_subset_of(AttributeSet({1})));
    CHECK(AttributeSet({0, 1}).set_union(AttributeSet({1, 2})).idx == std::vector<int>{0, 1, 2});
    CHECK(a.set_minus(AttributeSet({2})).idx == std::vector<int>{1, 3});
}

TEST_CASE("canonical order is size first, then lexicographic") {
    CHECK(canonical_less(AttributeSet({5}), AttributeSet({0, 1})));
    CHECK(canonical_less(AttributeSet({0, 2}), AttributeSet({0, 3})));
    CHECK_FALSE(canonical_less(AttributeSet({0, 1}), AttributeSet({9})));
}

TEST_CASE("snapshot round-trips through the loader with null and empty distinct") {
    auto dir = scratch_dir("unit_roundtrip");
    TableSnapshot t = make_table("orders", {"id", "note"},
                                 {{"1", std::nullopt}, {"2", std::string("")}, {"3", "x,y"}});
    t.declared_primary_key = attrs({0});
    std::string manifest = write_snapshot_dir(dir, "shop", {t});

    DatabaseSnapshot snap = load_snapshot(manifest);
    REQUIRE(snap.tables.size() == 1);
    const TableSnapshot& loaded = snap.tables[0];
    CHECK(snap.name == "shop");
    REQUIRE(loaded.rows.size() == 3);
    CHECK(loaded.rows[0][1].null);
    CHECK_FALSE(loaded.rows[1][1].null);
    CHECK(loaded.rows[1][1].text == "");
    CHECK(loaded.rows[2][1].text == "x,y");
    CHECK(loaded.columns[0].inferred_kind == ColumnKind::integer);
    CHECK(loaded.columns[1].nullable);
    REQUIRE(loaded.declared_primary_key.has_value());
    CHECK(loaded.declared_primary_key->idx == std::vector<int>{0});

    CHECK(snapshot_to_json(snap) == snapshot_to_json(load_snapshot(manifest)));
}

TEST_CASE("tables come back sorted by name regardless of manifest order") {
    auto dir = scratch_dir("unit_sorted");
    std::string manifest = write_snapshot_dir(dir, "db",
                                              {make_table("zeta", {"a"}, {{"1"}}),
                                               make_table("alpha", {"a"}, {{"1"}}),
                                               make_table("mid", {"a"}, {{"1"}})});
    DatabaseSnapshot snap = load_snapshot(manifest);
    REQUIRE(snap.tables.size() == 3);
    CHECK(snap.tables[0].name == "alpha");
    CHECK(snap.tables[1].name == "mid");
    CHECK(snap.tables[2].name == "zeta");
    CHECK(snap.table("mid").name == "mid");
    CHECK(snap.find_table("nope") == nullptr);
    CHECK_THROWS_AS(snap.table("nope"), UnknownTableError);
}

TEST_CASE("loader reports missing files by name") {
    CHECK_THROWS_WITH_AS(load_snapshot("/nonexistent/manifest.json"),
                         doctest::Contains("/nonexistent/manifest.json"), DataFileError);

    auto dir = scratch_dir("unit_missing_data");
    write_file(dir / "manifest.json",
               R"({"name": "db", "tables": [{"name": "t", "file": "gone.csv"}]})");
    try {
        load_snapshot((dir / "manifest.json").string());
        FAIL("expected DataFileError");
    } catch (const DataFileError& e) {
        CHECK(std::string(e.what()).find("gone.csv") != std::string::npos);
    }
}

TEST_CASE("loader rejects malformed manifests") {
    auto dir = scratch_dir("unit_bad_manifest");
    write_file(dir / "manifest.json", "{not json");
    CHECK_THROWS_AS(load_snapshot((dir / "manifest.json").string()), ManifestParseError);

    write_file(dir / "manifest.json", R"({"name": "db"})");
    CHECK_THROWS_AS(load_snapshot((dir / "manifest.json").string()), ManifestParseError);

    write_file(dir / "manifest.json", R"({"name": "db", "tables": [{"file": "x.csv"}]})");
    CHECK_THROWS_AS(load_snapshot((dir / "manifest.json").string()), ManifestParseError);
}

TEST_CASE("loader rejects rows with the wrong field count, naming file and line") {
    auto dir = scratch_dir("unit_arity");
    write_file(dir / "t.csv", "a,b\n1,2\n3\n");
    write_file(dir / "manifest.json", R"({"name": "db", "tables": [{"name": "t", "file": "t.csv"}]})");
    try {
        load_snapshot((dir / "manifest.json").string());
        FAIL("expected DataFileError");
    } catch (const DataFileError& e) {
        std::string what = e.what();
        CHECK(what.find("t.csv:3") != std::string::npos);
        CHECK(what.find("expected 2 fields, got 1") != std::string::npos);
    }
}

TEST_CASE("loader rejects duplicate and empty column names") {
    auto dir = scratch_dir("unit_columns");
    write_file(dir / "t.csv", "a,a\n1,2\n");
    write_file(dir / "manifest.json", R"({"name": "db", "tables": [{"name": "t", "file": "t.csv"}]})");
    CHECK_THROWS_WITH_AS(load_snapshot((dir / "manifest.json").string()),
                         doctest::Contains("duplicate column name 'a'"), DataFileError);

    write_file(dir / "t.csv", "a,\n1,2\n");
    CHECK_THROWS_WITH_AS(load_snapshot((dir / "manifest.json").string()),
                         doctest::Contains("empty column name"), DataFileError);
}

TEST_CASE("loader rejects duplicate table names") {
    auto dir = scratch_dir("unit_dup_table");
    write_file(dir / "t.csv", "a\n1\n");
    write_file(dir / "manifest.json",
               R"({"name": "db", "tables": [{"name": "t", "file": "t.csv"}, {"name": "t", "file": "t.csv"}]})");
    CHECK_THROWS_AS(load_snapshot((dir / "manifest.json").string()), DuplicateTableNameError);
}

TEST_CASE("declared primary keys must be non-null and unique") {
    auto dir = scratch_dir("unit_pk");
    TableSnapshot dup = make_table("dup", {"id", "v"}, {{"1", "a"}, {"1", "b"}});
    dup.declared_primary_key = attrs({0});
    CHECK_THROWS_WITH_AS(load_snapshot(write_snapshot_dir(dir / "dup", "db", {dup})),
                         doctest::Contains("is not unique"), PrimaryKeyViolationError);

    TableSnapshot withnull = make_table("withnull", {"id", "v"}, {{std::nullopt, "a"}, {"2", "b"}});
    withnull.declared_primary_key = attrs({0});
    CHECK_THROWS_WITH_AS(load_snapshot(write_snapshot_dir(dir / "null", "db", {withnull})),
                         doctest::Contains("contains null"), PrimaryKeyViolationError);
}

TEST_CASE("manifest overrides and declared structure carry through") {
    auto dir = scratch_dir("unit_overrides");
    TableSnapshot t = make_table("t", {"id", "ref"}, {{"1", "9"}, {"2", "9"}});
    t.declared_primary_key = attrs({0});
    t.declared_indexes = {attrs({1})};
    t.declared_foreign_keys = {{attrs({1}), "other"}};
    t.size_mb_override = 4.125;
    t.task_count_override = 50;
    t.rdi_override = 17.0;
    t.weight_override = 28;
    DatabaseSnapshot snap = load_snapshot(write_snapshot_dir(dir, "db", {t}));
    const TableSnapshot& loaded = snap.tables[0];
    CHECK(loaded.declared_indexes.size() == 1);
    REQUIRE(loaded.declared_foreign_keys.size() == 1);
    CHECK(loaded.declared_foreign_keys[0].references == "other");
    CHECK(loaded.size_mb_override == 4.125);
    CHECK(loaded.task_count_override == 50);
    CHECK(loaded.rdi_override == 17.0);
    CHECK(loaded.weight_override == 28);
    // "other" is not in the snapshot: warn, never fail.
    REQUIRE(snap.warnings.size() == 1);
    CHECK(snap.warnings[0].find("absent table 'other'") != std::string::npos);
}

TEST_CASE("unknown column names in the manifest are validation errors") {
    auto dir = scratch_dir("unit_unknown_col");
    write_file(dir / "t.csv", "a\n1\n");
    write_file(dir / "manifest.json",
               R"({"name": "db", "tables": [{"name": "t", "file": "t.csv", "primary_key": ["nope"]}]})");
    CHECK_THROWS_WITH_AS(load_snapshot((dir / "manifest.json").string()),
                         doctest::Contains("nope"), ManifestParseError);
}

TEST_CASE("cells are trimmed and quoted empties stay non-null") {
    auto dir = scratch_dir("unit_trim");
    write_file(dir / "t.csv", "a,b,c\n  x  , ,\"\"\n");
    write_file(dir / "manifest.json", R"({"name": "db", "tables": [{"name": "t", "file": "t.csv"}]})");
    DatabaseSnapshot snap = load_snapshot((dir / "manifest.json").string());
    const auto& row = snap.tables[0].rows[0];
    CHECK(row[0].text == "x");
    CHECK(row[1].null); // unquoted whitespace trims to empty
    CHECK_FALSE(row[2].null);
}

TEST_CASE("column lookup by name") {
    TableSnapshot t = make_table("t", {"alpha", "bravo"}, {});
    CHECK(t.column_index("bravo") == 1);
    CHECK_THROWS_AS(t.column_index("nope"), UnknownColumnError);
    CHECK(t.attrs_of({"bravo", "alpha"}).idx == std::vector<int>{0, 1});
    CHECK(t.column_list(attrs({0, 1}), "+") == "alpha+bravo");
}
