// Python bindings for the normdebt core. Wrapper classes hold the C++
// structs by value and convert attribute sets to column names at the
// boundary, so the Python surface speaks names throughout.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "normdebt/debtmetrics.hpp"
#include "normdebt/depminer.hpp"
#include "normdebt/errors.hpp"
#include "normdebt/keydisc.hpp"
#include "normdebt/nfclassifier.hpp"
#include "normdebt/pipeline.hpp"
#include "normdebt/principal.hpp"
#include "normdebt/prioritizer.hpp"
#include "normdebt/snapshot.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace normdebt;

namespace {

std::vector<std::string> names_of(const TableSnapshot& t, const AttributeSet& attrs) {
    std::vector<std::string> out;
    out.reserve(attrs.idx.size());
    for (int i : attrs.idx) out.push_back(t.columns[static_cast<size_t>(i)].name);
    return out;
}

std::vector<std::vector<std::string>> names_of(const TableSnapshot& t,
                                               const std::vector<AttributeSet>& sets) {
    std::vector<std::vector<std::string>> out;
    out.reserve(sets.size());
    for (const auto& a : sets) out.push_back(names_of(t, a));
    return out;
}

std::vector<std::string> column_names(const TableSnapshot& t) {
    std::vector<std::string> out;
    out.reserve(t.columns.size());
    for (const auto& c : t.columns) out.push_back(c.name);
    return out;
}

ViewKind view_from_string(const std::string& view) {
    if (view == "aggregate") return ViewKind::aggregate;
    if (view == "rdi") return ViewKind::rdi;
    if (view == "tc") return ViewKind::tc;
    if (view == "tz") return ViewKind::tz;
    throw ValidationError("unknown view: " + view);
}

struct PyTable {
    std::shared_ptr<const TableSnapshot> t;
    const TableSnapshot& ref() const { return *t; }
};

struct PySnapshot {
    std::shared_ptr<const DatabaseSnapshot> db;

    PyTable table_at(size_t i) const {
        return PyTable{std::shared_ptr<const TableSnapshot>(db, &db->tables[i])};
    }
};

PyTable make_table(const std::string& name,
                   const std::vector<std::string>& columns,
                   const std::vector<std::vector<std::optional<std::string>>>& rows) {
    auto t = std::make_shared<TableSnapshot>();
    t->name = name;
    for (const auto& c : columns) t->columns.push_back(ColumnMeta{c, ColumnKind::text, false});
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw ValidationError("row width does not match the column count");
        std::vector<CellValue> cells;
        cells.reserve(row.size());
        for (const auto& cell : row)
            cells.push_back(cell ? CellValue::of(*cell) : CellValue::make_null());
        t->rows.push_back(std::move(cells));
    }
    for (size_t j = 0; j < t->columns.size(); ++j) {
        std::vector<std::string> raw;
        bool nullable = false;
        for (const auto& row : t->rows) {
            if (row[j].null) nullable = true;
            else raw.push_back(row[j].text);
        }
        t->columns[j].inferred_kind = infer_column_kind(raw);
        t->columns[j].nullable = nullable;
    }
    return PyTable{std::move(t)};
}

struct PyKeySet {
    CandidateKeySet raw;
    std::vector<std::vector<std::string>> key_names;
};

PyKeySet candidate_keys_py(const PyTable& table, int max_arity) {
    PyKeySet out;
    out.raw = find_candidate_keys(table.ref(), max_arity);
    out.key_names = names_of(table.ref(), out.raw.keys);
    return out;
}

struct PyAssessment {
    NormalFormAssessment raw;
    std::vector<std::string> columns; // index -> name, for violation rendering
};

ClassifyOptions hints_to_options(
    const PyTable& table,
    const std::optional<std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>>&
        hints) {
    ClassifyOptions options;
    if (hints) {
        TableHints th;
        for (const auto& [lhs, rhs] : *hints)
            th.pairs.push_back({table.ref().attrs_of(lhs), table.ref().attrs_of(rhs)});
        options.hints = std::move(th);
    }
    return options;
}

PyAssessment classify_py(
    const PyTable& table, double tau, int max_lhs, int max_key_arity,
    const std::optional<std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>>&
        hints) {
    PyAssessment out;
    auto keys = find_candidate_keys(table.ref(), max_key_arity);
    out.raw = classify(table.ref(), keys, tau, max_lhs, hints_to_options(table, hints));
    out.columns = column_names(table.ref());
    return out;
}

struct PyPlan {
    RefactoringTaskPlan raw;
};

struct PyPrincipal {
    PrincipalEstimate raw;
};

PyPlan plan_tasks_py(const PyTable& table, double tau, int max_lhs, int max_key_arity,
                     int decomposition_count) {
    auto keys = find_candidate_keys(table.ref(), max_key_arity);
    auto assessment = classify(table.ref(), keys, tau, max_lhs);
    return PyPlan{estimate_tasks(table.ref(), assessment, std::nullopt, decomposition_count)};
}

PyPrincipal principal_of_py(const PyPlan& plan, double wage, double minutes_per_task,
                            const std::string& currency) {
    return PyPrincipal{principal_of(plan.raw, CostParameters{wage, minutes_per_task, currency})};
}

struct PyReport {
    PriorityReport raw;
};

struct PyAnalysis {
    RunConfig config;
    std::shared_ptr<const AnalysisResult> res;

    std::string echo() const { return config.echo(res->manifest_hash); }

    std::string summary() const {
        return std::to_string(res->snapshot.tables.size()) + " tables, " +
               std::to_string(res->debt_tables.size()) + " debt items";
    }
};

PyAnalysis analyze_py(const std::string& manifest, const std::string& out_dir, double tau,
                      int max_key_arity, int max_lhs, int k_max, double wage,
                      double minutes_per_task, const std::string& currency,
                      int decomposition_count, int jobs,
                      const std::vector<std::string>& formats, const std::string& hints) {
    RunConfig config;
    config.manifest_path = manifest;
    config.out_dir = out_dir;
    config.tau = tau;
    config.max_key_arity = max_key_arity;
    config.max_lhs = max_lhs;
    config.k_max = k_max;
    config.cost = CostParameters{wage, minutes_per_task, currency};
    config.decomposition_count = decomposition_count;
    config.jobs = jobs;
    config.formats = formats;
    config.hints_path = hints;

    PyAnalysis out;
    out.config = config;
    out.res = std::make_shared<AnalysisResult>(run_analysis(config));
    if (!out_dir.empty()) write_outputs(config, *out.res);
    return out;
}

void bind_snapshot(py::module_& m) {
    py::class_<ColumnMeta>(m, "Column")
        .def_readonly("name", &ColumnMeta::name)
        .def_property_readonly("kind",
                               [](const ColumnMeta& c) { return std::string(to_string(c.inferred_kind)); })
        .def_readonly("nullable", &ColumnMeta::nullable);

    py::class_<PyTable>(m, "Table")
        .def_property_readonly("name", [](const PyTable& t) { return t.ref().name; })
        .def_property_readonly("columns", [](const PyTable& t) { return t.ref().columns; })
        .def_property_readonly("column_names", [](const PyTable& t) { return column_names(t.ref()); })
        .def_property_readonly("column_count", [](const PyTable& t) { return t.ref().column_count(); })
        .def_property_readonly("row_count", [](const PyTable& t) { return t.ref().row_count(); })
        .def("rows", [](const PyTable& t) {
            std::vector<std::vector<std::optional<std::string>>> out;
            out.reserve(t.ref().rows.size());
            for (const auto& row : t.ref().rows) {
                std::vector<std::optional<std::string>> cells;
                cells.reserve(row.size());
                for (const auto& cell : row)
                    cells.push_back(cell.null ? std::nullopt : std::optional<std::string>(cell.text));
                out.push_back(std::move(cells));
            }
            return out;
        });

    py::class_<PySnapshot>(m, "Snapshot")
        .def_property_readonly("name", [](const PySnapshot& s) { return s.db->name; })
        .def_property_readonly("warnings", [](const PySnapshot& s) { return s.db->warnings; })
        .def_property_readonly("tables",
                               [](const PySnapshot& s) {
                                   std::vector<PyTable> out;
                                   for (size_t i = 0; i < s.db->tables.size(); ++i)
                                       out.push_back(s.table_at(i));
                                   return out;
                               })
        .def("table",
             [](const PySnapshot& s, const std::string& name) {
                 const TableSnapshot& t = s.db->table(name); // throws UnknownTableError
                 return PyTable{std::shared_ptr<const TableSnapshot>(s.db, &t)};
             },
             py::arg("name"))
        .def("to_json", [](const PySnapshot& s) { return snapshot_to_json(*s.db); });

    m.def("load_snapshot",
          [](const std::string& manifest) {
              return PySnapshot{std::make_shared<DatabaseSnapshot>(load_snapshot(manifest))};
          },
          py::arg("manifest"));

    m.def("make_table", &make_table, py::arg("name"), py::arg("columns"), py::arg("rows"));
}

void bind_keys(py::module_& m) {
    py::class_<PyKeySet>(m, "KeySet")
        .def_property_readonly("table", [](const PyKeySet& k) { return k.raw.table; })
        .def_readonly("keys", &PyKeySet::key_names)
        .def_property_readonly("max_arity_searched",
                               [](const PyKeySet& k) { return k.raw.max_arity_searched; })
        .def_property_readonly("insufficient_data",
                               [](const PyKeySet& k) { return k.raw.insufficient_data; });

    m.def("candidate_keys", &candidate_keys_py, py::arg("table"), py::arg("max_arity") = 3);
}

void bind_dependencies(py::module_& m) {
    m.def("holds_fd",
          [](const PyTable& table, const std::vector<std::string>& lhs,
             const std::vector<std::string>& rhs, double tau) {
              auto fd = holds_fd(table.ref(), table.ref().attrs_of(lhs),
                                 table.ref().attrs_of(rhs), tau);
              py::dict out;
              out["lhs"] = names_of(table.ref(), fd.lhs);
              out["rhs"] = names_of(table.ref(), fd.rhs);
              out["holds"] = fd.holds;
              out["confidence"] = fd.min_confidence_observed;
              out["witness"] = fd.witness;
              return out;
          },
          py::arg("table"), py::arg("lhs"), py::arg("rhs"), py::arg("tau") = 1.0);

    m.def("holds_mvd",
          [](const PyTable& table, const std::vector<std::string>& lhs,
             const std::vector<std::string>& rhs) {
              auto mvd = holds_mvd(table.ref(), table.ref().attrs_of(lhs),
                                   table.ref().attrs_of(rhs));
              py::dict out;
              out["lhs"] = names_of(table.ref(), mvd.lhs);
              out["rhs"] = names_of(table.ref(), mvd.rhs);
              out["complement"] = names_of(table.ref(), mvd.complement);
              out["holds"] = mvd.holds;
              out["trivial"] = mvd.trivial;
              return out;
          },
          py::arg("table"), py::arg("lhs"), py::arg("rhs"));

    auto item_to_py = [](const TableSnapshot& t, const RuleItem& item) {
        auto value = item.value.null ? std::optional<std::string>()
                                     : std::optional<std::string>(item.value.text);
        return std::make_pair(t.columns[static_cast<size_t>(item.column)].name, value);
    };

    m.def("mine_rules",
          [item_to_py](const PyTable& table, double min_support, int max_itemset_size,
                       const std::optional<std::vector<std::string>>& columns) {
              AttributeSet attrs;
              if (columns) {
                  attrs = table.ref().attrs_of(*columns);
              } else {
                  std::vector<int> all(static_cast<size_t>(table.ref().column_count()));
                  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
                  attrs = AttributeSet(all);
              }
              auto rules = mine_rules(table.ref(), attrs, min_support, max_itemset_size);
              py::list out;
              for (const auto& rule : rules) {
                  py::dict r;
                  py::list ant, cons;
                  for (const auto& item : rule.antecedent) ant.append(item_to_py(table.ref(), item));
                  for (const auto& item : rule.consequent) cons.append(item_to_py(table.ref(), item));
                  r["antecedent"] = ant;
                  r["consequent"] = cons;
                  r["support_count"] = rule.support_count;
                  r["support"] = rule.support;
                  r["confidence"] = rule.confidence;
                  out.append(r);
              }
              return out;
          },
          py::arg("table"), py::arg("min_support"), py::arg("max_itemset_size") = 3,
          py::arg("columns") = std::nullopt);
}

void bind_classifier(py::module_& m) {
    py::class_<PyAssessment>(m, "Assessment")
        .def_property_readonly("table", [](const PyAssessment& a) { return a.raw.table; })
        .def_property_readonly("level",
                               [](const PyAssessment& a) { return std::string(to_string(a.raw.level)); })
        .def_property_readonly("first_nf_reason",
                               [](const PyAssessment& a) { return a.raw.first_nf_reason; })
        .def_property_readonly("violation",
                               [](const PyAssessment& a) -> py::object {
                                   if (!a.raw.violation) return py::none();
                                   const auto& v = *a.raw.violation;
                                   auto name = [&](const AttributeSet& attrs) {
                                       std::vector<std::string> out;
                                       for (int i : attrs.idx)
                                           out.push_back(a.columns[static_cast<size_t>(i)]);
                                       return out;
                                   };
                                   py::dict out;
                                   out["stage"] = std::string(to_string(v.stage));
                                   out["lhs"] = name(v.lhs);
                                   out["rhs"] = name(v.rhs);
                                   out["mvd"] = v.mvd;
                                   out["evidence_rows"] = v.evidence_rows;
                                   return out;
                               })
        .def_property_readonly("keys_used",
                               [](const PyAssessment& a) {
                                   std::vector<std::vector<std::string>> out;
                                   for (const auto& key : a.raw.keys_used) {
                                       std::vector<std::string> names;
                                       for (int i : key.idx)
                                           names.push_back(a.columns[static_cast<size_t>(i)]);
                                       out.push_back(std::move(names));
                                   }
                                   return out;
                               })
        .def_property_readonly("approximate", [](const PyAssessment& a) { return a.raw.approximate; })
        .def_property_readonly("insufficient_data",
                               [](const PyAssessment& a) { return a.raw.insufficient_data; })
        .def_property_readonly("warnings", [](const PyAssessment& a) { return a.raw.warnings; });

    m.def("classify", &classify_py, py::arg("table"), py::arg("tau") = 1.0, py::arg("max_lhs") = 2,
          py::arg("max_key_arity") = 3, py::arg("hints") = std::nullopt);
}

void bind_metrics(py::module_& m) {
    m.def("inconsistency_risk",
          [](const PyTable& table, int k_max) {
              auto risk = inconsistency_risk(table.ref(), k_max);
              py::dict out;
              out["value"] = risk.value;
              out["numerator"] = risk.numerator;
              out["denominator"] = risk.denominator;
              out["k_max"] = risk.k_max;
              out["exact"] = risk.exact;
              return out;
          },
          py::arg("table"), py::arg("k_max") = 0);

    py::class_<QualityMetrics>(m, "Metrics")
        .def_readonly("table", &QualityMetrics::table)
        .def_readonly("rdi", &QualityMetrics::rdi)
        .def_readonly("rdi_numerator", &QualityMetrics::rdi_numerator)
        .def_readonly("rdi_denominator", &QualityMetrics::rdi_denominator)
        .def_readonly("rdi_k_max", &QualityMetrics::rdi_k_max)
        .def_readonly("rdi_exact", &QualityMetrics::rdi_exact)
        .def_readonly("rdi_overridden", &QualityMetrics::rdi_overridden)
        .def_readonly("weight", &QualityMetrics::complexity_weight)
        .def_readonly("size_mb", &QualityMetrics::size_mb);

    m.def("table_metrics",
          [](const PyTable& table, int k_max, int max_key_arity) {
              return compute_metrics(table.ref(), find_candidate_keys(table.ref(), max_key_arity),
                                     k_max);
          },
          py::arg("table"), py::arg("k_max") = 0, py::arg("max_key_arity") = 3);
}

void bind_principal(py::module_& m) {
    py::class_<PyPlan>(m, "Plan")
        .def_property_readonly("table", [](const PyPlan& p) { return p.raw.table; })
        .def_property_readonly("total", [](const PyPlan& p) { return p.raw.total; })
        .def_property_readonly("source",
                               [](const PyPlan& p) { return std::string(to_string(p.raw.source)); })
        .def_property_readonly("rough", [](const PyPlan& p) { return p.raw.rough; })
        .def_property_readonly("degenerate", [](const PyPlan& p) { return p.raw.degenerate; })
        .def_property_readonly("categories", [](const PyPlan& p) {
            py::dict out;
            out["create_tables"] = p.raw.categories.create_tables;
            out["create_triggers"] = p.raw.categories.create_triggers;
            out["drop_triggers"] = p.raw.categories.drop_triggers;
            out["sql_statement_updates"] = p.raw.categories.sql_statement_updates;
            out["data_migration"] = p.raw.categories.data_migration;
            out["app_metadata"] = p.raw.categories.app_metadata;
            out["presentation_refactors"] = p.raw.categories.presentation_refactors;
            return out;
        });

    py::class_<PyPrincipal>(m, "Principal")
        .def_property_readonly("table", [](const PyPrincipal& p) { return p.raw.table; })
        .def_property_readonly("task_count", [](const PyPrincipal& p) { return p.raw.task_count; })
        .def_property_readonly("per_task_cents",
                               [](const PyPrincipal& p) { return p.raw.per_task_cost_cents; })
        .def_property_readonly("total_cents",
                               [](const PyPrincipal& p) { return p.raw.total_cost_cents; })
        .def_property_readonly("per_task_usd",
                               [](const PyPrincipal& p) { return format_cents(p.raw.per_task_cost_cents); })
        .def_property_readonly("total_usd",
                               [](const PyPrincipal& p) { return format_cents(p.raw.total_cost_cents); })
        .def_property_readonly("currency", [](const PyPrincipal& p) { return p.raw.currency_code; });

    m.def("plan_tasks", &plan_tasks_py, py::arg("table"), py::arg("tau") = 1.0,
          py::arg("max_lhs") = 2, py::arg("max_key_arity") = 3,
          py::arg("decomposition_count") = 2);

    m.def("principal_of", &principal_of_py, py::arg("plan"), py::arg("wage") = 51.38,
          py::arg("minutes_per_task") = 7.5, py::arg("currency") = std::string("USD"));

    m.def("per_task_cents",
          [](double wage, double minutes_per_task) {
              return per_task_cost_cents(CostParameters{wage, minutes_per_task, "USD"});
          },
          py::arg("wage") = 51.38, py::arg("minutes_per_task") = 7.5);

    m.def("format_cents", &format_cents, py::arg("cents"));
}

void bind_report(py::module_& m) {
    py::class_<PyReport>(m, "Report")
        .def_property_readonly("rows",
                               [](const PyReport& r) {
                                   py::list out;
                                   for (const auto& row : r.raw.rows) {
                                       py::dict d;
                                       d["table"] = row.ranks.table;
                                       d["normal_form"] = std::string(to_string(row.level));
                                       d["rdi"] = row.rdi;
                                       d["weight"] = row.weight;
                                       d["size_mb"] = row.size_mb;
                                       d["task_count"] = row.task_count;
                                       d["principal_cents"] = row.principal_cents;
                                       d["cost_rank"] = row.ranks.cost_rank;
                                       d["rdi_rank"] = row.ranks.rdi_rank;
                                       d["tc_rank"] = row.ranks.tc_rank;
                                       d["tz_rank"] = row.ranks.tz_rank;
                                       d["impact_sum"] = row.ranks.impact_sum;
                                       d["impact_rank"] = row.ranks.impact_rank;
                                       py::dict decisions;
                                       decisions["aggregate"] =
                                           std::string(to_string(row.decision_aggregate));
                                       decisions["rdi"] = std::string(to_string(row.decision_rdi));
                                       decisions["tc"] = std::string(to_string(row.decision_tc));
                                       decisions["tz"] = std::string(to_string(row.decision_tz));
                                       d["decisions"] = decisions;
                                       out.append(d);
                                   }
                                   return out;
                               })
        .def_property_readonly("options",
                               [](const PyReport& r) {
                                   py::list out;
                                   for (const auto& option : r.raw.options) {
                                       py::dict d;
                                       d["view"] = std::string(to_string(option.view));
                                       d["tables"] = option.tables;
                                       d["total_cents"] = option.total_cents;
                                       out.append(d);
                                   }
                                   return out;
                               })
        .def_property_readonly("conventional_tables",
                               [](const PyReport& r) { return r.raw.conventional_tables; })
        .def_property_readonly("conventional_cents",
                               [](const PyReport& r) { return r.raw.conventional_cents; })
        .def_property_readonly("footnotes", [](const PyReport& r) { return r.raw.footnotes; });
}

void bind_pipeline(py::module_& m) {
    py::class_<PyAnalysis>(m, "Analysis")
        .def_property_readonly("summary", [](const PyAnalysis& a) { return a.summary(); })
        .def_property_readonly("manifest_hash",
                               [](const PyAnalysis& a) { return a.res->manifest_hash; })
        .def_property_readonly("snapshot",
                               [](const PyAnalysis& a) {
                                   return PySnapshot{std::shared_ptr<const DatabaseSnapshot>(
                                       a.res, &a.res->snapshot)};
                               })
        .def_property_readonly("table_names",
                               [](const PyAnalysis& a) {
                                   std::vector<std::string> out;
                                   for (const auto& t : a.res->snapshot.tables) out.push_back(t.name);
                                   return out;
                               })
        .def_property_readonly("debt_tables",
                               [](const PyAnalysis& a) { return a.res->debt_tables; })
        .def_property_readonly("keys",
                               [](const PyAnalysis& a) {
                                   std::vector<PyKeySet> out;
                                   for (size_t i = 0; i < a.res->keys.size(); ++i)
                                       out.push_back(PyKeySet{
                                           a.res->keys[i],
                                           names_of(a.res->snapshot.tables[i], a.res->keys[i].keys)});
                                   return out;
                               })
        .def_property_readonly("assessments",
                               [](const PyAnalysis& a) {
                                   std::vector<PyAssessment> out;
                                   for (size_t i = 0; i < a.res->assessments.size(); ++i)
                                       out.push_back(PyAssessment{
                                           a.res->assessments[i],
                                           column_names(a.res->snapshot.tables[i])});
                                   return out;
                               })
        .def_property_readonly("metrics", [](const PyAnalysis& a) { return a.res->metrics; })
        .def_property_readonly("plans",
                               [](const PyAnalysis& a) {
                                   std::vector<PyPlan> out;
                                   for (const auto& plan : a.res->plans) out.push_back(PyPlan{plan});
                                   return out;
                               })
        .def_property_readonly("principals",
                               [](const PyAnalysis& a) {
                                   std::vector<PyPrincipal> out;
                                   for (const auto& p : a.res->principals)
                                       out.push_back(PyPrincipal{p});
                                   return out;
                               })
        .def_property_readonly("report", [](const PyAnalysis& a) { return PyReport{a.res->report}; })
        .def("report_csv",
             [](const PyAnalysis& a) { return report_to_csv(a.res->report, a.echo()); })
        .def("report_json",
             [](const PyAnalysis& a) { return report_to_json(a.res->report, a.echo()); })
        .def("matrix_svg",
             [](const PyAnalysis& a, const std::string& view) {
                 return emit_matrix_svg(view_from_string(view), a.res->report, a.echo());
             },
             py::arg("view") = std::string("aggregate"))
        .def("assessments_csv",
             [](const PyAnalysis& a) {
                 return assessments_to_csv(a.res->snapshot, a.res->assessments, a.echo());
             });

    m.def("analyze", &analyze_py, py::arg("manifest"), py::arg("out_dir") = std::string(),
          py::arg("tau") = 1.0, py::arg("max_key_arity") = 3, py::arg("max_lhs") = 2,
          py::arg("k_max") = 0, py::arg("wage") = 51.38, py::arg("minutes_per_task") = 7.5,
          py::arg("currency") = std::string("USD"), py::arg("decomposition_count") = 2,
          py::arg("jobs") = 1,
          py::arg("formats") = std::vector<std::string>{"csv", "json", "svg"},
          py::arg("hints") = std::string());

    m.def("content_hash", &content_hash, py::arg("bytes"));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Normal-form classification and normalization-debt analysis";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<AnalysisError>(m, "AnalysisError", PyExc_RuntimeError);

    bind_snapshot(m);
    bind_keys(m);
    bind_dependencies(m);
    bind_classifier(m);
    bind_metrics(m);
    bind_principal(m);
    bind_report(m);
    bind_pipeline(m);
}
