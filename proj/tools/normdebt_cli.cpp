#include "normdebt/errors.hpp"
#include "normdebt/pipeline.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace normdebt;

namespace {

// "1.0" for exact holds, shortest form otherwise (0.5, 0.95, 0.333333).
std::string fmt_conf(double v) {
    char buf[40];
    if (v == std::floor(v)) std::snprintf(buf, sizeof buf, "%.1f", v);
    else std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt_rdi(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<std::string> split_csv_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        size_t b = item.find_first_not_of(" \t");
        size_t e = item.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

std::string keys_text(const TableSnapshot& table, const std::vector<AttributeSet>& keys) {
    std::string out;
    for (size_t i = 0; i < keys.size(); ++i) {
        if (i) out += " ";
        out += "{" + table.column_list(keys[i], "+") + "}";
    }
    return out.empty() ? "(none)" : out;
}

std::optional<TableHints> hints_for(const RunConfig& config, const TableSnapshot& table) {
    if (config.hints_path.empty()) return std::nullopt;
    auto all = load_hints_file(config.hints_path);
    auto it = all.find(table.name);
    if (it == all.end()) return std::nullopt;
    TableHints hints;
    for (const auto& [lhs, rhs] : it->second)
        hints.pairs.push_back({table.attrs_of(lhs), table.attrs_of(rhs)});
    return hints;
}

NormalFormAssessment classify_one(const RunConfig& config, const TableSnapshot& table,
                                  const CandidateKeySet& keys) {
    ClassifyOptions options;
    options.first_nf = config.first_nf;
    options.hints = hints_for(config, table);
    return classify(table, keys, config.tau, config.max_lhs, options);
}

void print_warnings(const DatabaseSnapshot& snapshot) {
    for (const auto& w : snapshot.warnings) std::cerr << "warning: " << w << "\n";
}

std::vector<const TableSnapshot*> select_tables(const DatabaseSnapshot& snapshot, const std::string& name) {
    std::vector<const TableSnapshot*> out;
    if (name.empty())
        for (const auto& t : snapshot.tables) out.push_back(&t);
    else
        out.push_back(&snapshot.table(name));
    return out;
}

int cmd_analyze(const RunConfig& config) {
    if (config.out_dir.empty()) throw ValidationError("analyze needs --out");
    AnalysisResult result = run_analysis(config);
    print_warnings(result.snapshot);
    std::cout << write_outputs(config, result) << "\n";
    return 0;
}

int cmd_keys(const RunConfig& config, const std::string& table_name) {
    DatabaseSnapshot snapshot = load_snapshot(config.manifest_path);
    print_warnings(snapshot);
    for (const TableSnapshot* table : select_tables(snapshot, table_name)) {
        CandidateKeySet keys = find_candidate_keys(*table, config.max_key_arity);
        std::cout << table->name << ": " << keys_text(*table, keys.keys)
                  << (keys.insufficient_data ? " (insufficient data)" : "") << "\n";
    }
    return 0;
}

int cmd_fds(const RunConfig& config, const std::string& table_name,
            const std::string& lhs_text, const std::string& rhs_text) {
    DatabaseSnapshot snapshot = load_snapshot(config.manifest_path);
    const TableSnapshot& table = snapshot.table(table_name);
    AttributeSet lhs = table.attrs_of(split_csv_list(lhs_text));
    AttributeSet rhs = table.attrs_of(split_csv_list(rhs_text));
    FunctionalDependency fd = holds_fd(table, lhs, rhs, config.tau);
    std::cout << table.column_list(lhs, "+") << " → " << table.column_list(rhs, "+") << ": ";
    if (fd.holds && fd.min_confidence_observed >= 1.0) {
        std::cout << "holds, confidence " << fmt_conf(fd.min_confidence_observed) << "\n";
    } else if (fd.holds) {
        std::cout << "holds (approximate), confidence " << fmt_conf(fd.min_confidence_observed) << "\n";
    } else {
        std::cout << "fails, confidence " << fmt_conf(fd.min_confidence_observed);
        if (fd.witness) std::cout << ", witness rows " << fd.witness->first << "/" << fd.witness->second;
        std::cout << "\n";
    }
    return 0;
}

int cmd_nf(const RunConfig& config, const std::string& table_name) {
    DatabaseSnapshot snapshot = load_snapshot(config.manifest_path);
    print_warnings(snapshot);
    for (const TableSnapshot* table : select_tables(snapshot, table_name)) {
        CandidateKeySet keys = find_candidate_keys(*table, config.max_key_arity);
        NormalFormAssessment a = classify_one(config, *table, keys);
        std::cout << table->name << ": " << to_string(a.level);
        if (a.insufficient_data) {
            std::cout << " (insufficient data)";
        } else if (a.first_nf_reason) {
            std::cout << " (" << *a.first_nf_reason << ")";
        } else if (a.violation) {
            const DependencyViolation& v = *a.violation;
            std::cout << " (violating " << (v.mvd ? "MVD " : "FD ") << table->column_list(v.lhs, "+")
                      << (v.mvd ? " →→ " : " → ") << table->column_list(v.rhs, "+") << ")";
        }
        std::cout << "\n";
        for (const auto& w : a.warnings) std::cerr << "warning: " << w << "\n";
    }
    return 0;
}

int cmd_metrics(const RunConfig& config, const std::string& table_name) {
    DatabaseSnapshot snapshot = load_snapshot(config.manifest_path);
    print_warnings(snapshot);
    for (const TableSnapshot* table : select_tables(snapshot, table_name)) {
        CandidateKeySet keys = find_candidate_keys(*table, config.max_key_arity);
        QualityMetrics m = compute_metrics(*table, keys, config.k_max);
        char size[40];
        std::snprintf(size, sizeof size, "%.3f", m.size_mb);
        std::cout << table->name << ": rdi " << fmt_rdi(m.rdi)
                  << (m.rdi_overridden ? " (override)" : "") << ", weight " << m.complexity_weight
                  << ", size " << size << " MB\n";
    }
    return 0;
}

int cmd_principal(const RunConfig& config, const std::string& table_name) {
    DatabaseSnapshot snapshot = load_snapshot(config.manifest_path);
    print_warnings(snapshot);
    for (const TableSnapshot* table : select_tables(snapshot, table_name)) {
        CandidateKeySet keys = find_candidate_keys(*table, config.max_key_arity);
        NormalFormAssessment a = classify_one(config, *table, keys);
        if (table_name.empty() && (a.insufficient_data || a.level == NormalFormLevel::nf4)) continue;
        RefactoringTaskPlan plan = estimate_tasks(*table, a, std::nullopt, config.decomposition_count);
        PrincipalEstimate p = principal_of(plan, config.cost);
        std::cout << p.table << ": " << p.task_count << " tasks x $" << format_cents(p.per_task_cost_cents)
                  << " = $" << format_cents(p.total_cost_cents) << " (" << to_string(plan.source)
                  << (plan.rough ? ", rough" : "") << ")\n";
    }
    return 0;
}

int cmd_prioritize(const RunConfig& config) {
    AnalysisResult result = run_analysis(config);
    print_warnings(result.snapshot);
    if (result.report.rows.empty()) {
        std::cout << "no debt items\n";
        return 0;
    }
    for (const auto& row : result.report.rows) {
        std::cout << row.ranks.table << ": cost rank " << row.ranks.cost_rank << ", impact rank "
                  << row.ranks.impact_rank << ", " << to_string(row.decision_aggregate) << "\n";
    }
    for (const auto& opt : result.report.options) {
        std::cout << "option " << to_string(opt.view) << ":";
        for (size_t i = 0; i < opt.tables.size(); ++i) std::cout << (i ? ", " : " ") << opt.tables[i];
        if (opt.tables.empty()) std::cout << " (none)";
        std::cout << "; total " << format_cents(opt.total_cents) << "\n";
    }
    std::cout << "conventional:";
    for (size_t i = 0; i < result.report.conventional_tables.size(); ++i)
        std::cout << (i ? ", " : " ") << result.report.conventional_tables[i];
    std::cout << "; total " << format_cents(result.report.conventional_cents) << "\n";
    for (const auto& note : result.report.footnotes) std::cout << "note: " << note << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"normalization debt analyzer"};
    app.require_subcommand(1);

    RunConfig config;
    app.add_option("--manifest", config.manifest_path, "snapshot manifest (JSON)")->required();
    app.add_option("--out", config.out_dir, "output directory for reports and stage cache");
    app.add_option("--tau", config.tau, "approximate-FD confidence threshold, (0,1]");
    app.add_option("--max-key-arity", config.max_key_arity, "largest candidate key searched");
    app.add_option("--max-lhs", config.max_lhs, "largest dependency determinant tested");
    app.add_option("--k-max", config.k_max, "largest attribute subset in the rdi sum; 0 = min(columns, 12)");
    app.add_option("--wage", config.cost.hourly_wage, "hourly wage for principal estimates");
    app.add_option("--minutes-per-task", config.cost.minutes_per_task, "minutes per refactoring task");
    app.add_option("--jobs", config.jobs, "parallel per-table workers; never changes output bytes");
    app.add_option("--format", config.formats, "output formats")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    app.add_option("--hints", config.hints_path, "per-table dependency hints (JSON)");
    app.add_option("--decompose-count", config.decomposition_count,
                   "tables in the assumed decomposition for heuristic task plans");
    app.add_option("--nf1-delimiters", config.first_nf.delimiters, "cell list delimiters");
    app.add_option("--nf1-width-threshold", config.first_nf.width_threshold, "wide-table warning threshold");

    std::string table_name, lhs_text, rhs_text;

    CLI::App* analyze = app.add_subcommand("analyze", "run the full pipeline and write reports");
    CLI::App* keys = app.add_subcommand("keys", "discover candidate keys");
    keys->add_option("table", table_name, "restrict to one table");
    CLI::App* fds = app.add_subcommand("fds", "check one functional dependency");
    fds->add_option("table", table_name, "table to check")->required();
    fds->add_option("--lhs", lhs_text, "determinant columns, comma separated")->required();
    fds->add_option("--rhs", rhs_text, "dependent columns, comma separated")->required();
    CLI::App* nf = app.add_subcommand("nf", "classify normal forms");
    nf->add_option("table", table_name, "restrict to one table");
    CLI::App* metrics = app.add_subcommand("metrics", "compute rdi, weight and size");
    metrics->add_option("table", table_name, "restrict to one table");
    CLI::App* principal = app.add_subcommand("principal", "estimate normalization cost");
    principal->add_option("table", table_name, "restrict to one table");
    CLI::App* prioritize = app.add_subcommand("prioritize", "rank debt items and print options");

    for (CLI::App* sub : {analyze, keys, fds, nf, metrics, principal, prioritize}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (config.tau <= 0.0 || config.tau > 1.0) throw ValidationError("--tau must be in (0, 1]");
        if (config.max_key_arity < 1) throw ValidationError("--max-key-arity must be at least 1");
        if (config.max_lhs < 1) throw ValidationError("--max-lhs must be at least 1");
        if (config.k_max < 0) throw ValidationError("--k-max must be at least 0");
        if (config.jobs < 1) throw ValidationError("--jobs must be at least 1");
        if (config.decomposition_count < 1) throw ValidationError("--decompose-count must be at least 1");
        if (config.cost.hourly_wage <= 0.0) throw ValidationError("--wage must be positive");
        if (config.cost.minutes_per_task <= 0.0) throw ValidationError("--minutes-per-task must be positive");

        if (analyze->parsed()) return cmd_analyze(config);
        if (keys->parsed()) return cmd_keys(config, table_name);
        if (fds->parsed()) return cmd_fds(config, table_name, lhs_text, rhs_text);
        if (nf->parsed()) return cmd_nf(config, table_name);
        if (metrics->parsed()) return cmd_metrics(config, table_name);
        if (principal->parsed()) return cmd_principal(config, table_name);
        if (prioritize->parsed()) return cmd_prioritize(config);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const AnalysisError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
