#include "normdebt/pipeline.hpp"

#include "normdebt/csv.hpp"
#include "normdebt/errors.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace fs = std::filesystem;

namespace normdebt {

std::string content_hash(const std::string& bytes) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string RunConfig::echo(const std::string& manifest_hash) const {
    nlohmann::ordered_json doc;
    doc["manifest"] = manifest_hash;
    doc["tau"] = tau;
    doc["max_key_arity"] = max_key_arity;
    doc["max_lhs"] = max_lhs;
    doc["k_max"] = k_max;
    doc["wage"] = cost.hourly_wage;
    doc["minutes_per_task"] = cost.minutes_per_task;
    doc["currency"] = cost.currency_code;
    doc["decomposition_count"] = decomposition_count;
    doc["formats"] = formats;
    doc["hints"] = hints_path;
    doc["nf1"] = {{"delimiters", first_nf.delimiters},
                  {"width_threshold", first_nf.width_threshold},
                  {"repeating_group_min", first_nf.repeating_group_min}};
    return doc.dump();
}

namespace {

using ordered_json = nlohmann::ordered_json;

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

NormalFormLevel level_from_string(const std::string& s) {
    for (auto level : {NormalFormLevel::unnormalized, NormalFormLevel::nf1, NormalFormLevel::nf2,
                       NormalFormLevel::nf3, NormalFormLevel::bcnf, NormalFormLevel::nf4})
        if (s == to_string(level)) return level;
    throw ValidationError("unknown normal form level: " + s);
}

NfStage stage_from_string(const std::string& s) {
    for (auto stage : {NfStage::nf2, NfStage::nf3, NfStage::bcnf, NfStage::nf4})
        if (s == to_string(stage)) return stage;
    throw ValidationError("unknown stage: " + s);
}

TaskPlanSource source_from_string(const std::string& s) {
    for (auto src : {TaskPlanSource::manifest_override, TaskPlanSource::category_estimate, TaskPlanSource::heuristic})
        if (s == to_string(src)) return src;
    throw ValidationError("unknown task plan source: " + s);
}

ordered_json attrs_json(const AttributeSet& attrs) {
    return ordered_json(attrs.idx);
}

AttributeSet attrs_from_json(const ordered_json& j) {
    return AttributeSet(j.get<std::vector<int>>());
}

ordered_json analysis_to_json(const RunConfig& config, const AnalysisResult& result) {
    ordered_json doc;
    doc["config"] = config.echo(result.manifest_hash);
    doc["keys"] = ordered_json::array();
    for (const auto& k : result.keys) {
        ordered_json jk;
        jk["table"] = k.table;
        jk["keys"] = ordered_json::array();
        for (const auto& key : k.keys) jk["keys"].push_back(attrs_json(key));
        jk["max_arity_searched"] = k.max_arity_searched;
        jk["insufficient_data"] = k.insufficient_data;
        doc["keys"].push_back(std::move(jk));
    }
    doc["assessments"] = ordered_json::array();
    for (const auto& a : result.assessments) {
        ordered_json ja;
        ja["table"] = a.table;
        ja["level"] = to_string(a.level);
        ja["first_nf_reason"] = a.first_nf_reason ? ordered_json(*a.first_nf_reason) : ordered_json(nullptr);
        if (a.violation) {
            ja["violation"] = {{"stage", to_string(a.violation->stage)},
                               {"lhs", attrs_json(a.violation->lhs)},
                               {"rhs", attrs_json(a.violation->rhs)},
                               {"mvd", a.violation->mvd},
                               {"evidence_rows", a.violation->evidence_rows}};
        } else {
            ja["violation"] = nullptr;
        }
        ja["keys_used"] = ordered_json::array();
        for (const auto& key : a.keys_used) ja["keys_used"].push_back(attrs_json(key));
        ja["approximate"] = a.approximate;
        ja["insufficient_data"] = a.insufficient_data;
        ja["warnings"] = a.warnings;
        doc["assessments"].push_back(std::move(ja));
    }
    doc["debt_tables"] = result.debt_tables;
    doc["metrics"] = ordered_json::array();
    for (const auto& m : result.metrics) {
        doc["metrics"].push_back({{"table", m.table},
                                  {"rdi", m.rdi},
                                  {"rdi_numerator", m.rdi_numerator},
                                  {"rdi_denominator", m.rdi_denominator},
                                  {"rdi_k_max", m.rdi_k_max},
                                  {"rdi_exact", m.rdi_exact},
                                  {"rdi_overridden", m.rdi_overridden},
                                  {"complexity_weight", m.complexity_weight},
                                  {"size_mb", m.size_mb}});
    }
    doc["plans"] = ordered_json::array();
    for (const auto& p : result.plans) {
        doc["plans"].push_back({{"table", p.table},
                                {"categories",
                                 {{"create_tables", p.categories.create_tables},
                                  {"create_triggers", p.categories.create_triggers},
                                  {"drop_triggers", p.categories.drop_triggers},
                                  {"sql_statement_updates", p.categories.sql_statement_updates},
                                  {"data_migration", p.categories.data_migration},
                                  {"app_metadata", p.categories.app_metadata},
                                  {"presentation_refactors", p.categories.presentation_refactors}}},
                                {"total", p.total},
                                {"source", to_string(p.source)},
                                {"rough", p.rough},
                                {"degenerate", p.degenerate}});
    }
    doc["principals"] = ordered_json::array();
    for (const auto& p : result.principals) {
        doc["principals"].push_back({{"table", p.table},
                                     {"task_count", p.task_count},
                                     {"per_task_cost_cents", p.per_task_cost_cents},
                                     {"total_cost_cents", p.total_cost_cents},
                                     {"currency_code", p.currency_code}});
    }
    return doc;
}

// Rebuilds everything the analysis computed; the report is re-derived since
// build_report is cheap and deterministic. Throws on any shape mismatch; the
// caller treats that as a cache miss.
AnalysisResult analysis_from_json(const ordered_json& doc, DatabaseSnapshot snapshot,
                                  const std::string& manifest_hash) {
    AnalysisResult result;
    result.snapshot = std::move(snapshot);
    result.manifest_hash = manifest_hash;
    for (const auto& jk : doc.at("keys")) {
        CandidateKeySet k;
        k.table = jk.at("table").get<std::string>();
        for (const auto& key : jk.at("keys")) k.keys.push_back(attrs_from_json(key));
        k.max_arity_searched = jk.at("max_arity_searched").get<int>();
        k.insufficient_data = jk.at("insufficient_data").get<bool>();
        result.keys.push_back(std::move(k));
    }
    for (const auto& ja : doc.at("assessments")) {
        NormalFormAssessment a;
        a.table = ja.at("table").get<std::string>();
        a.level = level_from_string(ja.at("level").get<std::string>());
        if (!ja.at("first_nf_reason").is_null()) a.first_nf_reason = ja.at("first_nf_reason").get<std::string>();
        if (!ja.at("violation").is_null()) {
            const auto& jv = ja.at("violation");
            DependencyViolation v;
            v.stage = stage_from_string(jv.at("stage").get<std::string>());
            v.lhs = attrs_from_json(jv.at("lhs"));
            v.rhs = attrs_from_json(jv.at("rhs"));
            v.mvd = jv.at("mvd").get<bool>();
            v.evidence_rows = jv.at("evidence_rows").get<std::vector<long long>>();
            a.violation = std::move(v);
        }
        for (const auto& key : ja.at("keys_used")) a.keys_used.push_back(attrs_from_json(key));
        a.approximate = ja.at("approximate").get<bool>();
        a.insufficient_data = ja.at("insufficient_data").get<bool>();
        a.warnings = ja.at("warnings").get<std::vector<std::string>>();
        result.assessments.push_back(std::move(a));
    }
    result.debt_tables = doc.at("debt_tables").get<std::vector<std::string>>();
    for (const auto& jm : doc.at("metrics")) {
        QualityMetrics m;
        m.table = jm.at("table").get<std::string>();
        m.rdi = jm.at("rdi").get<double>();
        m.rdi_numerator = jm.at("rdi_numerator").get<long long>();
        m.rdi_denominator = jm.at("rdi_denominator").get<long long>();
        m.rdi_k_max = jm.at("rdi_k_max").get<int>();
        m.rdi_exact = jm.at("rdi_exact").get<bool>();
        m.rdi_overridden = jm.at("rdi_overridden").get<bool>();
        m.complexity_weight = jm.at("complexity_weight").get<int>();
        m.size_mb = jm.at("size_mb").get<double>();
        result.metrics.push_back(std::move(m));
    }
    for (const auto& jp : doc.at("plans")) {
        RefactoringTaskPlan p;
        p.table = jp.at("table").get<std::string>();
        const auto& jc = jp.at("categories");
        p.categories.create_tables = jc.at("create_tables").get<int>();
        p.categories.create_triggers = jc.at("create_triggers").get<int>();
        p.categories.drop_triggers = jc.at("drop_triggers").get<int>();
        p.categories.sql_statement_updates = jc.at("sql_statement_updates").get<int>();
        p.categories.data_migration = jc.at("data_migration").get<int>();
        p.categories.app_metadata = jc.at("app_metadata").get<int>();
        p.categories.presentation_refactors = jc.at("presentation_refactors").get<int>();
        p.total = jp.at("total").get<int>();
        p.source = source_from_string(jp.at("source").get<std::string>());
        p.rough = jp.at("rough").get<bool>();
        p.degenerate = jp.at("degenerate").get<bool>();
        result.plans.push_back(std::move(p));
    }
    for (const auto& jp : doc.at("principals")) {
        PrincipalEstimate p;
        p.table = jp.at("table").get<std::string>();
        p.task_count = jp.at("task_count").get<int>();
        p.per_task_cost_cents = jp.at("per_task_cost_cents").get<long long>();
        p.total_cost_cents = jp.at("total_cost_cents").get<long long>();
        p.currency_code = jp.at("currency_code").get<std::string>();
        result.principals.push_back(std::move(p));
    }
    return result;
}

PriorityReport rebuild_report(const AnalysisResult& result) {
    if (result.debt_tables.empty()) return {};
    std::vector<NormalFormAssessment> debt_assessments;
    std::unordered_map<std::string, const NormalFormAssessment*> by_name;
    for (const auto& a : result.assessments) by_name[a.table] = &a;
    for (const auto& name : result.debt_tables) debt_assessments.push_back(*by_name.at(name));
    return build_report(debt_assessments, result.metrics, result.principals);
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << bytes;
}

} // namespace

AnalysisResult run_analysis(const RunConfig& config) {
    DatabaseSnapshot snapshot = load_snapshot(config.manifest_path);
    std::string manifest_hash = content_hash(snapshot_to_json(snapshot));

    // Same snapshot bytes and same effective config mean the cached stage
    // output is valid for any jobs count.
    fs::path cache_file;
    if (!config.out_dir.empty()) {
        cache_file = fs::path(config.out_dir) / "cache" / (manifest_hash + ".json");
        if (fs::exists(cache_file)) {
            try {
                std::ifstream in(cache_file, std::ios::binary);
                ordered_json doc = ordered_json::parse(in);
                if (doc.at("config").get<std::string>() == config.echo(manifest_hash)) {
                    AnalysisResult cached = analysis_from_json(doc, std::move(snapshot), manifest_hash);
                    cached.report = rebuild_report(cached);
                    return cached;
                }
            } catch (const std::exception&) {
                // Unreadable or stale cache never blocks a fresh run.
            }
        }
    }

    std::map<std::string, std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>> hint_names;
    if (!config.hints_path.empty()) hint_names = load_hints_file(config.hints_path);

    AnalysisResult result;
    result.manifest_hash = manifest_hash;

    size_t n = snapshot.tables.size();
    result.keys.resize(n);
    result.assessments.resize(n);

    std::atomic<size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                const TableSnapshot& table = snapshot.tables[i];
                result.keys[i] = find_candidate_keys(table, config.max_key_arity);
                ClassifyOptions options;
                options.first_nf = config.first_nf;
                auto h = hint_names.find(table.name);
                if (h != hint_names.end()) {
                    TableHints hints;
                    for (const auto& [lhs, rhs] : h->second)
                        hints.pairs.push_back({table.attrs_of(lhs), table.attrs_of(rhs)});
                    options.hints = std::move(hints);
                }
                result.assessments[i] = classify(table, result.keys[i], config.tau, config.max_lhs, options);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(n);
            }
        }
    };
    int jobs = std::max(1, config.jobs);
    if (jobs == 1 || n < 2) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < std::min<int>(jobs, static_cast<int>(n)); ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    result.debt_tables = debt_items(snapshot, result.assessments);

    std::unordered_map<std::string, size_t> index_of;
    for (size_t i = 0; i < n; ++i) index_of[snapshot.tables[i].name] = i;
    for (const auto& name : result.debt_tables) {
        size_t i = index_of.at(name);
        const TableSnapshot& table = snapshot.tables[i];
        result.metrics.push_back(compute_metrics(table, result.keys[i], config.k_max));
        RefactoringTaskPlan plan =
            estimate_tasks(table, result.assessments[i], std::nullopt, config.decomposition_count);
        result.principals.push_back(principal_of(plan, config.cost));
        result.plans.push_back(std::move(plan));
    }

    result.snapshot = std::move(snapshot);
    result.report = rebuild_report(result);
    return result;
}

std::string write_outputs(const RunConfig& config, const AnalysisResult& result) {
    if (config.out_dir.empty()) throw ValidationError("no output directory configured");
    fs::path out_dir(config.out_dir);
    fs::create_directories(out_dir / "cache");

    std::string echo = config.echo(result.manifest_hash);
    bool csv = false, json = false, svg = false;
    for (const auto& f : config.formats) {
        if (f == "csv") csv = true;
        else if (f == "json") json = true;
        else if (f == "svg") svg = true;
        else throw ValidationError("unknown output format: " + f);
    }

    if (csv) {
        write_file(out_dir / "assessments.csv", assessments_to_csv(result.snapshot, result.assessments, echo));
        write_file(out_dir / "metrics.csv", metrics_to_csv(result.metrics, echo));
        write_file(out_dir / "principal.csv", principal_to_csv(result.principals, echo));
        write_file(out_dir / "report.csv", report_to_csv(result.report, echo));
    }
    if (json) write_file(out_dir / "report.json", report_to_json(result.report, echo));
    if (svg && !result.report.rows.empty()) {
        for (ViewKind view : {ViewKind::aggregate, ViewKind::rdi, ViewKind::tc, ViewKind::tz}) {
            std::string name = std::string("matrix_") + to_string(view) + ".svg";
            write_file(out_dir / name, emit_matrix_svg(view, result.report, echo));
        }
    }

    write_file(out_dir / "cache" / (result.manifest_hash + ".json"),
               analysis_to_json(config, result).dump(2) + "\n");

    return std::to_string(result.snapshot.tables.size()) + " tables, " +
           std::to_string(result.debt_tables.size()) + " debt items";
}

namespace {

std::string violation_text(const TableSnapshot& table, const NormalFormAssessment& a) {
    if (a.first_nf_reason) return *a.first_nf_reason;
    if (!a.violation) return "";
    const DependencyViolation& v = *a.violation;
    std::string text = "fails " + std::string(to_string(v.stage)) + ": " + table.column_list(v.lhs, "+") +
                       (v.mvd ? " ->> " : " -> ") + table.column_list(v.rhs, "+");
    if (!v.evidence_rows.empty()) {
        text += "; rows ";
        for (size_t i = 0; i < v.evidence_rows.size(); ++i)
            text += (i ? "/" : "") + std::to_string(v.evidence_rows[i]);
    }
    return text;
}

std::string keys_text(const TableSnapshot& table, const std::vector<AttributeSet>& keys) {
    std::vector<std::string> parts;
    for (const auto& key : keys) parts.push_back("{" + table.column_list(key, "+") + "}");
    return join(parts, " ");
}

} // namespace

std::string assessments_to_csv(const DatabaseSnapshot& snapshot,
                               const std::vector<NormalFormAssessment>& assessments,
                               const std::string& config_echo) {
    std::unordered_map<std::string, const TableSnapshot*> by_name;
    for (const auto& t : snapshot.tables) by_name[t.name] = &t;

    std::ostringstream out;
    out << "# config: " << config_echo << "\n";
    out << "table,normal_form,violation,keys,approximate,insufficient_data,warnings\n";
    for (const auto& a : assessments) {
        auto it = by_name.find(a.table);
        if (it == by_name.end()) throw UnknownTableError("assessment for unknown table '" + a.table + "'");
        const TableSnapshot& table = *it->second;
        out << csv_escape(a.table) << ',' << to_string(a.level) << ','
            << csv_escape(violation_text(table, a)) << ',' << csv_escape(keys_text(table, a.keys_used)) << ','
            << (a.approximate ? "true" : "false") << ',' << (a.insufficient_data ? "true" : "false") << ','
            << csv_escape(join(a.warnings, "; ")) << "\n";
    }
    return out.str();
}

std::string metrics_to_csv(const std::vector<QualityMetrics>& metrics, const std::string& config_echo) {
    std::ostringstream out;
    out << "# config: " << config_echo << "\n";
    out << "table,rdi,rdi_numerator,rdi_denominator,rdi_k_max,rdi_exact,rdi_source,weight,size_mb\n";
    for (const auto& m : metrics) {
        char rdi[40], size[40];
        std::snprintf(rdi, sizeof rdi, "%.6g", m.rdi);
        std::snprintf(size, sizeof size, "%.3f", m.size_mb);
        out << csv_escape(m.table) << ',' << rdi << ',';
        if (m.rdi_overridden) out << ",,,";
        else
            out << m.rdi_numerator << ',' << m.rdi_denominator << ',' << m.rdi_k_max << ','
                << (m.rdi_exact ? "true" : "false");
        out << ',' << (m.rdi_overridden ? "override" : "computed") << ',' << m.complexity_weight << ','
            << size << "\n";
    }
    return out.str();
}

std::string principal_to_csv(const std::vector<PrincipalEstimate>& principals, const std::string& config_echo) {
    std::ostringstream out;
    out << "# config: " << config_echo << "\n";
    out << "table,task_count,per_task_usd,total_usd,currency\n";
    for (const auto& p : principals) {
        out << csv_escape(p.table) << ',' << p.task_count << ',' << format_cents(p.per_task_cost_cents) << ','
            << format_cents(p.total_cost_cents) << ',' << p.currency_code << "\n";
    }
    return out.str();
}

} // namespace normdebt
