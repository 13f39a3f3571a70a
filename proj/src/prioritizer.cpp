#include "normdebt/prioritizer.hpp"

#include "normdebt/csv.hpp"
#include "normdebt/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <unordered_map>

namespace normdebt {

std::vector<int> dense_rank(const std::vector<double>& values) {
    if (values.empty()) throw EmptyInputError("dense_rank needs at least one value");
    std::vector<double> distinct(values);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> ranks;
    ranks.reserve(values.size());
    for (double v : values) {
        auto it = std::lower_bound(distinct.begin(), distinct.end(), v);
        ranks.push_back(static_cast<int>(it - distinct.begin()) + 1);
    }
    return ranks;
}

std::vector<RankRecord> impact_ranks(const std::vector<QualityMetrics>& metrics) {
    if (metrics.empty()) throw EmptyInputError("impact_ranks needs at least one table");
    std::vector<double> rdi, weight, size;
    for (const auto& m : metrics) {
        rdi.push_back(m.rdi);
        weight.push_back(static_cast<double>(m.complexity_weight));
        size.push_back(m.size_mb);
    }
    std::vector<int> rdi_r = dense_rank(rdi);
    std::vector<int> tc_r = dense_rank(weight);
    std::vector<int> tz_r = dense_rank(size);
    std::vector<double> sums;
    for (size_t i = 0; i < metrics.size(); ++i)
        sums.push_back(static_cast<double>(rdi_r[i] + tc_r[i] + tz_r[i]));
    std::vector<int> impact_r = dense_rank(sums);

    std::vector<RankRecord> out(metrics.size());
    for (size_t i = 0; i < metrics.size(); ++i) {
        out[i].table = metrics[i].table;
        out[i].rdi_rank = rdi_r[i];
        out[i].tc_rank = tc_r[i];
        out[i].tz_rank = tz_r[i];
        out[i].impact_sum = static_cast<int>(sums[i]);
        out[i].impact_rank = impact_r[i];
    }
    return out;
}

const char* to_string(Decision decision) {
    switch (decision) {
    case Decision::normalize: return "NORMALIZE";
    case Decision::balanced: return "BALANCED";
    case Decision::defer: return "DEFER";
    }
    return "?";
}

Decision decide(int cost_rank, int impact_rank) {
    if (impact_rank > cost_rank) return Decision::normalize;
    if (impact_rank == cost_rank) return Decision::balanced;
    return Decision::defer;
}

const char* to_string(ViewKind view) {
    switch (view) {
    case ViewKind::aggregate: return "aggregate";
    case ViewKind::rdi: return "rdi";
    case ViewKind::tc: return "tc";
    case ViewKind::tz: return "tz";
    }
    return "?";
}

namespace {

std::string fmt_rdi(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt_size(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

Decision view_decision(const ReportRow& row, ViewKind view) {
    switch (view) {
    case ViewKind::aggregate: return row.decision_aggregate;
    case ViewKind::rdi: return row.decision_rdi;
    case ViewKind::tc: return row.decision_tc;
    case ViewKind::tz: return row.decision_tz;
    }
    return Decision::defer;
}

int view_rank(const ReportRow& row, ViewKind view) {
    switch (view) {
    case ViewKind::aggregate: return row.ranks.impact_rank;
    case ViewKind::rdi: return row.ranks.rdi_rank;
    case ViewKind::tc: return row.ranks.tc_rank;
    case ViewKind::tz: return row.ranks.tz_rank;
    }
    return 0;
}

} // namespace

PriorityReport build_report(const std::vector<NormalFormAssessment>& assessments,
                            const std::vector<QualityMetrics>& metrics,
                            const std::vector<PrincipalEstimate>& principals) {
    if (assessments.empty() || metrics.empty() || principals.empty())
        throw EmptyInputError("priority report needs at least one table");

    std::map<std::string, const NormalFormAssessment*> by_assessment;
    std::map<std::string, const QualityMetrics*> by_metrics;
    std::map<std::string, const PrincipalEstimate*> by_principal;
    for (const auto& a : assessments) by_assessment[a.table] = &a;
    for (const auto& m : metrics) by_metrics[m.table] = &m;
    for (const auto& p : principals) by_principal[p.table] = &p;

    for (const auto& [name, _] : by_assessment) {
        if (!by_metrics.count(name))
            throw InconsistentTableSetsError("metrics are missing table '" + name + "'");
        if (!by_principal.count(name))
            throw InconsistentTableSetsError("principal estimates are missing table '" + name + "'");
    }
    for (const auto& [name, _] : by_metrics)
        if (!by_assessment.count(name))
            throw InconsistentTableSetsError("assessments are missing table '" + name + "'");
    for (const auto& [name, _] : by_principal)
        if (!by_assessment.count(name))
            throw InconsistentTableSetsError("assessments are missing table '" + name + "'");

    std::vector<std::string> names;
    for (const auto& [name, _] : by_assessment) names.push_back(name); // map order: sorted

    std::vector<QualityMetrics> ordered_metrics;
    std::vector<double> costs;
    for (const auto& name : names) {
        ordered_metrics.push_back(*by_metrics.at(name));
        costs.push_back(static_cast<double>(by_principal.at(name)->total_cost_cents));
    }
    std::vector<RankRecord> ranks = impact_ranks(ordered_metrics);
    std::vector<int> cost_ranks = dense_rank(costs);

    PriorityReport report;
    for (size_t i = 0; i < names.size(); ++i) {
        const auto& m = ordered_metrics[i];
        const auto& p = *by_principal.at(names[i]);
        ReportRow row;
        row.ranks = ranks[i];
        row.ranks.cost_rank = cost_ranks[i];
        row.level = by_assessment.at(names[i])->level;
        row.rdi = m.rdi;
        row.weight = m.complexity_weight;
        row.size_mb = m.size_mb;
        row.task_count = p.task_count;
        row.principal_cents = p.total_cost_cents;
        row.decision_aggregate = decide(row.ranks.cost_rank, row.ranks.impact_rank);
        row.decision_rdi = decide(row.ranks.cost_rank, row.ranks.rdi_rank);
        row.decision_tc = decide(row.ranks.cost_rank, row.ranks.tc_rank);
        row.decision_tz = decide(row.ranks.cost_rank, row.ranks.tz_rank);
        report.rows.push_back(std::move(row));
    }

    for (ViewKind view : {ViewKind::aggregate, ViewKind::rdi, ViewKind::tc, ViewKind::tz}) {
        ViewOption opt;
        opt.view = view;
        for (const auto& row : report.rows) {
            if (view_decision(row, view) != Decision::normalize) continue;
            opt.tables.push_back(row.ranks.table);
            opt.total_cents += row.principal_cents;
        }
        report.options.push_back(std::move(opt));
    }

    for (const auto& row : report.rows) {
        report.conventional_tables.push_back(row.ranks.table);
        report.conventional_cents += row.principal_cents;
    }

    if (report.conventional_cents == 79608)
        report.footnotes.push_back(
            "the conventional total of $796.08 (124 tasks at $6.42) also circulates with "
            "transposed digits as $769.08; the task arithmetic here supports 796.08");

    return report;
}

std::string report_to_csv(const PriorityReport& report, const std::string& config_echo) {
    std::ostringstream out;
    out << "# config: " << config_echo << "\n";
    out << "table,normal_form,rdi,weight,size_mb,task_count,principal_usd,"
           "cost_rank,rdi_rank,tc_rank,tz_rank,impact_sum,impact_rank,"
           "decision_aggregate,decision_rdi,decision_tc,decision_tz\n";
    for (const auto& row : report.rows) {
        out << csv_escape(row.ranks.table) << ',' << to_string(row.level) << ','
            << fmt_rdi(row.rdi) << ',' << row.weight << ',' << fmt_size(row.size_mb) << ','
            << row.task_count << ',' << format_cents(row.principal_cents) << ','
            << row.ranks.cost_rank << ',' << row.ranks.rdi_rank << ',' << row.ranks.tc_rank << ','
            << row.ranks.tz_rank << ',' << row.ranks.impact_sum << ',' << row.ranks.impact_rank << ','
            << to_string(row.decision_aggregate) << ',' << to_string(row.decision_rdi) << ','
            << to_string(row.decision_tc) << ',' << to_string(row.decision_tz) << "\n";
    }
    for (const auto& opt : report.options) {
        out << "# option " << to_string(opt.view) << ":";
        for (size_t i = 0; i < opt.tables.size(); ++i) out << (i ? ", " : " ") << opt.tables[i];
        if (opt.tables.empty()) out << " (none)";
        out << "; total " << format_cents(opt.total_cents) << "\n";
    }
    out << "# conventional:";
    for (size_t i = 0; i < report.conventional_tables.size(); ++i)
        out << (i ? ", " : " ") << report.conventional_tables[i];
    if (report.conventional_tables.empty()) out << " (none)";
    out << "; total " << format_cents(report.conventional_cents) << "\n";
    for (const auto& note : report.footnotes) out << "# note: " << note << "\n";
    return out.str();
}

std::string report_to_json(const PriorityReport& report, const std::string& config_echo) {
    nlohmann::ordered_json doc;
    doc["config"] = nlohmann::ordered_json::parse(config_echo);
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json r;
        r["table"] = row.ranks.table;
        r["normal_form"] = to_string(row.level);
        r["rdi"] = row.rdi;
        r["weight"] = row.weight;
        r["size_mb"] = row.size_mb;
        r["task_count"] = row.task_count;
        r["principal_cents"] = row.principal_cents;
        r["principal_usd"] = format_cents(row.principal_cents);
        r["cost_rank"] = row.ranks.cost_rank;
        r["rdi_rank"] = row.ranks.rdi_rank;
        r["tc_rank"] = row.ranks.tc_rank;
        r["tz_rank"] = row.ranks.tz_rank;
        r["impact_sum"] = row.ranks.impact_sum;
        r["impact_rank"] = row.ranks.impact_rank;
        r["decisions"] = {{"aggregate", to_string(row.decision_aggregate)},
                          {"rdi", to_string(row.decision_rdi)},
                          {"tc", to_string(row.decision_tc)},
                          {"tz", to_string(row.decision_tz)}};
        doc["rows"].push_back(std::move(r));
    }
    doc["options"] = nlohmann::ordered_json::array();
    for (const auto& opt : report.options) {
        doc["options"].push_back({{"view", to_string(opt.view)},
                                  {"tables", opt.tables},
                                  {"total_cents", opt.total_cents},
                                  {"total_usd", format_cents(opt.total_cents)}});
    }
    doc["conventional"] = {{"tables", report.conventional_tables},
                           {"total_cents", report.conventional_cents},
                           {"total_usd", format_cents(report.conventional_cents)}};
    doc["footnotes"] = report.footnotes;
    return doc.dump(2) + "\n";
}

std::string emit_matrix_svg(ViewKind view, const PriorityReport& report, const std::string& config_echo) {
    if (report.rows.empty()) throw EmptyInputError("matrix needs at least one table");

    int max_rank = 1;
    for (const auto& row : report.rows) {
        max_rank = std::max(max_rank, row.ranks.cost_rank);
        max_rank = std::max(max_rank, view_rank(row, view));
    }

    const int step = 60;
    const int margin = 70;
    const int label_pad = 150; // room for table names to the right of the last column
    int span = (max_rank - 1) * step;
    int width = margin * 2 + span + label_pad;
    int height = margin * 2 + span;
    auto px = [&](int rank) { return margin + (rank - 1) * step; };
    auto py = [&](int rank) { return height - margin - (rank - 1) * step; };

    std::string y_label = view == ViewKind::aggregate ? "impact rank" : std::string(to_string(view)) + " rank";

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<!-- config: " << config_echo << " -->\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    // Axes with one tick per rank.
    out << "  <line x1=\"" << px(1) << "\" y1=\"" << py(1) << "\" x2=\"" << px(max_rank) + step / 2
        << "\" y2=\"" << py(1) << "\" stroke=\"black\"/>\n";
    out << "  <line x1=\"" << px(1) << "\" y1=\"" << py(1) << "\" x2=\"" << px(1) << "\" y2=\""
        << py(max_rank) - step / 2 << "\" stroke=\"black\"/>\n";
    for (int r = 1; r <= max_rank; ++r) {
        out << "  <text x=\"" << px(r) << "\" y=\"" << py(1) + 20
            << "\" text-anchor=\"middle\">" << r << "</text>\n";
        out << "  <text x=\"" << px(1) - 12 << "\" y=\"" << py(r) + 4
            << "\" text-anchor=\"end\">" << r << "</text>\n";
    }
    out << "  <text x=\"" << px(1) + span / 2 << "\" y=\"" << height - 18
        << "\" text-anchor=\"middle\">cost rank</text>\n";
    out << "  <text x=\"20\" y=\"" << py(1) - span / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << py(1) - span / 2 << ")\">"
        << y_label << "</text>\n";

    // Equal-rank diagonal; points above it are the normalize region.
    out << "  <line class=\"diagonal\" x1=\"" << px(1) << "\" y1=\"" << py(1) << "\" x2=\""
        << px(max_rank) << "\" y2=\"" << py(max_rank)
        << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";

    // Stack labels of tables sharing a cell.
    std::map<std::pair<int, int>, int> seen;
    for (const auto& row : report.rows) {
        int x = px(row.ranks.cost_rank);
        int y = py(view_rank(row, view));
        int nth = seen[{x, y}]++;
        out << "  <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"5\" fill=\"black\"/>\n";
        out << "  <text x=\"" << x + 9 << "\" y=\"" << y + 4 + nth * 14 << "\">"
            << row.ranks.table << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace normdebt
