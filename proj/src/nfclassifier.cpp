#include "normdebt/nfclassifier.hpp"

#include "normdebt/encoded_table.hpp"
#include "normdebt/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace normdebt {

const char* to_string(NormalFormLevel level) {
    switch (level) {
    case NormalFormLevel::unnormalized: return "UNNORMALIZED";
    case NormalFormLevel::nf1: return "1NF";
    case NormalFormLevel::nf2: return "2NF";
    case NormalFormLevel::nf3: return "3NF";
    case NormalFormLevel::bcnf: return "BCNF";
    case NormalFormLevel::nf4: return "4NF";
    }
    return "?";
}

namespace {

bool parses_numeric(const std::string& v) {
    if (v.empty()) return false;
    size_t i = 0;
    if (v[i] == '+' || v[i] == '-') ++i;
    size_t digits = 0;
    while (i < v.size() && std::isdigit(static_cast<unsigned char>(v[i]))) { ++i; ++digits; }
    if (i < v.size() && v[i] == '.') {
        ++i;
        while (i < v.size() && std::isdigit(static_cast<unsigned char>(v[i]))) { ++i; ++digits; }
    }
    return digits > 0 && i == v.size();
}

bool has_embedded_list(const std::string& text, const std::string& delimiters) {
    for (size_t i = 1; i + 1 < text.size(); ++i) {
        if (delimiters.find(text[i]) == std::string::npos) continue;
        if (!std::isspace(static_cast<unsigned char>(text[i - 1])) &&
            !std::isspace(static_cast<unsigned char>(text[i + 1])))
            return true;
    }
    return false;
}

// "phone12" -> ("phone", true); "phone" -> ("", false)
std::pair<std::string, bool> split_numeric_suffix(const std::string& name) {
    size_t end = name.size();
    while (end > 0 && std::isdigit(static_cast<unsigned char>(name[end - 1]))) --end;
    if (end == name.size() || end == 0) return {"", false};
    return {name.substr(0, end), true};
}

} // namespace

FirstNormalFormCheck check_1nf(const TableSnapshot& table, const FirstNormalFormOptions& options) {
    FirstNormalFormCheck result;
    result.width_warning = table.column_count() > options.width_threshold;

    for (size_t r = 0; r < table.rows.size() && !result.violation; ++r) {
        for (size_t c = 0; c < table.columns.size(); ++c) {
            const CellValue& cell = table.rows[r][c];
            if (cell.null || parses_numeric(cell.text)) continue;
            if (has_embedded_list(cell.text, options.delimiters)) {
                result.violation = true;
                result.column = static_cast<int>(c);
                result.row = static_cast<long long>(r);
                result.reason = "multi-valued cell in column '" + table.columns[c].name + "' (row " +
                                std::to_string(r) + "): \"" + cell.text + "\"";
                break;
            }
        }
    }
    if (!result.violation) {
        std::map<std::string, int> stems;
        for (const auto& col : table.columns) {
            auto [stem, ok] = split_numeric_suffix(col.name);
            if (ok) ++stems[stem];
        }
        for (const auto& [stem, count] : stems) {
            if (count >= options.repeating_group_min) {
                result.violation = true;
                result.reason = "repeating group: " + std::to_string(count) + " columns share the stem '" +
                                stem + "' with numeric suffixes";
                break;
            }
        }
    }
    return result;
}

namespace {

bool candidate_allowed(const DependencyCandidate& cand, const std::optional<TableHints>& hints,
                       int column_count, bool mvd_stage) {
    if (!hints) return true;
    for (const auto& h : hints->pairs) {
        if (!(h.lhs == cand.lhs)) continue;
        if (h.rhs == cand.rhs) return true;
        if (mvd_stage) {
            // The symmetric complement names the same dependency.
            std::vector<int> all(static_cast<size_t>(column_count));
            for (int i = 0; i < column_count; ++i) all[static_cast<size_t>(i)] = i;
            AttributeSet rest = AttributeSet(std::move(all)).set_minus(cand.lhs.set_union(cand.rhs));
            if (h.rhs == rest) return true;
        }
    }
    return false;
}

// Two rows demonstrating the redundancy: the first lhs group that reaches
// size two, in scan order.
std::vector<long long> fd_evidence(const EncodedTable& enc, const AttributeSet& lhs) {
    Partition part = partition_by(enc, lhs);
    std::vector<long long> first(static_cast<size_t>(part.groups), -1);
    for (size_t r = 0; r < part.group_of_row.size(); ++r) {
        auto g = static_cast<size_t>(part.group_of_row[r]);
        if (first[g] < 0) first[g] = static_cast<long long>(r);
        else return {first[g], static_cast<long long>(r)};
    }
    return {};
}

// First two rows of the first lhs group holding at least two distinct rhs
// values; deleting one of them must break an exact product of that shape.
std::vector<long long> mvd_evidence(const EncodedTable& enc, const AttributeSet& lhs, const AttributeSet& rhs) {
    Partition lhs_part = partition_by(enc, lhs);
    Partition rhs_part = partition_by(enc, rhs);
    std::vector<int32_t> first_rhs(static_cast<size_t>(lhs_part.groups), -1);
    int32_t chosen = -1;
    for (size_t r = 0; r < lhs_part.group_of_row.size(); ++r) {
        auto g = static_cast<size_t>(lhs_part.group_of_row[r]);
        if (first_rhs[g] < 0) first_rhs[g] = rhs_part.group_of_row[r];
        else if (rhs_part.group_of_row[r] != first_rhs[g]) {
            chosen = lhs_part.group_of_row[r];
            break;
        }
    }
    if (chosen < 0) return {};
    std::vector<long long> rows;
    for (size_t r = 0; r < lhs_part.group_of_row.size() && rows.size() < 2; ++r)
        if (lhs_part.group_of_row[r] == chosen) rows.push_back(static_cast<long long>(r));
    return rows;
}

} // namespace

NormalFormAssessment classify(const TableSnapshot& table,
                              const CandidateKeySet& keys,
                              double tau,
                              int max_lhs,
                              const ClassifyOptions& options) {
    NormalFormAssessment out;
    out.table = table.name;
    out.keys_used = keys.keys;
    out.approximate = tau < 1.0;

    if (table.row_count() <= 1) {
        // Every dependency holds vacuously; nothing to learn from this data.
        out.insufficient_data = true;
        out.level = NormalFormLevel::nf4;
        return out;
    }

    FirstNormalFormCheck first = check_1nf(table, options.first_nf);
    if (first.width_warning)
        out.warnings.push_back("table '" + table.name + "' is " + std::to_string(table.column_count()) +
                               " columns wide (threshold " + std::to_string(options.first_nf.width_threshold) + ")");
    if (first.violation) {
        out.level = NormalFormLevel::unnormalized;
        out.first_nf_reason = first.reason;
        return out;
    }

    EncodedTable enc = EncodedTable::from(table);
    int cols = table.column_count();

    bool has_composite_key = false;
    for (const auto& key : keys.keys)
        if (key.size() >= 2) has_composite_key = true;

    struct StagePlan {
        NfStage stage;
        NormalFormLevel level_on_violation;
        bool enabled;
    };
    const StagePlan plan[] = {
        {NfStage::nf2, NormalFormLevel::nf1, has_composite_key},
        {NfStage::nf3, NormalFormLevel::nf2, true},
        {NfStage::bcnf, NormalFormLevel::nf3, true},
    };

    for (const auto& step : plan) {
        if (!step.enabled) continue;
        for (const auto& cand : candidate_violating_fds(table, step.stage, keys, max_lhs)) {
            if (!candidate_allowed(cand, options.hints, cols, false)) continue;
            FunctionalDependency fd = holds_fd(enc, cand.lhs, cand.rhs, tau);
            if (!fd.holds) continue;
            out.level = step.level_on_violation;
            DependencyViolation v;
            v.stage = step.stage;
            v.lhs = cand.lhs;
            v.rhs = cand.rhs;
            v.evidence_rows = fd_evidence(enc, cand.lhs);
            out.violation = std::move(v);
            return out;
        }
    }

    for (const auto& cand : candidate_violating_fds(table, NfStage::nf4, keys, max_lhs)) {
        if (!candidate_allowed(cand, options.hints, cols, true)) continue;
        MultivaluedDependency mvd = holds_mvd(enc, cand.lhs, cand.rhs);
        if (!mvd.holds || mvd.trivial) continue;
        out.level = NormalFormLevel::bcnf;
        DependencyViolation v;
        v.stage = NfStage::nf4;
        v.lhs = cand.lhs;
        v.rhs = cand.rhs;
        v.mvd = true;
        v.evidence_rows = mvd_evidence(enc, cand.lhs, cand.rhs);
        out.violation = std::move(v);
        return out;
    }

    out.level = NormalFormLevel::nf4;
    return out;
}

std::vector<std::string> debt_items(const DatabaseSnapshot& snapshot,
                                    const std::vector<NormalFormAssessment>& assessments) {
    std::unordered_map<std::string, const NormalFormAssessment*> by_name;
    for (const auto& a : assessments) by_name[a.table] = &a;
    std::vector<std::string> out;
    for (const auto& t : snapshot.tables) {
        auto it = by_name.find(t.name);
        if (it == by_name.end()) continue;
        const NormalFormAssessment& a = *it->second;
        if (!a.insufficient_data && a.level < NormalFormLevel::nf4) out.push_back(t.name);
    }
    return out; // snapshot.tables is already name-sorted
}

std::map<std::string, std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>>
load_hints_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("hints file not found: " + path);
    nlohmann::json doc;
    try {
        std::ostringstream buf;
        buf << in.rdbuf();
        doc = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("hints file " + path + ": " + e.what());
    }
    if (!doc.is_object()) throw ValidationError("hints file " + path + ": expected an object keyed by table");

    std::map<std::string, std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>> out;
    for (const auto& [table, pairs] : doc.items()) {
        if (!pairs.is_array()) throw ValidationError("hints for table '" + table + "' must be an array");
        for (const auto& p : pairs) {
            if (!p.is_object() || !p.contains("lhs") || !p.contains("rhs"))
                throw ValidationError("hints for table '" + table + "' need 'lhs' and 'rhs' arrays");
            std::vector<std::string> lhs, rhs;
            for (const auto& c : p["lhs"]) lhs.push_back(c.get<std::string>());
            for (const auto& c : p["rhs"]) rhs.push_back(c.get<std::string>());
            out[table].emplace_back(std::move(lhs), std::move(rhs));
        }
    }
    return out;
}

} // namespace normdebt
