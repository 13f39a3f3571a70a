#include "normdebt/depminer.hpp"

#include "normdebt/csv.hpp"
#include "normdebt/encoded_table.hpp"
#include "normdebt/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

namespace normdebt {

namespace {

// Fractional support thresholds are compared with a small guard so that
// min_support = 1/rows admits count 1 regardless of binary rounding.
bool meets_support(long long count, long long rows, double min_support) {
    return static_cast<double>(count) + 1e-9 >= min_support * static_cast<double>(rows);
}

struct ItemCatalog {
    // item id -> (column, code); codes map back to cell text for output
    std::vector<std::pair<int, int32_t>> items;
    std::vector<std::vector<const std::string*>> text_of_code; // [column][code], null for code 0

    RuleItem to_rule_item(int item) const {
        auto [col, code] = items[static_cast<size_t>(item)];
        RuleItem out;
        out.column = col;
        if (code != 0) out.value = CellValue::of(*text_of_code[static_cast<size_t>(col)][static_cast<size_t>(code)]);
        return out;
    }
};

struct FpNode {
    int item = -1; // index into the frequent-item list
    long long count = 0;
    int parent = -1;
    std::unordered_map<int, int> children;
};

struct FpTree {
    std::vector<FpNode> nodes;                 // nodes[0] is the root
    std::vector<std::vector<int>> node_lists;  // per frequent item

    explicit FpTree(size_t item_count) {
        nodes.emplace_back();
        node_lists.resize(item_count);
    }

    // `path` must be ordered by item rank ascending.
    void insert(const std::vector<int>& path, long long count) {
        int cur = 0;
        for (int item : path) {
            auto it = nodes[static_cast<size_t>(cur)].children.find(item);
            if (it == nodes[static_cast<size_t>(cur)].children.end()) {
                int id = static_cast<int>(nodes.size());
                FpNode node;
                node.item = item;
                node.parent = cur;
                nodes.push_back(std::move(node));
                nodes[static_cast<size_t>(cur)].children.emplace(item, id);
                node_lists[static_cast<size_t>(item)].push_back(id);
                cur = id;
            } else {
                cur = it->second;
            }
            nodes[static_cast<size_t>(cur)].count += count;
        }
    }
};

using ItemsetCounts = std::map<std::vector<int>, long long>;

// Recursive FP-growth over a tree whose items are ranks into `rank_to_item`.
// Every frequent itemset (as sorted global item ids) lands in `out`.
void fp_mine(const FpTree& tree,
             const std::vector<int>& rank_to_item,
             const std::vector<long long>& rank_counts,
             const std::vector<int>& suffix_items,
             long long rows,
             double min_support,
             int max_itemset_size,
             ItemsetCounts& out) {
    for (int rank = static_cast<int>(rank_to_item.size()) - 1; rank >= 0; --rank) {
        long long count = rank_counts[static_cast<size_t>(rank)];
        if (!meets_support(count, rows, min_support)) continue;

        std::vector<int> itemset = suffix_items;
        itemset.push_back(rank_to_item[static_cast<size_t>(rank)]);
        std::sort(itemset.begin(), itemset.end());
        out[itemset] = count;

        if (static_cast<int>(itemset.size()) >= max_itemset_size) continue;

        // Conditional pattern base: prefix paths of every node holding this rank.
        std::vector<std::pair<std::vector<int>, long long>> base;
        std::vector<long long> cond_counts(static_cast<size_t>(rank), 0);
        for (int node_id : tree.node_lists[static_cast<size_t>(rank)]) {
            long long path_count = tree.nodes[static_cast<size_t>(node_id)].count;
            std::vector<int> path;
            for (int cur = tree.nodes[static_cast<size_t>(node_id)].parent; cur > 0;
                 cur = tree.nodes[static_cast<size_t>(cur)].parent)
                path.push_back(tree.nodes[static_cast<size_t>(cur)].item);
            std::reverse(path.begin(), path.end());
            for (int item : path) cond_counts[static_cast<size_t>(item)] += path_count;
            if (!path.empty()) base.emplace_back(std::move(path), path_count);
        }

        // Keep the global rank order inside the conditional tree; only the
        // infrequent items drop out.
        std::vector<int> cond_rank_of_old(static_cast<size_t>(rank), -1);
        std::vector<int> cond_rank_to_item;
        std::vector<long long> cond_rank_counts;
        for (int old = 0; old < rank; ++old) {
            if (meets_support(cond_counts[static_cast<size_t>(old)], rows, min_support)) {
                cond_rank_of_old[static_cast<size_t>(old)] = static_cast<int>(cond_rank_to_item.size());
                cond_rank_to_item.push_back(rank_to_item[static_cast<size_t>(old)]);
                cond_rank_counts.push_back(cond_counts[static_cast<size_t>(old)]);
            }
        }
        if (cond_rank_to_item.empty()) continue;

        FpTree cond_tree(cond_rank_to_item.size());
        for (auto& [path, path_count] : base) {
            std::vector<int> filtered;
            for (int item : path) {
                int mapped = cond_rank_of_old[static_cast<size_t>(item)];
                if (mapped >= 0) filtered.push_back(mapped);
            }
            if (!filtered.empty()) cond_tree.insert(filtered, path_count);
        }
        fp_mine(cond_tree, cond_rank_to_item, cond_rank_counts, itemset, rows, min_support,
                max_itemset_size, out);
    }
}

} // namespace

bool item_less(const RuleItem& a, const RuleItem& b) {
    if (a.column != b.column) return a.column < b.column;
    if (a.value.null != b.value.null) return a.value.null; // null sorts first
    return a.value.text < b.value.text;
}

std::vector<AssociationRule> mine_rules(const TableSnapshot& table,
                                        const AttributeSet& columns,
                                        double min_support,
                                        int max_itemset_size) {
    check_attrs(table, columns, "mine_rules");
    if (table.rows.empty()) throw EmptyTableError("mine_rules: table '" + table.name + "' has no rows");
    if (!(min_support > 0.0) || min_support > 1.0)
        throw AnalysisError("mine_rules: min_support must be in (0, 1]");
    if (max_itemset_size < 1) throw AnalysisError("mine_rules: max_itemset_size must be >= 1");

    EncodedTable enc = EncodedTable::from(table);
    long long rows = enc.rows;

    ItemCatalog catalog;
    catalog.text_of_code.resize(table.columns.size());
    std::vector<std::vector<int>> item_of_code(table.columns.size());
    for (int col : columns.idx) {
        auto& texts = catalog.text_of_code[static_cast<size_t>(col)];
        int32_t max_code = 0;
        for (size_t r = 0; r < static_cast<size_t>(rows); ++r)
            max_code = std::max(max_code, enc.codes[static_cast<size_t>(col)][r]);
        texts.assign(static_cast<size_t>(max_code) + 1, nullptr);
        for (size_t r = 0; r < static_cast<size_t>(rows); ++r) {
            int32_t code = enc.codes[static_cast<size_t>(col)][r];
            if (code != 0 && !texts[static_cast<size_t>(code)])
                texts[static_cast<size_t>(code)] = &table.rows[r][static_cast<size_t>(col)].text;
        }
        auto& ids = item_of_code[static_cast<size_t>(col)];
        ids.assign(static_cast<size_t>(max_code) + 1, -1);
        for (int32_t code = 0; code <= max_code; ++code) {
            ids[static_cast<size_t>(code)] = static_cast<int>(catalog.items.size());
            catalog.items.emplace_back(col, code);
        }
    }

    // Transaction-level item supports.
    std::vector<long long> item_counts(catalog.items.size(), 0);
    for (size_t r = 0; r < static_cast<size_t>(rows); ++r)
        for (int col : columns.idx) {
            int32_t code = enc.codes[static_cast<size_t>(col)][r];
            ++item_counts[static_cast<size_t>(item_of_code[static_cast<size_t>(col)][static_cast<size_t>(code)])];
        }

    std::vector<int> frequent; // item ids, ordered (count desc, id asc)
    for (size_t i = 0; i < catalog.items.size(); ++i)
        if (item_counts[i] > 0 && meets_support(item_counts[i], rows, min_support))
            frequent.push_back(static_cast<int>(i));
    std::sort(frequent.begin(), frequent.end(), [&](int a, int b) {
        if (item_counts[static_cast<size_t>(a)] != item_counts[static_cast<size_t>(b)])
            return item_counts[static_cast<size_t>(a)] > item_counts[static_cast<size_t>(b)];
        return a < b;
    });
    std::vector<int> rank_of_item(catalog.items.size(), -1);
    std::vector<long long> rank_counts(frequent.size(), 0);
    for (size_t rank = 0; rank < frequent.size(); ++rank) {
        rank_of_item[static_cast<size_t>(frequent[rank])] = static_cast<int>(rank);
        rank_counts[rank] = item_counts[static_cast<size_t>(frequent[rank])];
    }

    FpTree tree(frequent.size());
    std::vector<int> path;
    for (size_t r = 0; r < static_cast<size_t>(rows); ++r) {
        path.clear();
        for (int col : columns.idx) {
            int32_t code = enc.codes[static_cast<size_t>(col)][r];
            int rank = rank_of_item[static_cast<size_t>(item_of_code[static_cast<size_t>(col)][static_cast<size_t>(code)])];
            if (rank >= 0) path.push_back(rank);
        }
        std::sort(path.begin(), path.end());
        if (!path.empty()) tree.insert(path, 1);
    }

    ItemsetCounts counts;
    fp_mine(tree, frequent, rank_counts, {}, rows, min_support, max_itemset_size, counts);

    std::vector<AssociationRule> rules;
    for (const auto& [itemset, count] : counts) {
        int size = static_cast<int>(itemset.size());
        if (size < 2) continue;
        for (unsigned mask = 1; mask + 1 < (1u << size); ++mask) {
            std::vector<int> ant, cons;
            for (int bit = 0; bit < size; ++bit) {
                if (mask & (1u << bit)) ant.push_back(itemset[static_cast<size_t>(bit)]);
                else cons.push_back(itemset[static_cast<size_t>(bit)]);
            }
            auto it = counts.find(ant);
            if (it == counts.end()) continue; // cannot happen: subsets of frequent sets are frequent
            AssociationRule rule;
            for (int item : ant) rule.antecedent.push_back(catalog.to_rule_item(item));
            for (int item : cons) rule.consequent.push_back(catalog.to_rule_item(item));
            std::sort(rule.antecedent.begin(), rule.antecedent.end(), item_less);
            std::sort(rule.consequent.begin(), rule.consequent.end(), item_less);
            rule.support_count = count;
            rule.support = static_cast<double>(count) / static_cast<double>(rows);
            rule.confidence = static_cast<double>(count) / static_cast<double>(it->second);
            rules.push_back(std::move(rule));
        }
    }

    auto items_less = [](const std::vector<RuleItem>& a, const std::vector<RuleItem>& b) {
        size_t n = std::min(a.size(), b.size());
        for (size_t i = 0; i < n; ++i) {
            if (item_less(a[i], b[i])) return true;
            if (item_less(b[i], a[i])) return false;
        }
        return a.size() < b.size();
    };
    std::sort(rules.begin(), rules.end(), [&](const AssociationRule& a, const AssociationRule& b) {
        if (items_less(a.antecedent, b.antecedent)) return true;
        if (items_less(b.antecedent, a.antecedent)) return false;
        return items_less(a.consequent, b.consequent);
    });
    return rules;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string items_to_text(const TableSnapshot& table, const std::vector<RuleItem>& items) {
    std::string out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += " AND ";
        const std::string& col = table.columns[static_cast<size_t>(items[i].column)].name;
        if (items[i].value.null) out += col + " IS NULL";
        else out += col + "=" + items[i].value.text;
    }
    return out;
}

} // namespace

std::string rules_to_csv(const TableSnapshot& table, const std::vector<AssociationRule>& rules) {
    std::string out = "antecedent,consequent,support,confidence\n";
    for (const auto& rule : rules) {
        out += csv_escape(items_to_text(table, rule.antecedent)) + ",";
        out += csv_escape(items_to_text(table, rule.consequent)) + ",";
        out += fmt_double(rule.support) + "," + fmt_double(rule.confidence) + "\n";
    }
    return out;
}

FunctionalDependency holds_fd(const TableSnapshot& table,
                              const AttributeSet& lhs,
                              const AttributeSet& rhs,
                              double tau) {
    check_attrs(table, lhs, "holds_fd lhs");
    check_attrs(table, rhs, "holds_fd rhs");
    return holds_fd(EncodedTable::from(table), lhs, rhs, tau);
}

FunctionalDependency holds_fd(const EncodedTable& enc,
                              const AttributeSet& lhs,
                              const AttributeSet& rhs,
                              double tau) {
    if (lhs.empty() || rhs.empty())
        throw InvalidAttributeIndexError("holds_fd: attribute sets must be nonempty");
    if (!(tau > 0.0) || tau > 1.0) throw AnalysisError("holds_fd: tau must be in (0, 1]");

    FunctionalDependency fd;
    fd.lhs = lhs;
    fd.rhs = rhs;
    if (rhs.is_subset_of(lhs) || enc.rows == 0) {
        fd.holds = true;
        fd.min_confidence_observed = 1.0;
        return fd;
    }

    Partition lhs_part = partition_by(enc, lhs);
    Partition combo = refine(enc, lhs_part, rhs.set_minus(lhs));

    std::vector<long long> group_size(static_cast<size_t>(lhs_part.groups), 0);
    std::vector<long long> sub_size(static_cast<size_t>(combo.groups), 0);
    std::vector<int32_t> group_of_sub(static_cast<size_t>(combo.groups), -1);
    for (size_t r = 0; r < lhs_part.group_of_row.size(); ++r) {
        ++group_size[static_cast<size_t>(lhs_part.group_of_row[r])];
        ++sub_size[static_cast<size_t>(combo.group_of_row[r])];
        group_of_sub[static_cast<size_t>(combo.group_of_row[r])] = lhs_part.group_of_row[r];
    }
    std::vector<long long> max_sub(static_cast<size_t>(lhs_part.groups), 0);
    for (size_t s = 0; s < sub_size.size(); ++s) {
        auto g = static_cast<size_t>(group_of_sub[s]);
        max_sub[g] = std::max(max_sub[g], sub_size[s]);
    }
    double min_conf = 1.0;
    for (size_t g = 0; g < group_size.size(); ++g)
        min_conf = std::min(min_conf, static_cast<double>(max_sub[g]) / static_cast<double>(group_size[g]));
    fd.min_confidence_observed = min_conf;

    bool exact = combo.groups == lhs_part.groups; // every lhs group agrees on rhs
    fd.holds = tau >= 1.0 ? exact : min_conf + 1e-12 >= tau;

    if (!exact) {
        // First violating pair in row order: the group's first row against the
        // first later row disagreeing on rhs.
        std::vector<int32_t> first_combo(static_cast<size_t>(lhs_part.groups), -1);
        std::vector<long long> first_row(static_cast<size_t>(lhs_part.groups), -1);
        for (size_t r = 0; r < lhs_part.group_of_row.size(); ++r) {
            auto g = static_cast<size_t>(lhs_part.group_of_row[r]);
            if (first_combo[g] < 0) {
                first_combo[g] = combo.group_of_row[r];
                first_row[g] = static_cast<long long>(r);
            } else if (combo.group_of_row[r] != first_combo[g]) {
                fd.witness = std::make_pair(first_row[g], static_cast<long long>(r));
                break;
            }
        }
    }
    return fd;
}

MultivaluedDependency holds_mvd(const TableSnapshot& table,
                                const AttributeSet& lhs,
                                const AttributeSet& rhs) {
    check_attrs(table, lhs, "holds_mvd lhs");
    check_attrs(table, rhs, "holds_mvd rhs");
    return holds_mvd(EncodedTable::from(table), lhs, rhs);
}

MultivaluedDependency holds_mvd(const EncodedTable& enc,
                                const AttributeSet& lhs,
                                const AttributeSet& rhs) {
    if (lhs.empty() || rhs.empty())
        throw InvalidAttributeIndexError("holds_mvd: attribute sets must be nonempty");

    MultivaluedDependency mvd;
    mvd.lhs = lhs;
    AttributeSet effective_rhs = rhs.set_minus(lhs);
    mvd.rhs = rhs;
    std::vector<int> all(enc.codes.size());
    for (size_t i = 0; i < enc.codes.size(); ++i) all[i] = static_cast<int>(i);
    AttributeSet everything(std::move(all));
    mvd.complement = everything.set_minus(lhs.set_union(rhs));

    if (effective_rhs.empty() || mvd.complement.empty()) {
        mvd.trivial = true;
        mvd.holds = true;
        return mvd;
    }
    if (enc.rows == 0) {
        mvd.holds = true;
        return mvd;
    }

    // Deduplicate full rows first; groups must equal exact products of their
    // distinct rhs and complement projections.
    Partition full = partition_by(enc, everything);
    std::vector<long long> rep_of_group(static_cast<size_t>(full.groups), -1);
    for (size_t r = 0; r < full.group_of_row.size(); ++r) {
        auto g = static_cast<size_t>(full.group_of_row[r]);
        if (rep_of_group[g] < 0) rep_of_group[g] = static_cast<long long>(r);
    }

    Partition lhs_part = partition_by(enc, lhs);
    Partition rhs_part = partition_by(enc, effective_rhs);
    Partition com_part = partition_by(enc, mvd.complement);

    struct GroupData {
        std::set<int32_t> ys;
        std::set<int32_t> zs;
        std::set<std::pair<int32_t, int32_t>> pairs;
    };
    std::map<int32_t, GroupData> groups;
    for (long long rep : rep_of_group) {
        auto r = static_cast<size_t>(rep);
        GroupData& g = groups[lhs_part.group_of_row[r]];
        int32_t y = rhs_part.group_of_row[r];
        int32_t z = com_part.group_of_row[r];
        g.ys.insert(y);
        g.zs.insert(z);
        g.pairs.insert({y, z});
    }

    for (const auto& [gid, g] : groups) {
        (void)gid;
        // Pre-check on sizes, then the product membership proper.
        if (g.pairs.size() != g.ys.size() * g.zs.size()) {
            mvd.holds = false;
            return mvd;
        }
        for (int32_t y : g.ys)
            for (int32_t z : g.zs)
                if (!g.pairs.count({y, z})) {
                    mvd.holds = false;
                    return mvd;
                }
    }
    mvd.holds = true;
    return mvd;
}

const char* to_string(NfStage stage) {
    switch (stage) {
    case NfStage::nf2: return "2NF";
    case NfStage::nf3: return "3NF";
    case NfStage::bcnf: return "BCNF";
    case NfStage::nf4: return "4NF";
    }
    return "?";
}

namespace {

template <typename Fn>
void for_each_subset(const std::vector<int>& universe, int min_size, int max_size, Fn&& fn) {
    int n = static_cast<int>(universe.size());
    max_size = std::min(max_size, n);
    for (int k = std::max(1, min_size); k <= max_size; ++k) {
        std::vector<int> c(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) c[static_cast<size_t>(i)] = i;
        while (true) {
            std::vector<int> subset;
            subset.reserve(static_cast<size_t>(k));
            for (int i : c) subset.push_back(universe[static_cast<size_t>(i)]);
            fn(subset);
            int i = k - 1;
            while (i >= 0 && c[static_cast<size_t>(i)] == n - k + i) --i;
            if (i < 0) break;
            ++c[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j) c[static_cast<size_t>(j)] = c[static_cast<size_t>(j - 1)] + 1;
        }
    }
}

bool is_superkey(const AttributeSet& attrs, const CandidateKeySet& keys) {
    for (const auto& key : keys.keys)
        if (key.is_subset_of(attrs)) return true;
    return false;
}

} // namespace

std::vector<DependencyCandidate> candidate_violating_fds(const TableSnapshot& table,
                                                         NfStage stage,
                                                         const CandidateKeySet& keys,
                                                         int max_lhs) {
    if (max_lhs < 1) throw AnalysisError("candidate_violating_fds: max_lhs must be >= 1");
    int n = table.column_count();
    std::vector<bool> prime(static_cast<size_t>(n), false);
    for (const auto& key : keys.keys)
        for (int col : key.idx) prime[static_cast<size_t>(col)] = true;
    std::vector<int> non_prime, all_cols;
    for (int c = 0; c < n; ++c) {
        all_cols.push_back(c);
        if (!prime[static_cast<size_t>(c)]) non_prime.push_back(c);
    }

    std::set<std::pair<AttributeSet, AttributeSet>> seen;
    std::vector<DependencyCandidate> out;
    auto emit = [&](AttributeSet lhs, AttributeSet rhs) {
        if (seen.emplace(lhs, rhs).second) out.push_back({std::move(lhs), std::move(rhs)});
    };

    switch (stage) {
    case NfStage::nf2:
        for (const auto& key : keys.keys) {
            if (key.size() < 2) continue;
            for_each_subset(key.idx, 1, key.size() - 1, [&](const std::vector<int>& subset) {
                AttributeSet lhs;
                lhs.idx = subset;
                for (int attr : non_prime) emit(lhs, AttributeSet({attr}));
            });
        }
        break;
    case NfStage::nf3:
        for_each_subset(non_prime, 1, max_lhs, [&](const std::vector<int>& subset) {
            AttributeSet lhs;
            lhs.idx = subset;
            for (int attr : non_prime)
                if (!lhs.contains(attr)) emit(lhs, AttributeSet({attr}));
        });
        break;
    case NfStage::bcnf:
        for_each_subset(all_cols, 1, max_lhs, [&](const std::vector<int>& subset) {
            AttributeSet lhs;
            lhs.idx = subset;
            if (is_superkey(lhs, keys)) return;
            for (int attr : all_cols)
                if (!lhs.contains(attr)) emit(lhs, AttributeSet({attr}));
        });
        break;
    case NfStage::nf4:
        for_each_subset(all_cols, 1, max_lhs, [&](const std::vector<int>& subset) {
            AttributeSet lhs;
            lhs.idx = subset;
            if (is_superkey(lhs, keys)) return;
            std::vector<int> remaining;
            for (int attr : all_cols)
                if (!lhs.contains(attr)) remaining.push_back(attr);
            // rhs strictly inside the remainder; the symmetric complement
            // variant is the same dependency, keep the canonically smaller.
            for_each_subset(remaining, 1, static_cast<int>(remaining.size()) - 1,
                            [&](const std::vector<int>& rhs_subset) {
                                AttributeSet rhs;
                                rhs.idx = rhs_subset;
                                AttributeSet rest;
                                std::set_difference(remaining.begin(), remaining.end(), rhs.idx.begin(),
                                                    rhs.idx.end(), std::back_inserter(rest.idx));
                                if (canonical_less(rhs, rest)) emit(lhs, rhs);
                            });
        });
        break;
    }

    std::sort(out.begin(), out.end(), [](const DependencyCandidate& a, const DependencyCandidate& b) {
        if (canonical_less(a.lhs, b.lhs)) return true;
        if (canonical_less(b.lhs, a.lhs)) return false;
        return canonical_less(a.rhs, b.rhs);
    });
    return out;
}

} // namespace normdebt
