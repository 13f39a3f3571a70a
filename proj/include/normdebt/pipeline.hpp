#pragma once

#include "normdebt/debtmetrics.hpp"
#include "normdebt/keydisc.hpp"
#include "normdebt/nfclassifier.hpp"
#include "normdebt/principal.hpp"
#include "normdebt/prioritizer.hpp"
#include "normdebt/snapshot.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace normdebt {

struct RunConfig {
    std::string manifest_path;
    std::string out_dir;
    double tau = 1.0;
    int max_key_arity = 3;
    int max_lhs = 2;
    int k_max = 0; // 0 selects min(columns, 12) per table
    CostParameters cost;
    int decomposition_count = 2;
    int jobs = 1; // never affects output bytes
    std::vector<std::string> formats = {"csv", "json", "svg"};
    std::string hints_path;
    FirstNormalFormOptions first_nf;

    // Echoed into every report header. Excludes out_dir and jobs so reruns
    // and parallel runs stay byte-identical; the manifest is identified by
    // content hash, not path.
    std::string echo(const std::string& manifest_hash) const;
};

struct AnalysisResult {
    DatabaseSnapshot snapshot;
    std::string manifest_hash;
    std::vector<CandidateKeySet> keys;              // one per table, snapshot order
    std::vector<NormalFormAssessment> assessments;  // one per table, snapshot order
    std::vector<std::string> debt_tables;
    std::vector<QualityMetrics> metrics;            // debt tables only
    std::vector<RefactoringTaskPlan> plans;         // debt tables only
    std::vector<PrincipalEstimate> principals;      // debt tables only
    PriorityReport report;
};

// FNV-1a over the raw bytes, hex encoded; keys the stage cache.
std::string content_hash(const std::string& bytes);

AnalysisResult run_analysis(const RunConfig& config);

// Writes assessments.csv, metrics.csv, principal.csv, report.{csv,json} and
// matrix_*.svg (per config.formats) plus cache/*.json stage files into
// config.out_dir. Returns the summary line "N tables, D debt items".
std::string write_outputs(const RunConfig& config, const AnalysisResult& result);

std::string assessments_to_csv(const DatabaseSnapshot& snapshot,
                               const std::vector<NormalFormAssessment>& assessments,
                               const std::string& config_echo);

std::string metrics_to_csv(const std::vector<QualityMetrics>& metrics, const std::string& config_echo);

std::string principal_to_csv(const std::vector<PrincipalEstimate>& principals, const std::string& config_echo);

} // namespace normdebt
