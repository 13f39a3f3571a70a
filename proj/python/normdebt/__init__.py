"""Normal-form classification and normalization-debt analysis."""

from ._core import (
    AnalysisError,
    Analysis,
    Assessment,
    Column,
    KeySet,
    Metrics,
    Plan,
    Principal,
    Report,
    Snapshot,
    Table,
    ValidationError,
    analyze,
    candidate_keys,
    classify,
    content_hash,
    format_cents,
    holds_fd,
    holds_mvd,
    inconsistency_risk,
    load_snapshot,
    make_table,
    mine_rules,
    per_task_cents,
    plan_tasks,
    principal_of,
    table_metrics,
)

__all__ = [
    "AnalysisError",
    "Analysis",
    "Assessment",
    "Column",
    "KeySet",
    "Metrics",
    "Plan",
    "Principal",
    "Report",
    "Snapshot",
    "Table",
    "ValidationError",
    "analyze",
    "candidate_keys",
    "classify",
    "content_hash",
    "format_cents",
    "holds_fd",
    "holds_mvd",
    "inconsistency_risk",
    "load_snapshot",
    "make_table",
    "mine_rules",
    "per_task_cents",
    "plan_tasks",
    "principal_of",
    "table_metrics",
]
