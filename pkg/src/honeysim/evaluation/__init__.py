from .pipeline import PROFILE_FIELDS, Evaluation, evaluate_campaign, evaluate_log, honeypot_usage, profile_snapshot
from .reports import (
    HONEYPOT_COLUMNS,
    PLOT_COLUMNS,
    RECALL_COLUMNS,
    TABLE2_COLUMNS,
    TABLE3_COLUMNS,
    AccountSummary,
    Attraction,
    TechniqueRow,
    account_summary,
    attractions,
    honeypot_report,
    plot_data,
    recall_report,
    technique_report,
    write_csv,
)
from .scoring import (
    AUTOMATED,
    HUMAN,
    THRESHOLD,
    BotScore,
    NoiseSpec,
    UnclassifiableError,
    classify,
    score_user,
    score_users,
    user_rng,
)
from .stats import Describe, describe

__all__ = [
    "AUTOMATED",
    "HONEYPOT_COLUMNS",
    "HUMAN",
    "PLOT_COLUMNS",
    "PROFILE_FIELDS",
    "RECALL_COLUMNS",
    "TABLE2_COLUMNS",
    "TABLE3_COLUMNS",
    "THRESHOLD",
    "AccountSummary",
    "Attraction",
    "BotScore",
    "Describe",
    "Evaluation",
    "NoiseSpec",
    "TechniqueRow",
    "UnclassifiableError",
    "account_summary",
    "attractions",
    "classify",
    "describe",
    "evaluate_campaign",
    "evaluate_log",
    "honeypot_report",
    "honeypot_usage",
    "plot_data",
    "profile_snapshot",
    "recall_report",
    "score_user",
    "score_users",
    "technique_report",
    "user_rng",
    "write_csv",
]
