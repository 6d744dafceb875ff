"""Glue: score a finished campaign and build every report from it."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .reports import (
    AccountSummary,
    TechniqueRow,
    account_summary,
    attractions,
    honeypot_report,
    plot_data,
    recall_report,
    technique_report,
)
from .scoring import THRESHOLD, BotScore, NoiseSpec, score_users

PROFILE_FIELDS = (
    "user_id", "statuses_count", "friends_count", "followers_count", "listed_count",
    "account_age_days", "verified",
)


@dataclass
class Evaluation:
    scores: dict[int, BotScore]
    techniques: list[TechniqueRow]
    honeypots: list[dict]
    recall: list[dict]
    accounts: AccountSummary | None
    plot: list[dict]

    @property
    def precision(self) -> float | None:
        return self.techniques[-1].precision


def honeypot_usage(honeypots: Mapping[int, str]) -> dict[int, int]:
    """How many honeypots ran each technique; labels look like ``"10+25"``."""
    c: Counter = Counter()
    for label in honeypots.values():
        for t in str(label).split("+"):
            c[int(t)] += 1
    return dict(c)


def evaluate_log(
    log: Sequence,
    truth: Mapping[int, str],
    scores: Mapping[int, BotScore],
    honeypots: Mapping[int, str],
    profiles: Mapping[int, Mapping] | None = None,
    threshold: float = THRESHOLD,
) -> Evaluation:
    """Every report for one campaign, from its log, labels and scores.

    ``honeypots`` maps honeypot account ids to technique labels.
    """
    usage = honeypot_usage(honeypots)
    rows = technique_report(log, scores, honeypots, threshold, truth)
    recall = recall_report(log, truth, honeypots, sorted(usage))
    attracted = sorted({a.actor for a in attractions(log, honeypots)})
    accounts = None
    if profiles is not None and attracted:
        accounts = account_summary(profiles[u] for u in attracted)
    return Evaluation(
        dict(scores), rows, honeypot_report(log, scores, honeypots, threshold), recall, accounts,
        plot_data(rows, usage),
    )


def profile_snapshot(platform, users: Iterable[int]) -> dict[int, dict]:
    out = {}
    for uid in sorted(set(users)):
        u = platform.users[uid]
        out[uid] = {f: (u.id if f == "user_id" else getattr(u, f)) for f in PROFILE_FIELDS}
    return out


def evaluate_campaign(result, noise: NoiseSpec | None = None, threshold: float = THRESHOLD,
                      score_seed: int | None = None) -> Evaluation:
    """Score every attracted account of ``result`` and build the reports."""
    noise = noise or NoiseSpec()
    labels = result.labels()
    truth = {row["user_id"]: row["class"] for row in labels}
    honeypots = {h.user_id: h.config.label for h in result.honeypots}
    log = result.platform.log
    attracted = {a.actor for a in attractions(log, honeypots)}
    suspended = {u.id for u in result.platform.users if u.suspended}
    seed = result.seed if score_seed is None else score_seed
    scores = score_users(attracted, truth, noise, seed, suspended)
    profiles = profile_snapshot(result.platform, attracted)
    return evaluate_log(log, truth, scores, honeypots, profiles, threshold)
