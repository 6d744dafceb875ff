"""Per-technique, per-honeypot, recall and account-summary reports."""

from __future__ import annotations

import csv
from collections import defaultdict
from dataclasses import dataclass
from typing import IO, Iterable, Mapping, Sequence

from .scoring import AUTOMATED, THRESHOLD, BotScore, classify
from .stats import Describe, describe

TABLE2_COLUMNS = (
    "technique", "N", "mean", "median", "sd", "min", "q1", "q3", "max", "n_bots", "n_humans",
    "precision", "recall", "n_interactions", "n_unique_users",
)
HONEYPOT_COLUMNS = (
    "honeypot", "techniques", "N", "n_bots", "n_humans", "precision", "n_interactions", "n_unique_users",
)
RECALL_COLUMNS = ("technique", "attracted_automated", "population_automated", "recall")
TABLE3_COLUMNS = ("metric", "N", "mean", "median", "sd", "min", "q1", "q3", "max")
TABLE3_METRICS = (
    ("Statuses", "statuses_count"),
    ("Friends", "friends_count"),
    ("Followers", "followers_count"),
    ("Listed", "listed_count"),
    ("Account Age", "account_age_days"),
)
PLOT_COLUMNS = ("technique", "honeypots", "n_bots", "n_humans", "bots_per_honeypot",
                "humans_per_honeypot", "precision")


@dataclass(frozen=True)
class Attraction:
    """One interaction a honeypot received from an outside account."""

    actor: int
    honeypot: int
    technique: int
    kind: str


def _field(rec, name):
    return rec[name] if isinstance(rec, Mapping) else getattr(rec, name)


def attractions(log: Iterable, honeypots: Iterable[int]) -> list[Attraction]:
    """Interactions aimed at a honeypot by a non-honeypot, attributed to a technique.

    Accepts InteractionEvent objects or their dict records; status records
    are skipped.
    """
    hp = set(honeypots)
    out = []
    for rec in log:
        if isinstance(rec, Mapping):
            if rec.get("type", "event") != "event":
                continue
        elif not hasattr(rec, "target_user"):
            continue
        target, actor, tech = _field(rec, "target_user"), _field(rec, "actor"), _field(rec, "technique")
        if target in hp and actor not in hp and tech is not None:
            out.append(Attraction(actor, target, int(tech), _field(rec, "kind")))
    return out


@dataclass(frozen=True)
class TechniqueRow:
    technique: int | str
    n: int
    stats: Describe | None
    n_bots: int
    n_humans: int
    n_interactions: int
    n_unique_users: int
    recall: float | None = None

    @property
    def precision(self) -> float | None:
        d = self.n_bots + self.n_humans
        return self.n_bots / d if d else None

    def as_dict(self) -> dict:
        s = self.stats.as_dict() if self.stats else dict.fromkeys(("mean", "median", "sd", "min", "q1", "q3", "max"))
        s.pop("n", None)
        return {
            "technique": self.technique, "N": self.n, **s, "n_bots": self.n_bots,
            "n_humans": self.n_humans, "precision": self.precision, "recall": self.recall,
            "n_interactions": self.n_interactions, "n_unique_users": self.n_unique_users,
        }


def _score_of(scores: Mapping[int, BotScore | float | None], uid: int):
    if uid not in scores:
        raise KeyError(f"no score for attracted user {uid}")
    s = scores[uid]
    if isinstance(s, BotScore):
        return s.score if s.classifiable else None
    return s


def _row(key, units, n_interactions, users, scores, threshold, recall=None) -> TechniqueRow:
    """``units`` are (honeypot, user) pairs or plain users; each is counted once."""
    values = []
    bots = humans = 0
    for unit in units:
        uid = unit[1] if isinstance(unit, tuple) else unit
        s = _score_of(scores, uid)
        if s is None:
            continue
        values.append(s)
        if classify(s, threshold) == AUTOMATED:
            bots += 1
        else:
            humans += 1
    stats = describe(values) if values else None
    return TechniqueRow(key, len(values), stats, bots, humans, n_interactions, len(users), recall)


def technique_report(
    log: Iterable,
    scores: Mapping[int, BotScore | float | None],
    honeypots: Iterable[int],
    threshold: float = THRESHOLD,
    truth: Mapping[int, str] | None = None,
) -> list[TechniqueRow]:
    """Table-2-shaped rows, one per technique that attracted anyone, then Total.

    Within a technique each (honeypot, user) pair counts once, so a user
    drawn in by the same technique on two honeypots counts twice. The Total
    row counts distinct users across everything. With ``truth`` the rows
    also carry oracle recall.
    """
    att = attractions(log, honeypots)
    pairs: dict[int, set[tuple[int, int]]] = defaultdict(set)
    events: dict[int, int] = defaultdict(int)
    for a in att:
        pairs[a.technique].add((a.honeypot, a.actor))
        events[a.technique] += 1
    recall = _recall_values(att, truth) if truth is not None else {}
    rows = []
    for tech in sorted(pairs):
        units = sorted(pairs[tech])
        users = {u for _, u in units}
        rows.append(_row(tech, units, events[tech], users, scores, threshold, recall.get(tech)))
    everyone = sorted({a.actor for a in att})
    rows.append(_row("Total", everyone, len(att), set(everyone), scores, threshold, recall.get("Total")))
    return rows


def honeypot_report(
    log: Iterable,
    scores: Mapping[int, BotScore | float | None],
    honeypots: Mapping[int, str],
    threshold: float = THRESHOLD,
) -> list[dict]:
    """Per-honeypot counts; ``honeypots`` maps account id to its technique label."""
    att = attractions(log, honeypots)
    users: dict[int, set[int]] = defaultdict(set)
    events: dict[int, int] = defaultdict(int)
    for a in att:
        users[a.honeypot].add(a.actor)
        events[a.honeypot] += 1
    rows = []
    for hp in sorted(honeypots):
        r = _row(hp, sorted(users[hp]), events[hp], users[hp], scores, threshold)
        rows.append({
            "honeypot": hp, "techniques": honeypots[hp], "N": r.n, "n_bots": r.n_bots,
            "n_humans": r.n_humans, "precision": r.precision, "n_interactions": r.n_interactions,
            "n_unique_users": r.n_unique_users,
        })
    return rows


# ---------------------------------------------------------------------------
# Recall
# ---------------------------------------------------------------------------


def _check_labels(att: Sequence[Attraction], truth: Mapping[int, str]) -> None:
    if not truth:
        raise ValueError("ground-truth labels are empty")
    missing = sorted({a.actor for a in att} - set(truth))
    if missing:
        raise ValueError(f"labels do not match the population: no label for users {missing[:5]}")


def _recall_values(att: Sequence[Attraction], truth: Mapping[int, str]) -> dict:
    return {r["technique"]: r["recall"] for r in _recall_rows(att, truth, ())}


def recall_report(log: Iterable, truth: Mapping[int, str], honeypots: Iterable[int],
                  techniques: Iterable[int] = ()) -> list[dict]:
    """Share of all automated accounts each technique reached, then the union.

    ``truth`` maps every population account to its class. Techniques listed
    in ``techniques`` get a row even if they attracted nobody.
    """
    return _recall_rows(attractions(log, honeypots), truth, techniques)


def _recall_rows(att: Sequence[Attraction], truth: Mapping[int, str], techniques: Iterable[int]) -> list[dict]:
    _check_labels(att, truth)
    total = sum(1 for c in truth.values() if c == AUTOMATED)
    found: dict = defaultdict(set)
    for a in att:
        if truth[a.actor] == AUTOMATED:
            found[a.technique].add(a.actor)
    union = set().union(*found.values()) if found else set()
    keys = sorted(set(techniques) | {a.technique for a in att})
    rows = []
    for key, hit in [(k, found.get(k, set())) for k in keys] + [("Total", union)]:
        rows.append({
            "technique": key,
            "attracted_automated": len(hit),
            "population_automated": total,
            "recall": len(hit) / total if total else 0.0,
        })
    return rows


# ---------------------------------------------------------------------------
# Account summary
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AccountSummary:
    rows: dict[str, Describe]
    verified: int

    def export_rows(self) -> list[dict]:
        """Rows rounded to whole numbers; a missing sd stays blank."""
        out = []
        for metric, d in self.rows.items():
            row = {"metric": metric, "N": d.n}
            for k in ("mean", "median", "sd", "min", "q1", "q3", "max"):
                v = getattr(d, k)
                row[k] = None if v is None else int(round(v))
            out.append(row)
        return out


def account_summary(profiles: Iterable) -> AccountSummary:
    """Descriptive statistics of attracted accounts' profile counters."""
    profiles = list(profiles)
    if not profiles:
        raise ValueError("no attracted accounts to summarise")
    rows = {label: describe(_field(p, attr) for p in profiles) for label, attr in TABLE3_METRICS}
    verified = sum(1 for p in profiles if _field(p, "verified"))
    return AccountSummary(rows, verified)


# ---------------------------------------------------------------------------
# Plot data
# ---------------------------------------------------------------------------


def plot_data(rows: Sequence[TechniqueRow], honeypots_per_technique: Mapping[int, int]) -> list[dict]:
    """Bot and human counts per technique, scaled by how many honeypots used it.

    Ordered from most to least precise.
    """
    out = []
    for r in rows:
        if r.technique == "Total":
            continue
        k = honeypots_per_technique.get(r.technique, 1) or 1
        out.append({
            "technique": r.technique, "honeypots": k, "n_bots": r.n_bots, "n_humans": r.n_humans,
            "bots_per_honeypot": r.n_bots / k, "humans_per_honeypot": r.n_humans / k,
            "precision": r.precision,
        })
    out.sort(key=lambda d: (-(d["precision"] if d["precision"] is not None else -1), d["technique"]))
    return out


# ---------------------------------------------------------------------------
# Export
# ---------------------------------------------------------------------------


def _fmt(v, digits: int | None):
    if v is None:
        return ""
    if isinstance(v, float) and digits is not None:
        return f"{v:.{digits}f}"
    return v


def write_csv(fh: IO[str], columns: Sequence[str], rows: Iterable[Mapping], digits: int | None = 4) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(row.get(c), digits) for c in columns])


def technique_rows_dicts(rows: Iterable[TechniqueRow]) -> list[dict]:
    return [r.as_dict() for r in rows]


def summary_json(rows: Sequence[TechniqueRow]) -> dict:
    total = rows[-1]
    return {
        "precision": total.precision,
        "n_classified": total.n,
        "n_bots": total.n_bots,
        "n_humans": total.n_humans,
        "n_unique_users": total.n_unique_users,
        "n_interactions": total.n_interactions,
        "recall": total.recall,
    }


__all__ = [
    "AccountSummary", "Attraction", "HONEYPOT_COLUMNS", "PLOT_COLUMNS", "RECALL_COLUMNS",
    "TABLE2_COLUMNS", "TABLE3_COLUMNS", "TechniqueRow", "account_summary", "attractions",
    "honeypot_report", "plot_data", "recall_report", "summary_json", "technique_report",
    "technique_rows_dicts", "write_csv",
]
