"""Run directories: what a campaign writes and how `report` reads it back."""

from __future__ import annotations

import csv
import hashlib
import json
import os
import shutil
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Mapping

from .evaluation import (
    HONEYPOT_COLUMNS,
    PLOT_COLUMNS,
    PROFILE_FIELDS,
    RECALL_COLUMNS,
    TABLE2_COLUMNS,
    TABLE3_COLUMNS,
    BotScore,
    Evaluation,
    write_csv,
)
from .platform import read_log

LABEL_COLUMNS = ("user_id", "handle", "role", "archetype", "class", "techniques")
SCORE_COLUMNS = ("user_id", "score", "classifiable")

# every text file a run directory holds, in manifest order
TEXT_FILES = (
    "events.ndjson", "labels.csv", "scores.csv", "profiles.csv", "table2.csv", "honeypots.csv",
    "recall.csv", "table3.csv", "plot_techniques.csv", "plot_honeypots.csv", "report.json",
)


class RunDirError(RuntimeError):
    pass


def sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


@contextmanager
def atomic_dir(target: Path, force: bool = False) -> Iterator[Path]:
    """Yield a scratch directory that becomes ``target`` only if the block succeeds."""
    target = Path(target)
    if target.exists() and not force:
        raise RunDirError(f"output directory exists: {target} (use --force to replace)")
    target.parent.mkdir(parents=True, exist_ok=True)
    tmp = target.parent / f".{target.name}.tmp-{os.getpid()}"
    if tmp.exists():
        shutil.rmtree(tmp)
    tmp.mkdir()
    try:
        yield tmp
    except BaseException:
        shutil.rmtree(tmp, ignore_errors=True)
        raise
    if target.exists():
        old = target.parent / f".{target.name}.old-{os.getpid()}"
        os.replace(target, old)
        os.replace(tmp, target)
        shutil.rmtree(old, ignore_errors=True)
    else:
        os.replace(tmp, target)


# ---------------------------------------------------------------------------
# Writing
# ---------------------------------------------------------------------------


def write_campaign_files(outdir: Path, result, evaluation: Evaluation) -> None:
    """Raw campaign data: event log, labels, scores and attracted profiles."""
    with open(outdir / "events.ndjson", "w", encoding="utf-8", newline="\n") as fh:
        result.platform.write_log(fh)
    hp_labels = {h.user_id: h.config.label for h in result.honeypots}
    labels = [dict(row, techniques=hp_labels.get(row["user_id"], "")) for row in result.labels()]
    with open(outdir / "labels.csv", "w", encoding="utf-8") as fh:
        write_csv(fh, LABEL_COLUMNS, labels)
    with open(outdir / "scores.csv", "w", encoding="utf-8") as fh:
        write_csv(fh, SCORE_COLUMNS, (
            {"user_id": s.user, "score": s.score, "classifiable": int(s.classifiable)}
            for s in sorted(evaluation.scores.values(), key=lambda s: s.user)
        ), digits=None)
    users = result.platform.users
    with open(outdir / "profiles.csv", "w", encoding="utf-8") as fh:
        write_csv(fh, PROFILE_FIELDS, (
            {f: (uid if f == "user_id" else int(getattr(users[uid], f))) for f in PROFILE_FIELDS}
            for uid in sorted(evaluation.scores)
        ))


def write_reports(outdir: Path, evaluation: Evaluation, meta: Mapping) -> None:
    """Tables, plot data and report.json derived from an evaluation."""
    with open(outdir / "table2.csv", "w", encoding="utf-8") as fh:
        write_csv(fh, TABLE2_COLUMNS, [r.as_dict() for r in evaluation.techniques])
    with open(outdir / "honeypots.csv", "w", encoding="utf-8") as fh:
        write_csv(fh, HONEYPOT_COLUMNS, evaluation.honeypots)
    with open(outdir / "recall.csv", "w", encoding="utf-8") as fh:
        write_csv(fh, RECALL_COLUMNS, evaluation.recall)
    with open(outdir / "table3.csv", "w", encoding="utf-8") as fh:
        write_csv(fh, TABLE3_COLUMNS, evaluation.accounts.export_rows() if evaluation.accounts else [])
    with open(outdir / "plot_techniques.csv", "w", encoding="utf-8") as fh:
        write_csv(fh, PLOT_COLUMNS, evaluation.plot)
    ordered = sorted(evaluation.honeypots,
                     key=lambda r: (-(r["precision"] if r["precision"] is not None else -1), r["honeypot"]))
    with open(outdir / "plot_honeypots.csv", "w", encoding="utf-8") as fh:
        write_csv(fh, HONEYPOT_COLUMNS, ordered)
    total = evaluation.techniques[-1]
    report = {
        **meta,
        "precision": total.precision,
        "n_classified": total.n,
        "n_bots": total.n_bots,
        "n_humans": total.n_humans,
        "n_unique_users": total.n_unique_users,
        "n_interactions": total.n_interactions,
        "recall": evaluation.recall[-1]["recall"],
        "verified": evaluation.accounts.verified if evaluation.accounts else 0,
    }
    (outdir / "report.json").write_text(_dump_json(report), encoding="utf-8")


def write_figures(outdir: Path, evaluation: Evaluation, profiles: Mapping[int, Mapping]) -> list[Path]:
    from .plotting import render_all

    attracted = [profiles[u] for u in sorted(evaluation.scores) if u in profiles]
    return render_all(outdir / "figures", evaluation.plot, evaluation.honeypots, attracted)


def write_manifest(outdir: Path, config_sha256: str, seed: int, extra: Mapping | None = None) -> dict:
    files = {name: sha256_file(outdir / name) for name in TEXT_FILES if (outdir / name).exists()}
    manifest = {"config_sha256": config_sha256, "seed": seed, "files": files, **(extra or {})}
    manifest["manifest_sha256"] = hashlib.sha256(_dump_json(manifest).encode("utf-8")).hexdigest()
    (outdir / "manifest.json").write_text(_dump_json(manifest), encoding="utf-8")
    return manifest


# ---------------------------------------------------------------------------
# Reading
# ---------------------------------------------------------------------------


def _rows(path: Path) -> list[dict]:
    if not path.is_file():
        raise RunDirError(f"missing file: {path}")
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def read_run(logdir: Path):
    """(log, truth, scores, honeypots, profiles) from a run directory."""
    logdir = Path(logdir)
    events = logdir / "events.ndjson"
    if not events.is_file():
        raise RunDirError(f"missing file: {events}")
    with open(events, encoding="utf-8") as fh:
        log = read_log(fh)
    truth, honeypots = {}, {}
    for row in _rows(logdir / "labels.csv"):
        uid = int(row["user_id"])
        truth[uid] = row["class"]
        if row["role"] == "honeypot":
            honeypots[uid] = row["techniques"]
    scores = {}
    for row in _rows(logdir / "scores.csv"):
        uid = int(row["user_id"])
        ok = row["classifiable"] == "1"
        scores[uid] = BotScore(uid, float(row["score"]) if ok else None, ok)
    profiles = {}
    for row in _rows(logdir / "profiles.csv"):
        profiles[int(row["user_id"])] = {
            k: (bool(int(row[k])) if k == "verified" else int(row[k])) for k in PROFILE_FIELDS
        }
    return log, truth, scores, honeypots, profiles
