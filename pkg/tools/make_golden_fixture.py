"""Regenerate tests/fixtures/golden_table2 from the reference per-technique counts.

Every listed technique gets exactly its (bots, humans) number of distinct
(honeypot, user) attractions, spread round-robin over the honeypots that ran
it. 85 bot accounts, 199 human accounts and 4 accounts without a score are
used, each at least once.

    python tools/make_golden_fixture.py [outdir]
"""

import csv
import json
import random
import sys
from pathlib import Path

from honeysim.honeypot import load_figure2_matrix
from honeysim.techniques import CATALOGUE

# technique: (bots, humans)
COUNTS = {
    1: (29, 25), 2: (16, 10), 3: (23, 28), 4: (23, 40), 5: (12, 44), 6: (1, 4), 7: (0, 2),
    8: (5, 6), 9: (2, 10), 10: (67, 231), 11: (5, 20), 12: (15, 72), 13: (13, 11), 14: (2, 4),
    16: (0, 3), 17: (6, 4), 18: (3, 12), 19: (2, 0), 21: (4, 5), 22: (2, 1), 23: (2, 4),
    24: (1, 2), 25: (10, 36), 26: (2, 14), 27: (26, 86), 28: (7, 18), 29: (1, 4), 31: (0, 3),
    32: (0, 1), 33: (5, 5), 34: (10, 32), 35: (6, 5), 37: (6, 4),
}
N_BOTS, N_HUMANS, N_GONE = 85, 199, 4
HP_BASE = 10_000


def build(outdir: Path) -> None:
    rng = random.Random(2019)
    bots = list(range(1, N_BOTS + 1))
    humans = list(range(1001, 1001 + N_HUMANS))
    gone = list(range(2001, 2001 + N_GONE))
    configs = load_figure2_matrix()
    hp_of = {c.id: HP_BASE + c.id for c in configs}
    running = {t: [c.id for c in configs if t in c.techniques] for t in COUNTS}

    pairs = []  # (technique, honeypot id, user)
    cursor = {"bot": 0, "human": 0}
    for tech in sorted(COUNTS):
        hps = running[tech]
        if not hps:
            raise SystemExit(f"technique {tech} is not run by any honeypot")
        for cls, pool, n in (("bot", bots, COUNTS[tech][0]), ("human", humans, COUNTS[tech][1])):
            rounds = -(-n // len(hps))
            if rounds > len(pool):
                raise SystemExit(f"technique {tech}: not enough {cls} accounts")
            start = cursor[cls]
            for i in range(n):
                user = pool[(start + i // len(hps)) % len(pool)]
                pairs.append((tech, hps[i % len(hps)], user))
            cursor[cls] = (start + rounds) % len(pool)
    for i, user in enumerate(gone):
        pairs.append((10, running[10][i % len(running[10])], user))

    used = {u for _, _, u in pairs}
    missing = [u for u in bots + humans if u not in used]
    if missing:
        raise SystemExit(f"{len(missing)} accounts never attracted; adjust the spread")

    records = []
    status_of = {}
    sid = 0
    for tech, hp, _ in sorted(set((t, h, 0) for t, h, _ in pairs)):
        if not CATALOGUE[tech].is_consume:
            status_of[(tech, hp)] = sid
            records.append({
                "type": "status", "id": sid, "tick": 0, "author": hp_of[hp], "kind": "original",
                "retweet_of": None, "language": CATALOGUE[tech].language, "coherent": CATALOGUE[tech].coherent,
                "geotag": None, "mentions": [], "hashtags": [], "tokens": ["fixture", f"t{tech}"],
            })
            sid += 1
    for n, (tech, hp, user) in enumerate(sorted(pairs)):
        follow = CATALOGUE[tech].is_consume
        records.append({
            "type": "event", "tick": 1 + n // 10, "actor": user, "kind": "follow" if follow else "retweet",
            "target_user": hp_of[hp], "target_status": None if follow else status_of[(tech, hp)],
            "technique": tech,
        })

    outdir.mkdir(parents=True, exist_ok=True)
    with open(outdir / "events.ndjson", "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(rec, separators=(",", ":")) + "\n")
    with open(outdir / "labels.csv", "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["user_id", "handle", "role", "archetype", "class", "techniques"])
        for c in configs:
            w.writerow([hp_of[c.id], f"hp_{c.id}", "honeypot", "Honeypot", "honeypot", c.label])
        for u in bots:
            w.writerow([u, f"bot{u}", "population", "FollowBackBot", "automated", ""])
        for u in humans + gone:
            w.writerow([u, f"user{u}", "population", "CasualHuman", "human", ""])
    with open(outdir / "scores.csv", "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["user_id", "score", "classifiable"])
        for u in bots:
            w.writerow([u, round(rng.uniform(0.5, 0.98), 4), 1])
        for u in humans:
            w.writerow([u, round(rng.uniform(0.01, 0.4999), 4), 1])
        for u in gone:
            w.writerow([u, "", 0])


if __name__ == "__main__":
    root = Path(__file__).resolve().parents[1]
    build(Path(sys.argv[1]) if len(sys.argv) > 1 else root / "tests" / "fixtures" / "golden_table2")
