"""honeysim command line.

    honeysim run campaign.yaml [--seed N] [--ticks N] [--preset figure2] [--replications N]
    honeysim report runs/seed1
    honeysim catalogue
    honeysim ingest actors actors.txt
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

from . import outputs
from .campaign import run_campaign
from .config import CampaignConfig, ConfigError, load_config
from .corpora import CorpusError, ingest_actor_statuses, ingest_actors, ingest_news
from .evaluation import evaluate_campaign, evaluate_log, profile_snapshot
from .honeypot import FixtureIntegrityError, load_figure2_matrix
from .platform import PlatformError
from .techniques import catalogue_csv

log = logging.getLogger("honeysim")

EXPECTED = (ConfigError, CorpusError, FixtureIntegrityError, PlatformError, outputs.RunDirError,
            OSError, ValueError, KeyError)


def _run_one(cfg: CampaignConfig, seed: int, outdir: Path, force: bool, figures: bool) -> dict:
    with outputs.atomic_dir(outdir, force) as tmp:
        result = run_campaign(
            cfg.honeypots, cfg.population, seed, cfg.settings,
            registry=cfg.registry(), news=cfg.news(), actor_script=cfg.actor_script(),
        )
        ev = evaluate_campaign(result, cfg.noise, cfg.threshold)
        outputs.write_campaign_files(tmp, result, ev)
        meta = {
            "seed": seed,
            "ticks": cfg.settings.ticks,
            "honeypots": len(result.honeypots),
            "population": cfg.population.total,
            "suspensions": len(result.suspensions),
            "skipped_generation": sum(len(h.skipped) for h in result.honeypots),
        }
        outputs.write_reports(tmp, ev, meta)
        if figures:
            outputs.write_figures(tmp, ev, profile_snapshot(result.platform, ev.scores))
        extra = {"input_sha256": {p.name: outputs.sha256_file(p) for p in cfg.input_files()}}
        manifest = outputs.write_manifest(tmp, cfg.sha256, seed, extra)
    return {"outdir": str(outdir), "seed": seed, "precision": ev.precision,
            "manifest_sha256": manifest["manifest_sha256"]}


def cmd_run(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    if args.preset:
        cfg.honeypots, cfg.preset = load_figure2_matrix(), args.preset
    if args.seed is not None:
        cfg.seed = args.seed
    if args.ticks is not None:
        if args.ticks < 0:
            raise ConfigError("--ticks must be >= 0")
        cfg.settings = replace(cfg.settings, ticks=args.ticks)
    out = Path(args.out) if args.out else cfg.output
    if out is None:
        raise ConfigError("no output directory: set 'output' in the config or pass --out")
    n = args.replications
    if n < 1:
        raise ConfigError("--replications must be >= 1")
    if n == 1:
        jobs = [(cfg.seed, out)]
    else:
        jobs = [(cfg.seed + i, out / f"rep-{i + 1:03d}") for i in range(n)]
        if out.exists() and not args.force:
            raise outputs.RunDirError(f"output directory exists: {out} (use --force to replace)")
    figures = not args.no_figures
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = [pool.submit(_run_one, cfg, s, d, args.force, figures) for s, d in jobs]
            done = [f.result() for f in futures]
    else:
        done = [_run_one(cfg, s, d, args.force, figures) for s, d in jobs]
    for d in done:
        prec = "n/a" if d["precision"] is None else f"{d['precision']:.4f}"
        print(f"{d['outdir']}\tseed={d['seed']}\tprecision={prec}\tmanifest={d['manifest_sha256'][:16]}")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    logdir = Path(args.logdir)
    log_, truth, scores, honeypots, profiles = outputs.read_run(logdir)
    ev = evaluate_log(log_, truth, scores, honeypots, profiles, args.threshold)
    dest = Path(args.out) if args.out else logdir
    dest.mkdir(parents=True, exist_ok=True)
    meta = {}
    old = logdir / "report.json"
    if old.is_file():
        keep = ("seed", "ticks", "honeypots", "population", "suspensions", "skipped_generation")
        meta = {k: v for k, v in json.loads(old.read_text(encoding="utf-8")).items() if k in keep}
    outputs.write_reports(dest, ev, meta)
    if not args.no_figures:
        outputs.write_figures(dest, ev, profiles)
    sys.stdout.write((dest / "table2.csv").read_text(encoding="utf-8"))
    return 0


def cmd_catalogue(args: argparse.Namespace) -> int:
    sys.stdout.write(catalogue_csv())
    return 0


def cmd_ingest(args: argparse.Namespace) -> int:
    if args.kind == "actors":
        reg = ingest_actors(args.file)
        print(f"actors={len(reg.handles)}\tleaders={len(reg.leaders)}")
    elif args.kind == "news":
        corpus = ingest_news(args.file)
        print(f"articles={len(corpus)}\tdays={len(corpus.by_day)}")
    else:
        items = ingest_actor_statuses(args.file)
        print(f"statuses={len(items)}\tactors={len({i.handle for i in items})}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="honeysim", description="Simulated social-honeypot campaigns.")
    p.add_argument("-v", "--verbose", action="store_true")
    sp = p.add_subparsers(dest="cmd", required=True)

    r = sp.add_parser("run", help="run a campaign from a YAML config")
    r.add_argument("config")
    r.add_argument("--seed", type=int)
    r.add_argument("--ticks", type=int)
    r.add_argument("--preset", choices=("figure2",), help="replace the config's honeypot set")
    r.add_argument("--replications", type=int, default=1)
    r.add_argument("--jobs", type=int, default=1, help="parallel workers for replications")
    r.add_argument("--out", help="output directory (overrides the config)")
    r.add_argument("--force", action="store_true", help="replace an existing output directory")
    r.add_argument("--no-figures", action="store_true")
    r.set_defaults(func=cmd_run)

    rep = sp.add_parser("report", help="rebuild reports from a run directory")
    rep.add_argument("logdir")
    rep.add_argument("--out")
    rep.add_argument("--threshold", type=float, default=0.5)
    rep.add_argument("--no-figures", action="store_true")
    rep.set_defaults(func=cmd_report)

    c = sp.add_parser("catalogue", help="print the technique table")
    c.set_defaults(func=cmd_catalogue)

    i = sp.add_parser("ingest", help="validate a corpus file and print counts")
    i.add_argument("kind", choices=("actors", "news", "actor-statuses"))
    i.add_argument("file")
    i.set_defaults(func=cmd_ingest)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    try:
        return int(args.func(args))
    except EXPECTED as exc:
        print(f"honeysim: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
