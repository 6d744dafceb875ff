"""Honeypot configurations and the agents that execute them."""

from __future__ import annotations

import csv
import logging
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .corpora import data_path
from .platform import Platform
from .techniques import (
    CATALOGUE,
    CompositionError,
    ConsumptionContext,
    ContentSources,
    KeywordTrend,
    TechniqueState,
    compose_status,
    get_technique,
    run_consumption_technique,
)

log = logging.getLogger(__name__)

DEFAULT_CONSUME_BUDGET = 5
DEFAULT_GENERATE_BUDGET = 1
CAMPAIGN_TICKS = 7 * 24


class FixtureIntegrityError(ValueError):
    pass


@dataclass(frozen=True)
class HoneypotConfig:
    id: int
    techniques: tuple[int, ...]
    budgets: Mapping[int, int] = field(default_factory=dict)
    replicates: int = 1
    uncertain: bool = False

    def __post_init__(self):
        if not self.techniques:
            raise ValueError(f"honeypot {self.id}: needs at least one technique")
        ids = tuple(sorted({int(t) for t in self.techniques}))
        for t in ids:
            get_technique(t)
        object.__setattr__(self, "techniques", ids)
        if self.replicates < 1:
            raise ValueError(f"honeypot {self.id}: replicates must be >= 1")

    @property
    def generation_only(self) -> bool:
        """Content-only honeypots; known to draw little interaction."""
        return all(not CATALOGUE[t].is_consume for t in self.techniques)

    def budget(self, tid: int) -> int:
        if tid in self.budgets:
            return int(self.budgets[tid])
        return DEFAULT_CONSUME_BUDGET if CATALOGUE[tid].is_consume else DEFAULT_GENERATE_BUDGET

    @property
    def label(self) -> str:
        return "+".join(str(t) for t in self.techniques)


def load_figure2_matrix(path: str | Path | None = None) -> list[HoneypotConfig]:
    """Load the 41 technique combinations (12 singletons + 29 pairs)."""
    path = Path(path) if path else data_path("figure2.csv")
    configs = []
    with open(path, encoding="utf-8", newline="") as fh:
        rows = csv.DictReader(line for line in fh if not line.startswith("#"))
        for n, row in enumerate(rows, 1):
            try:
                techs = tuple(int(t) for t in row["techniques"].split(";"))
                cfg = HoneypotConfig(int(row["honeypot"]), techs, uncertain=row["status"].strip() == "uncertain")
            except (KeyError, ValueError, TypeError, AttributeError) as exc:
                raise FixtureIntegrityError(f"{path}: row {n}: {exc}") from None
            configs.append(cfg)
    _check_matrix(configs, path)
    return configs


def _check_matrix(configs: list[HoneypotConfig], path) -> None:
    if len(configs) != 41:
        raise FixtureIntegrityError(f"{path}: expected 41 combinations, found {len(configs)}")
    if len({c.id for c in configs}) != len(configs):
        raise FixtureIntegrityError(f"{path}: duplicate honeypot ids")
    if len({c.techniques for c in configs}) != len(configs):
        raise FixtureIntegrityError(f"{path}: duplicate combinations")
    singles = {c.techniques[0] for c in configs if len(c.techniques) == 1}
    if singles != set(range(1, 13)):
        raise FixtureIntegrityError(f"{path}: consumption singletons incomplete: {sorted(singles)}")
    for c in configs:
        consume = [t for t in c.techniques if CATALOGUE[t].is_consume]
        if len(consume) != 1 or len(c.techniques) > 2:
            raise FixtureIntegrityError(f"{path}: honeypot {c.id} is not a (consumption[, generation]) pair")


def parse_honeypot_list(items: Iterable) -> list[HoneypotConfig]:
    """Build configs from plain data: ``[{"id": 1, "techniques": [1, 13]}, ...]``."""
    out = []
    for n, item in enumerate(items, 1):
        if isinstance(item, Mapping):
            budgets = {int(k): int(v) for k, v in (item.get("budgets") or {}).items()}
            out.append(HoneypotConfig(int(item.get("id", n)), tuple(item["techniques"]), budgets,
                                      int(item.get("replicates", 1))))
        else:
            out.append(HoneypotConfig(n, tuple(item)))
    return out


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------


@dataclass
class HoneypotAgent:
    user_id: int
    config: HoneypotConfig
    name: str
    states: dict[int, TechniqueState]
    skipped: list[tuple[int, int, str]] = field(default_factory=list)

    def act(
        self,
        platform: Platform,
        ctx: ConsumptionContext,
        sources: ContentSources,
        actors: list[tuple[int, str]],
        trends: list[KeywordTrend],
        rng: random.Random,
        status_techniques: dict[int, int],
    ) -> None:
        if platform.users[self.user_id].suspended:
            return
        for tid in self.config.techniques:
            state = self.states[tid]
            budget = self.config.budget(tid)
            if state.spec.is_consume:
                run_consumption_technique(state, self.user_id, ctx, budget, rng)
                continue
            for _ in range(budget):
                try:
                    content = compose_status(state.spec, sources, actors, trends, rng)
                except CompositionError as exc:
                    self.skipped.append((platform.tick, tid, str(exc)))
                    break
                sid = platform.post_status(
                    self.user_id,
                    content.tokens,
                    language=content.language,
                    coherent=content.coherent,
                    mentions=[content.mention] if content.mention is not None else [],
                    hashtags=[content.hashtag] if content.hashtag else [],
                )
                if sid is not None:
                    status_techniques[sid] = tid


def build_honeypot(platform: Platform, config: HoneypotConfig, replicate: int = 0,
                   handle_template: str = "hp_{name}") -> HoneypotAgent:
    """Open a fresh honeypot account (zero counters, age 0) for ``config``."""
    name = str(config.id) if replicate == 0 else f"{config.id}r{replicate + 1}"
    uid = platform.create_user(handle_template.format(name=name, id=config.id), account_age_days=0,
                               archetype_ref="Honeypot")
    platform.mark_honeypot(uid)
    if config.generation_only:
        log.warning("honeypot %s only generates content; expect little interaction", name)
    states = {t: TechniqueState(get_technique(t)) for t in config.techniques}
    return HoneypotAgent(uid, config, name, states)
