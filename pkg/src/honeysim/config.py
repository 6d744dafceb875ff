"""Campaign configuration files (YAML)."""

from __future__ import annotations

import dataclasses
import datetime as dt
import hashlib
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping

import yaml

from .campaign import CampaignSettings
from .corpora import (
    ActorRegistry,
    NewsCorpus,
    ScriptedStatus,
    ingest_actor_statuses,
    ingest_actors,
    ingest_news,
)
from .evaluation import THRESHOLD, NoiseSpec
from .honeypot import HoneypotConfig, load_figure2_matrix, parse_honeypot_list
from .platform import RateLimitPolicy
from .population import DEFAULT_ARCHETYPES, HeavyTail, PopulationSpec, ProfileDistribution

PRESETS = ("figure2",)


class ConfigError(ValueError):
    pass


@dataclass
class CampaignConfig:
    seed: int
    honeypots: list[HoneypotConfig]
    population: PopulationSpec = field(default_factory=PopulationSpec)
    settings: CampaignSettings = field(default_factory=CampaignSettings)
    noise: NoiseSpec = field(default_factory=NoiseSpec)
    threshold: float = THRESHOLD
    output: Path | None = None
    actors_file: Path | None = None
    news_file: Path | None = None
    actor_statuses_file: Path | None = None
    preset: str | None = None
    source_bytes: bytes = b""

    @property
    def sha256(self) -> str:
        return hashlib.sha256(self.source_bytes).hexdigest()

    def registry(self) -> ActorRegistry | None:
        return ingest_actors(self.actors_file) if self.actors_file else None

    def news(self) -> NewsCorpus | None:
        return ingest_news(self.news_file) if self.news_file else None

    def actor_script(self) -> list[ScriptedStatus] | None:
        return ingest_actor_statuses(self.actor_statuses_file) if self.actor_statuses_file else None

    def input_files(self) -> list[Path]:
        return [p for p in (self.actors_file, self.news_file, self.actor_statuses_file) if p]


def _only(section: str, data: Mapping, allowed) -> None:
    unknown = set(data) - set(allowed)
    if unknown:
        raise ConfigError(f"{section}: unknown keys {sorted(unknown)}")


def _file(base: Path, value, key: str) -> Path:
    path = Path(value)
    if not path.is_absolute():
        path = base / path
    if not path.is_file():
        raise ConfigError(f"{key}: file not found: {path}")
    return path


def _population(data: Mapping) -> PopulationSpec:
    _only("population", data, ("total", "mix", "archetypes", "interests", "tracked_actors", "profiles"))
    spec = PopulationSpec()
    kw: dict[str, Any] = {}
    if "total" in data:
        kw["total"] = int(data["total"])
    if "mix" in data:
        kw["mix"] = {str(k): float(v) for k, v in data["mix"].items()}
    if "interests" in data:
        kw["interests"] = tuple(int(v) for v in data["interests"])
    if "tracked_actors" in data:
        kw["tracked_actors"] = int(data["tracked_actors"])
    if "archetypes" in data:
        archs = dict(DEFAULT_ARCHETYPES)
        for label, params in data["archetypes"].items():
            if label not in archs:
                raise ConfigError(f"population.archetypes: unknown archetype {label!r}")
            try:
                archs[label] = replace(archs[label], **params)
            except TypeError as exc:
                raise ConfigError(f"population.archetypes.{label}: {exc}") from None
        kw["archetypes"] = archs
    if "profiles" in data:
        kw["profiles"] = _profiles(data["profiles"])
    try:
        return replace(spec, **kw)
    except ValueError as exc:
        raise ConfigError(f"population: {exc}") from None


def _profiles(data: Mapping) -> ProfileDistribution:
    names = [f.name for f in dataclasses.fields(ProfileDistribution)]
    _only("population.profiles", data, names)
    kw: dict[str, Any] = {}
    for k, v in data.items():
        if k in ("statuses", "friends", "followers", "listed"):
            kw[k] = HeavyTail(float(v["median"]), float(v["dispersion"]))
        elif k == "age_days":
            kw[k] = (int(v[0]), int(v[1]))
        elif k == "locales":
            kw[k] = {str(a): float(b) for a, b in v.items()}
        else:
            kw[k] = v
    return ProfileDistribution(**kw)


def _settings(data: Mapping, base: CampaignSettings) -> CampaignSettings:
    names = {f.name for f in dataclasses.fields(CampaignSettings)}
    _only("settings", data, names)
    kw = dict(data)
    if "start_date" in kw:
        kw["start_date"] = dt.date.fromisoformat(str(kw["start_date"]))
    if "limits" in kw:
        kw["limits"] = RateLimitPolicy(**kw["limits"])
    return replace(base, **kw)


def _noise(data: Mapping) -> NoiseSpec:
    names = [f.name for f in dataclasses.fields(NoiseSpec)]
    _only("noise", data, names)
    if data.get("mode") == "oracle" and len(data) == 1:
        return NoiseSpec.oracle()
    kw = dict(data)
    for k in ("bot_shape", "human_shape"):
        if k in kw:
            kw[k] = tuple(float(x) for x in kw[k])
    return NoiseSpec(**kw)


TOP_KEYS = (
    "seed", "ticks", "warmup_ticks", "honeypots", "population", "settings", "noise", "threshold",
    "output", "actors", "news", "actor_statuses", "news_per_day",
)


def parse_config(data: Mapping, base_dir: str | Path = ".", source_bytes: bytes = b"") -> CampaignConfig:
    """Validate a decoded config mapping; relative paths resolve against ``base_dir``."""
    if not isinstance(data, Mapping):
        raise ConfigError("config must be a mapping")
    _only("config", data, TOP_KEYS)
    if "seed" not in data or data["seed"] is None:
        raise ConfigError("seed is mandatory")
    base = Path(base_dir)
    try:
        seed = int(data["seed"])
        hp = data.get("honeypots", "figure2")
        preset = None
        if isinstance(hp, str):
            if hp not in PRESETS:
                raise ConfigError(f"honeypots: unknown preset {hp!r}")
            preset = hp
            honeypots = load_figure2_matrix()
        else:
            honeypots = parse_honeypot_list(hp)
        settings = _settings(data.get("settings") or {}, CampaignSettings())
        if "ticks" in data:
            settings = replace(settings, ticks=int(data["ticks"]))
        if "warmup_ticks" in data:
            settings = replace(settings, warmup_ticks=int(data["warmup_ticks"]))
        if "news_per_day" in data:
            settings = replace(settings, news_per_day=int(data["news_per_day"]))
        if settings.ticks < 0 or settings.warmup_ticks < 0:
            raise ConfigError("tick counts must be >= 0")
        cfg = CampaignConfig(
            seed=seed,
            honeypots=honeypots,
            population=_population(data.get("population") or {}),
            settings=settings,
            noise=_noise(data.get("noise") or {}),
            threshold=float(data.get("threshold", THRESHOLD)),
            output=(base / data["output"]) if data.get("output") else None,
            preset=preset,
            source_bytes=source_bytes,
        )
    except ConfigError:
        raise
    except (TypeError, ValueError, KeyError) as exc:
        raise ConfigError(str(exc)) from None
    for key, attr in (("actors", "actors_file"), ("news", "news_file"), ("actor_statuses", "actor_statuses_file")):
        if data.get(key):
            setattr(cfg, attr, _file(base, data[key], key))
    return cfg


def load_config(path: str | Path) -> CampaignConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    raw = path.read_bytes()
    try:
        data = yaml.safe_load(raw.decode("utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return parse_config(data or {}, path.parent, raw)
