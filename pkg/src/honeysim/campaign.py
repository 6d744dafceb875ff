"""Campaign engine: warm-up history, then honeypots, agents and limits per tick."""

from __future__ import annotations

import datetime as dt
import logging
import random
import re
from collections import defaultdict
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .corpora import (
    ActorRegistry,
    CorpusError,
    NewsCorpus,
    ScriptedStatus,
    TextModel,
    default_actor_registry,
    synthetic_news,
)
from .honeypot import CAMPAIGN_TICKS, HoneypotAgent, HoneypotConfig, build_honeypot
from .platform import InteractionEvent, Platform, RateLimitPolicy, Status, TICKS_PER_DAY
from .population import (
    Agent,
    Observations,
    PopulationSpec,
    Stimulus,
    agent_step,
    bind_tracked_actors,
    draw_profile,
    generate_population,
)
from .techniques import ConsumptionContext, ContentSources, extract_trending_keywords
from .techniques.consumption import WEEK

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CampaignSettings:
    ticks: int = CAMPAIGN_TICKS
    warmup_ticks: int = WEEK
    start_date: dt.date = dt.date(2019, 3, 4)
    region: str = "ZA"
    trend_k: int = 10
    trend_ngram: int = 1
    observation_bound: int = 3
    actor_daily_rate: float = 3.0
    actor_geotag_p: float = 0.1
    mention_p: float = 0.15
    news_per_day: int = 20
    limits: RateLimitPolicy = field(default_factory=RateLimitPolicy)
    handle_template: str = "hp_{name}"

    def date_of(self, tick: int) -> dt.date:
        return self.start_date + dt.timedelta(days=tick // TICKS_PER_DAY)


@dataclass
class CampaignResult:
    platform: Platform
    honeypots: list[HoneypotAgent]
    agents: list[Agent]
    registry: ActorRegistry
    suspensions: list[tuple[int, int]]
    status_techniques: dict[int, int]
    seed: int
    settings: CampaignSettings

    @property
    def honeypot_ids(self) -> set[int]:
        return {h.user_id for h in self.honeypots}

    @property
    def honeypot_events(self) -> list[InteractionEvent]:
        hp = self.honeypot_ids
        return [
            r for r in self.platform.log
            if isinstance(r, InteractionEvent) and (r.actor in hp or r.target_user in hp)
        ]

    @property
    def attraction_events(self) -> list[InteractionEvent]:
        """Interactions received by honeypots from non-honeypot accounts."""
        hp = self.honeypot_ids
        return [
            r for r in self.platform.log
            if isinstance(r, InteractionEvent) and r.target_user in hp and r.actor not in hp
        ]

    def attracted(self) -> dict[int, set[int]]:
        out: dict[int, set[int]] = {h.user_id: set() for h in self.honeypots}
        for ev in self.attraction_events:
            out[ev.target_user].add(ev.actor)
        return out

    def labels(self) -> list[dict]:
        """Ground truth for every account: population, actors and honeypots."""
        roles = {a.user_id: a for a in self.agents}
        actor_ids = set(self.registry.ids.values())
        rows = []
        for u in self.platform.users:
            if u.id in roles:
                arch = roles[u.id].archetype
                rows.append({"user_id": u.id, "handle": u.handle, "role": "population",
                             "archetype": arch.label, "class": arch.ground_truth_class})
            elif u.id in actor_ids:
                rows.append({"user_id": u.id, "handle": u.handle, "role": "actor",
                             "archetype": "PoliticalActor", "class": "human"})
            else:
                rows.append({"user_id": u.id, "handle": u.handle, "role": "honeypot",
                             "archetype": "Honeypot", "class": "honeypot"})
        return rows


class _Observer:
    """Turns log records appended since the last call into per-agent stimuli."""

    def __init__(self, platform: Platform, agents: Sequence[Agent], actor_ids: Sequence[int],
                 status_techniques: dict[int, int]):
        self.p = platform
        self.cursor = len(platform.log)
        self.agent_ids = {a.user_id for a in agents}
        self.trackers: dict[int, list[int]] = defaultdict(list)
        for a in agents:
            for act in sorted(a.tracked):
                self.trackers[act].append(a.user_id)
        self.actor_ids = set(actor_ids)
        self.status_techniques = status_techniques
        self._signals: dict[int, tuple[bool, int]] = {}

    def signals(self, uid: int) -> tuple[bool, int]:
        """(latest original coherent?, originals posted in the last day)."""
        if uid not in self._signals:
            p = self.p
            recent = p.statuses_by(uid, start=p.tick - TICKS_PER_DAY + 1)
            originals = [s for s in recent if not s.is_retweet]
            coherent = True
            latest = p.latest_status(uid)
            if latest is not None:
                coherent = latest.coherent
            self._signals[uid] = (coherent, len(originals))
        return self._signals[uid]

    def _stim(self, source: int, status: Status | None, technique: int | None, observer: int | None = None) -> Stimulus:
        coherent, rate = self.signals(source)
        idle = 0
        if observer is not None:
            last = self.p.latest_status(observer)
            idle = self.p.tick - last.tick if last is not None else 10**6
        return Stimulus(source, status, technique, coherent, rate, idle)

    def collect(self):
        self._signals.clear()
        records = self.p.log[self.cursor :]
        self.cursor = len(self.p.log)
        obs: dict[int, Observations] = defaultdict(Observations)
        by_kw: dict[str, list[Status]] = defaultdict(list)
        by_tag: dict[str, list[Status]] = defaultdict(list)
        by_mention: dict[int, list[Status]] = defaultdict(list)
        for rec in records:
            if isinstance(rec, Status):
                if rec.is_retweet:
                    continue
                words = {t.lstrip("#").lower() for t in rec.tokens if not t.startswith("@")}
                for w in sorted(words):
                    by_kw[w].append(rec)
                for h in rec.hashtags:
                    by_tag[h].append(rec)
                for m in rec.mentions:
                    by_mention[m].append(rec)
                    if m in self.agent_ids:
                        obs[m].statuses.append(self._stim(rec.author, rec, self.status_techniques.get(rec.id)))
                continue
            target = rec.target_user
            if target in self.agent_ids:
                stim = self._stim(rec.actor, None, rec.technique, observer=target)
                if rec.kind == "follow":
                    obs[target].followed_by.append(stim)
                else:
                    obs[target].engaged_by.append(stim)
            if target in self.actor_ids and rec.actor not in self.actor_ids:
                for tracker in self.trackers.get(target, ()):
                    if tracker != rec.actor:
                        stim = self._stim(rec.actor, None, rec.technique)
                        obs[tracker].actor_engagers.append(replace(stim, kind=rec.kind))
        return obs, by_kw, by_tag, by_mention


def _organic_post(platform: Platform, uid: int, tokens, hashtags, geotag, mention=None) -> None:
    mentions = ()
    if mention is not None and mention != uid:
        tokens = tokens + ["@" + platform.users[mention].handle]
        mentions = (mention,)
    platform.post_status(uid, tokens, hashtags=hashtags, geotag=geotag, mentions=mentions)


def _post_scripted(platform: Platform, uid: int, tokens: list[str]) -> None:
    tags = [t[1:] for t in tokens if re.fullmatch(r"#\w+", t)]
    mentions = []
    for t in tokens:
        if re.fullmatch(r"@\w+", t):
            try:
                mentions.append(platform.user_by_handle(t[1:]))
            except KeyError:
                pass
    platform.post_status(uid, tokens, hashtags=tags, mentions=mentions)


def run_campaign(
    configs: Sequence[HoneypotConfig],
    population: PopulationSpec,
    seed: int,
    settings: CampaignSettings | None = None,
    registry: ActorRegistry | None = None,
    news: NewsCorpus | None = None,
    text: TextModel | None = None,
    actor_script: Sequence[ScriptedStatus] | None = None,
) -> CampaignResult:
    """Simulate one campaign. Deterministic given ``seed`` and inputs.

    With ``actor_script`` the political actors post exactly those statuses
    instead of synthetic ones.
    """
    settings = settings or CampaignSettings()
    registry = registry or default_actor_registry()
    registry = ActorRegistry(list(registry.handles), list(registry.leaders))
    text = text or TextModel.default()
    total_ticks = settings.warmup_ticks + settings.ticks
    if news is None:
        days = total_ticks // TICKS_PER_DAY + 2
        news = synthetic_news(settings.start_date - dt.timedelta(days=1), days, settings.news_per_day,
                              seed=seed, model=text)

    ss = np.random.SeedSequence(seed)
    pop_seq, actor_seq, organic_seq, agent_seq, hp_seq = ss.spawn(5)
    pop_rng = np.random.default_rng(pop_seq)
    actor_rng = np.random.default_rng(actor_seq)
    organic = random.Random(int(organic_seq.generate_state(1)[0]))
    agent_rng = random.Random(int(agent_seq.generate_state(1)[0]))
    hp_rng = random.Random(int(hp_seq.generate_state(1)[0]))

    platform = Platform(settings.limits)
    agents = generate_population(platform, population, pop_rng, text.topics)

    leaders = set(registry.leaders)
    for handle in registry.handles:
        prof = draw_profile(population.profiles, actor_rng, home_region_p=1.0)
        prof["verified"] = prof["verified"] or handle in leaders
        registry.ids[handle] = platform.create_user(handle, archetype_ref="PoliticalActor", **prof)
    actor_ids = registry.actor_ids
    leader_ids = set(registry.leader_ids)
    bind_tracked_actors(agents, actor_ids, population.tracked_actors, pop_rng)

    honeypots: list[HoneypotAgent] = []
    for cfg in configs:
        for r in range(cfg.replicates):
            honeypots.append(build_honeypot(platform, cfg, r, settings.handle_template))

    status_techniques: dict[int, int] = {}
    suspensions: list[tuple[int, int]] = []
    actor_pairs = [(registry.ids[h], h) for h in registry.handles]
    script: dict[int, list[ScriptedStatus]] | None = None
    if actor_script is not None:
        script = defaultdict(list)
        for item in actor_script:
            if item.handle not in registry.ids:
                raise CorpusError(f"scripted status by unknown actor {item.handle!r}")
            script[item.tick].append(item)
    region = settings.region

    def organic_tick():
        for a in agents:
            arch = a.archetype
            if platform.users[a.user_id].suspended:
                continue
            if organic.random() < arch.daily_activity_rate / TICKS_PER_DAY:
                toks, tags = text.status(organic, a.interests or None)
                geo = region if (platform.users[a.user_id].geo_home == region
                                 and organic.random() < arch.geotag_p) else None
                mention = organic.choice(actor_ids) if organic.random() < settings.mention_p else None
                _organic_post(platform, a.user_id, toks, tags, geo, mention)
        if script is not None:
            for item in script.get(platform.tick, ()):
                _post_scripted(platform, registry.ids[item.handle], item.tokens)
            return
        for uid in actor_ids:
            if organic.random() < settings.actor_daily_rate / TICKS_PER_DAY:
                toks, tags = text.status(organic)
                geo = region if organic.random() < settings.actor_geotag_p else None
                _organic_post(platform, uid, toks, tags, geo)

    for _ in range(settings.warmup_ticks):
        organic_tick()
        platform.end_tick()

    observer = _Observer(platform, agents, actor_ids, status_techniques)
    trends: list = []
    ctx = None
    sources = ContentSources()
    day = None
    for _ in range(settings.ticks):
        tick = platform.tick
        if tick // TICKS_PER_DAY != day:
            day = tick // TICKS_PER_DAY
            start = day * TICKS_PER_DAY
            leader_statuses = [
                s for uid in sorted(leader_ids) for s in platform.statuses_by(uid, start - WEEK, start)
            ]
            trends = extract_trending_keywords(leader_statuses, settings.trend_k, max_ngram=settings.trend_ngram)
            ctx = ConsumptionContext(platform, actor_ids, trends, region)
            political = sorted(
                (s.id, s.tokens)
                for uid in actor_ids
                for s in platform.statuses_by(uid, start - WEEK, start)
                if not s.is_retweet
            )
            yesterday = settings.date_of(tick) - dt.timedelta(days=1)
            sources = ContentSources(political, [(art.id, art.tokens) for art in news.on(yesterday)])

        organic_tick()
        for hp in honeypots:
            hp.act(platform, ctx, sources, actor_pairs, trends, hp_rng, status_techniques)

        obs, by_kw, by_tag, by_mention = observer.collect()
        bound = settings.observation_bound
        for a in agents:
            if platform.users[a.user_id].suspended:
                continue
            o = obs.get(a.user_id)
            arch = a.archetype
            if arch.keyword_trigger_p and agent_rng.random() < arch.online_p:
                if arch.label == "KeywordBot":
                    pools = [by_tag.get(k, ()) for k in a.interests]
                elif arch.label == "AmplifierBot":
                    pools = [by_mention.get(k, ()) for k in sorted(a.tracked)]
                else:
                    pools = [by_kw.get(k, ()) for k in a.interests]
                seen: dict[int, Status] = {}
                for pool in pools:
                    for st in pool:
                        seen.setdefault(st.id, st)
                if seen:
                    cands = [seen[i] for i in sorted(seen)]
                    picks = agent_rng.sample(cands, min(bound, len(cands)))
                    if o is None:
                        o = obs[a.user_id]
                    for st in picks:
                        o.statuses.append(observer._stim(st.author, st, status_techniques.get(st.id)))
            if not o:
                continue
            for act in agent_step(a, o, agent_rng):
                if platform.users[act.target_user].suspended:
                    continue
                platform.interact(a.user_id, act.kind, act.target_user, act.target_status, act.technique)

        for uid in platform.end_tick():
            suspensions.append((platform.tick - 1, uid))

    return CampaignResult(platform, honeypots, agents, registry, suspensions, status_techniques, seed, settings)
