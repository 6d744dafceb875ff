"""Ground-truth-labelled synthetic population and its reactive behaviour."""

from __future__ import annotations

import math
import random
import string
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np

from .platform import Platform, PlatformError, Status

AUTOMATED = "automated"
HUMAN = "human"

ARCHETYPE_LABELS = (
    "FollowBackBot",
    "KeywordBot",
    "AmplifierBot",
    "Cyborg",
    "CasualHuman",
    "EngagedHuman",
)


# ---------------------------------------------------------------------------
# Archetypes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Archetype:
    """Behavioural parameters of one class of account.

    Probabilities are per stimulus. ``profile_check`` means the account
    looks at who followed/engaged it before reciprocating, and is put off by
    gibberish or by very high posting rates.
    """

    label: str
    ground_truth_class: str
    follow_back_p: float = 0.0
    keyword_trigger_p: float = 0.0
    gibberish_aversion_p: float = 0.0
    daily_activity_rate: float = 1.0
    engage_follow_p: float = 0.0
    amplify_follow_p: float = 0.0
    amplify_engage_p: float = 0.0
    spam_aversion_p: float = 0.0
    retweet_share: float = 0.5
    online_p: float = 1.0
    geotag_p: float = 0.0
    home_region_p: float = 0.9
    profile_check: bool = False
    # halves the reciprocation chance per this many idle ticks; 0 disables
    attention_halflife: float = 0.0

    def __post_init__(self):
        if self.ground_truth_class not in (AUTOMATED, HUMAN):
            raise ValueError(f"bad class {self.ground_truth_class!r}")
        if self.label == "Cyborg" and self.ground_truth_class != HUMAN:
            raise ValueError("cyborgs are human-operated accounts")
        for name in (
            "follow_back_p", "keyword_trigger_p", "gibberish_aversion_p", "engage_follow_p",
            "amplify_follow_p", "amplify_engage_p", "spam_aversion_p", "retweet_share", "online_p", "geotag_p",
            "home_region_p",
        ):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{self.label}.{name}={v} outside [0, 1]")
        if self.daily_activity_rate < 0:
            raise ValueError("daily_activity_rate must be >= 0")

    @property
    def automated(self) -> bool:
        return self.ground_truth_class == AUTOMATED


DEFAULT_ARCHETYPES: dict[str, Archetype] = {
    "FollowBackBot": Archetype(
        "FollowBackBot", AUTOMATED, follow_back_p=0.9, engage_follow_p=0.3,
        daily_activity_rate=6.0, geotag_p=0.02, home_region_p=0.4,
    ),
    "KeywordBot": Archetype(
        "KeywordBot", AUTOMATED, follow_back_p=0.1, keyword_trigger_p=0.05,
        daily_activity_rate=4.0, retweet_share=1.0, geotag_p=0.0, home_region_p=0.4,
    ),
    "AmplifierBot": Archetype(
        "AmplifierBot", AUTOMATED, follow_back_p=0.2, keyword_trigger_p=0.015,
        amplify_follow_p=0.35, amplify_engage_p=0.03, daily_activity_rate=3.0, retweet_share=1.0,
        geotag_p=0.0, home_region_p=0.6,
    ),
    "Cyborg": Archetype(
        "Cyborg", HUMAN, follow_back_p=0.6, keyword_trigger_p=0.005, gibberish_aversion_p=0.9,
        engage_follow_p=0.2, daily_activity_rate=3.0, online_p=0.3, geotag_p=0.3,
        attention_halflife=4.0,
    ),
    "CasualHuman": Archetype(
        "CasualHuman", HUMAN, follow_back_p=0.15, keyword_trigger_p=0.003,
        gibberish_aversion_p=0.95, engage_follow_p=0.03, spam_aversion_p=0.8,
        daily_activity_rate=1.0, retweet_share=0.3, online_p=0.2, geotag_p=0.35,
        profile_check=True, attention_halflife=3.0,
    ),
    "EngagedHuman": Archetype(
        "EngagedHuman", HUMAN, follow_back_p=0.3, keyword_trigger_p=0.006,
        gibberish_aversion_p=0.9, engage_follow_p=0.08, spam_aversion_p=0.7,
        daily_activity_rate=3.0, retweet_share=0.4, online_p=0.4, geotag_p=0.45,
        profile_check=True, attention_halflife=4.0,
    ),
}

DEFAULT_MIX = {
    "FollowBackBot": 0.07,
    "KeywordBot": 0.03,
    "AmplifierBot": 0.05,
    "Cyborg": 0.10,
    "CasualHuman": 0.48,
    "EngagedHuman": 0.27,
}


# ---------------------------------------------------------------------------
# Population spec
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HeavyTail:
    """Log-normal counter distribution given by its median and log-sd."""

    median: float
    dispersion: float

    def draw(self, rng: np.random.Generator, size=None):
        return rng.lognormal(math.log(self.median), self.dispersion, size)


@dataclass(frozen=True)
class ProfileDistribution:
    # log-sds follow from the mean/median ratios of observed attracted accounts
    statuses: HeavyTail = HeavyTail(1666, 1.96)
    friends: HeavyTail = HeavyTail(1496, 2.21)
    followers: HeavyTail = HeavyTail(691, 2.72)
    listed: HeavyTail = HeavyTail(1, 3.0)
    age_days: tuple[int, int] = (29, 3486)
    verified_fraction: float = 10 / 288
    locales: Mapping[str, float] = field(
        default_factory=lambda: {"en": 0.86, "af": 0.06, "zu": 0.03, "xh": 0.02, "uk": 0.02, "zh": 0.01}
    )
    region: str = "ZA"


@dataclass(frozen=True)
class PopulationSpec:
    total: int = 1000
    mix: Mapping[str, float] = field(default_factory=lambda: dict(DEFAULT_MIX))
    profiles: ProfileDistribution = field(default_factory=ProfileDistribution)
    archetypes: Mapping[str, Archetype] = field(default_factory=lambda: dict(DEFAULT_ARCHETYPES))
    interests: tuple[int, int] = (1, 3)
    tracked_actors: int = 10

    def __post_init__(self):
        if self.total < 1:
            raise ValueError("population total must be >= 1")
        unknown = set(self.mix) - set(self.archetypes)
        if unknown:
            raise ValueError(f"unknown archetypes in mix: {sorted(unknown)}")
        if any(v < 0 for v in self.mix.values()):
            raise ValueError("mix fractions must be non-negative")
        if abs(sum(self.mix.values()) - 1.0) > 1e-9:
            raise ValueError(f"mix fractions sum to {sum(self.mix.values())!r}, not 1")


@dataclass
class Agent:
    user_id: int
    archetype: Archetype
    interests: tuple[str, ...] = ()
    tracked: frozenset[int] = frozenset()


# ---------------------------------------------------------------------------
# Generation
# ---------------------------------------------------------------------------

_SYLLABLES = ["ka", "lo", "mi", "ne", "zu", "ba", "the", "si", "wa", "ro", "an", "el", "jo", "ma", "ti", "vu"]


def _handle(rng: np.random.Generator) -> str:
    n = int(rng.integers(2, 4))
    name = "".join(_SYLLABLES[int(i)] for i in rng.integers(0, len(_SYLLABLES), n))
    tail = "".join(string.digits[int(i)] for i in rng.integers(0, 10, int(rng.integers(1, 5))))
    return name + tail


def draw_profile(dist: ProfileDistribution, rng: np.random.Generator, home_region_p: float = 0.9) -> dict:
    lo, hi = dist.age_days
    locales = list(dist.locales)
    weights = np.array([dist.locales[k] for k in locales], dtype=float)
    return {
        "statuses_count": int(round(dist.statuses.draw(rng))),
        "friends_count": int(round(dist.friends.draw(rng))),
        "followers_count": int(round(dist.followers.draw(rng))),
        "listed_count": int(math.floor(dist.listed.draw(rng))),
        "account_age_days": int(rng.integers(lo, hi + 1)),
        "verified": bool(rng.random() < dist.verified_fraction),
        "locale": locales[int(rng.choice(len(locales), p=weights / weights.sum()))],
        "geo_home": dist.region if rng.random() < home_region_p else None,
    }


def create_user(platform: Platform, dist: ProfileDistribution, rng: np.random.Generator,
                archetype: str | None = None, home_region_p: float = 0.9) -> int:
    """Draw a profile and register it under a fresh, unused handle."""
    profile = draw_profile(dist, rng, home_region_p)
    while True:
        handle = _handle(rng)
        try:
            return platform.create_user(handle, archetype_ref=archetype, **profile)
        except PlatformError:
            # handle collision; anything else is a real error
            if handle not in platform._handles:
                raise


def assign_archetypes(spec: PopulationSpec, rng: np.random.Generator) -> list[str]:
    """Largest-remainder allocation of ``spec.total`` slots, then shuffled."""
    labels = list(spec.mix)
    quotas = [spec.mix[l] * spec.total for l in labels]
    counts = [int(math.floor(q)) for q in quotas]
    order = sorted(range(len(labels)), key=lambda i: (-(quotas[i] - counts[i]), i))
    for i in order[: spec.total - sum(counts)]:
        counts[i] += 1
    slots = [l for l, c in zip(labels, counts) for _ in range(c)]
    rng.shuffle(slots)
    return slots


def generate_population(
    platform: Platform,
    spec: PopulationSpec,
    rng: np.random.Generator,
    topics: Sequence[str] = (),
) -> list[Agent]:
    """Create ``spec.total`` accounts with hidden archetypes.

    Interests are drawn from ``topics``; tracked actors are bound later,
    once actor accounts exist (see :func:`bind_tracked_actors`).
    """
    if any(u.id not in platform.honeypots for u in platform.users):
        raise ValueError("population must be generated on a platform without other users")
    agents = []
    for label in assign_archetypes(spec, rng):
        arch = spec.archetypes[label]
        uid = create_user(platform, spec.profiles, rng, label, arch.home_region_p)
        interests: tuple[str, ...] = ()
        if topics:
            lo, hi = spec.interests
            k = min(int(rng.integers(lo, hi + 1)), len(topics))
            # interest in a topic falls off with its popularity rank
            w = 1.0 / np.arange(1, len(topics) + 1)
            picks = rng.choice(len(topics), size=k, replace=False, p=w / w.sum())
            interests = tuple(topics[int(i)] for i in sorted(picks))
        agents.append(Agent(uid, arch, interests))
    return agents


def bind_tracked_actors(agents: Sequence[Agent], actor_ids: Sequence[int], k: int,
                        rng: np.random.Generator) -> None:
    if not actor_ids:
        return
    for a in agents:
        if a.archetype.amplify_follow_p > 0 or a.archetype.label == "AmplifierBot":
            picks = rng.choice(len(actor_ids), size=min(k, len(actor_ids)), replace=False)
            a.tracked = frozenset(actor_ids[int(i)] for i in picks)


def with_overrides(spec: PopulationSpec, **params: float) -> PopulationSpec:
    """Copy of ``spec`` with the given parameters forced on every archetype."""
    return replace(spec, archetypes={k: replace(v, **params) for k, v in spec.archetypes.items()})


# ---------------------------------------------------------------------------
# Behaviour
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Stimulus:
    """Something an agent noticed this tick.

    ``source`` is the account responsible; ``source_coherent`` and
    ``source_rate`` describe that account's recent output (latest status
    coherent? statuses in the last day). ``idle`` is how long the observing
    agent had been silent when the stimulus arrived.
    """

    source: int
    status: Status | None = None
    technique: int | None = None
    source_coherent: bool = True
    source_rate: int = 0
    idle: int = 0
    kind: str = ""


@dataclass
class Observations:
    followed_by: list[Stimulus] = field(default_factory=list)
    engaged_by: list[Stimulus] = field(default_factory=list)
    statuses: list[Stimulus] = field(default_factory=list)
    actor_engagers: list[Stimulus] = field(default_factory=list)

    def __bool__(self) -> bool:
        return bool(self.followed_by or self.engaged_by or self.statuses or self.actor_engagers)


@dataclass(frozen=True)
class Action:
    kind: str
    target_user: int
    target_status: int | None = None
    technique: int | None = None


SPAM_TOLERANCE = 12  # statuses per day before humans get suspicious


def _trust(arch: Archetype, s: Stimulus) -> float:
    t = 1.0
    if arch.attention_halflife:
        t *= 0.5 ** (s.idle / arch.attention_halflife)
    if not arch.profile_check:
        return t
    if not s.source_coherent:
        t *= 1.0 - arch.gibberish_aversion_p
    if s.source_rate > SPAM_TOLERANCE:
        t *= 1.0 - arch.spam_aversion_p
    return t


def agent_step(agent: Agent, obs: Observations, rng: random.Random) -> list[Action]:
    """Decide this tick's reactions of one agent."""
    arch = agent.archetype
    actions: list[Action] = []
    followed: set[int] = set()

    def follow(s: Stimulus):
        if s.source not in followed and s.source != agent.user_id:
            followed.add(s.source)
            actions.append(Action("follow", s.source, None, s.technique))

    for s in obs.followed_by:
        if arch.follow_back_p and rng.random() < arch.follow_back_p * _trust(arch, s):
            follow(s)
    for s in obs.engaged_by:
        if arch.engage_follow_p and rng.random() < arch.engage_follow_p * _trust(arch, s):
            follow(s)
    for s in obs.actor_engagers:
        p = arch.amplify_follow_p if s.kind == "follow" else arch.amplify_engage_p
        if p and rng.random() < p:
            follow(s)

    for s in obs.statuses:
        st = s.status
        if st is None or st.author == agent.user_id or not arch.keyword_trigger_p:
            continue
        if arch.label == "KeywordBot":
            hit = bool(set(st.hashtags) & set(agent.interests))
        elif arch.label == "AmplifierBot":
            hit = bool(set(st.mentions) & agent.tracked)
        else:
            hit = True
        if not hit:
            continue
        p = arch.keyword_trigger_p
        if not arch.automated and not st.coherent:
            p *= 1.0 - arch.gibberish_aversion_p
        if rng.random() < p:
            verb = "retweet" if rng.random() < arch.retweet_share else "favourite"
            actions.append(Action(verb, st.author, st.id, s.technique))
    return actions
