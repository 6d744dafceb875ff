"""Target selection and execution of the content-consumption techniques."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Hashable, Sequence

from ..platform import InteractionEvent, Platform, Status
from .catalogue import TechniqueSpec
from .trends import KeywordTrend

WEEK = 7 * 24


def select_targets(
    spec: TechniqueSpec,
    feed: Sequence[Hashable],
    cursor: int,
    rng: random.Random,
    n: int,
    seen: set | frozenset = frozenset(),
) -> tuple[list, int]:
    """Pick up to ``n`` unseen candidates from ``feed``.

    Random ordering samples without replacement from the whole feed;
    everything else walks the feed from ``cursor``, wrapping once.
    """
    if not feed or n <= 0:
        return [], cursor
    size = len(feed)
    if spec.ordering == "random":
        # rejection sampling first; exact filtering when the feed is mostly used up
        out, tried = [], set()
        for _ in range(8 * n):
            i = rng.randrange(size)
            if i in tried:
                continue
            tried.add(i)
            if feed[i] not in seen and feed[i] not in out:
                out.append(feed[i])
                if len(out) == n:
                    return out, cursor
        pool = list(dict.fromkeys(x for x in feed if x not in seen and x not in out))
        return out + rng.sample(pool, min(n - len(out), len(pool))), cursor
    out = []
    pos = cursor % size
    for _ in range(size):
        item = feed[pos]
        pos = (pos + 1) % size
        if item in seen or item in out:
            continue
        out.append(item)
        if len(out) == n:
            break
    return out, pos


@dataclass
class ConsumptionContext:
    """What a consumption technique may look at during one tick."""

    platform: Platform
    actors: Sequence[int]
    trends: Sequence[KeywordTrend]
    region: str = "ZA"
    window: int = WEEK
    _feed_cache: dict = field(default_factory=dict, repr=False)

    def keyword_feed(self) -> list[Status]:
        """Trend-keyword statuses from the preceding week, in search order.

        The window is anchored at the start of the current day.
        """
        tick = self.platform.tick
        key = (tick // 24, tuple(t.keyword for t in self.trends))
        if self._feed_cache.get("key") != key:
            start = (tick // 24) * 24
            merged: dict[int, Status] = {}
            for trend in self.trends:
                for st in self.platform.search_statuses(trend.keyword, start - self.window, start):
                    merged[st.id] = st
            feed = [merged[i] for i in sorted(merged)]
            self._feed_cache.clear()
            self._feed_cache.update(
                key=key,
                statuses=feed,
                authors=list(dict.fromkeys(s.author for s in feed)),
                ids=[s.id for s in feed],
                by_id=merged,
            )
        return self._feed_cache["statuses"]

    def keyword_feed_views(self) -> tuple[list[int], list[int], dict[int, Status]]:
        self.keyword_feed()
        c = self._feed_cache
        return c["authors"], c["ids"], c["by_id"]

    def geo_stream(self) -> list[Status]:
        return self.platform.stream_filter([t.keyword for t in self.trends], geo=self.region)


@dataclass
class TechniqueState:
    """Per-honeypot, per-technique cursor and memory of consumed targets."""

    spec: TechniqueSpec
    cursor: int = 0
    feed_day: int | None = None
    seen: set = field(default_factory=set)


class _Skip:
    """Membership test combining consumed targets with accounts never targeted
    (the honeypot itself, other honeypots, suspended users)."""

    def __init__(self, platform: Platform, honeypot: int, consumed, by_status: dict | None = None):
        self.p = platform
        self.honeypot = honeypot
        self.consumed = consumed
        self.by_status = by_status

    def _bad_user(self, uid: int) -> bool:
        return uid == self.honeypot or uid in self.p.honeypots or self.p.users[uid].suspended

    def __contains__(self, item) -> bool:
        if item in self.consumed:
            return True
        if self.by_status is not None:
            return self._bad_user(self.by_status[item].author)
        return self._bad_user(item)


def run_consumption_technique(
    state: TechniqueState,
    honeypot: int,
    ctx: ConsumptionContext,
    budget: int,
    rng: random.Random,
) -> list[InteractionEvent | None]:
    """Issue up to ``budget`` interactions for one consumption technique.

    Returns the result of every interact() call made; rate-limited calls
    show up as ``None``.
    """
    spec = state.spec
    p = ctx.platform
    verb = spec.verb
    calls: list[InteractionEvent | None] = []

    if spec.target_source == "political_actors":
        if verb == "follow":
            skip = _Skip(p, honeypot, p.friends(honeypot))
            chosen, state.cursor = select_targets(spec, ctx.actors, state.cursor, rng, budget, skip)
            for a in chosen:
                calls.append(p.interact(honeypot, "follow", a, technique=spec.id))
            return calls
        # most recent status of each actor; a retweet resolves to its original
        latest: dict[int, Status] = {}
        for a in ctx.actors:
            st = p.latest_status(a)
            if st is not None and st.is_retweet:
                st = p.statuses[st.retweet_of]
            if st is not None:
                latest[a] = st
        feed = [a for a in ctx.actors if a in latest]
        done = {a for a in feed if latest[a].id in state.seen}
        chosen, state.cursor = select_targets(spec, feed, state.cursor, rng, budget, _Skip(p, honeypot, done))
        for a in chosen:
            st = latest[a]
            state.seen.add(st.id)
            calls.append(p.interact(honeypot, verb, st.author, st.id, technique=spec.id))
        return calls

    if spec.target_source == "keyword_feed":
        authors, ids, by_id = ctx.keyword_feed_views()
        day = p.tick // 24
        if state.feed_day != day:
            state.feed_day = day
            state.cursor = 0
    else:
        stream = ctx.geo_stream()
        authors = list(dict.fromkeys(s.author for s in stream))
        ids = [s.id for s in stream]
        by_id = {s.id: s for s in stream}
        state.cursor = 0

    if verb == "follow":
        skip = _Skip(p, honeypot, p.friends(honeypot))
        chosen, state.cursor = select_targets(spec, authors, state.cursor, rng, budget, skip)
        for a in chosen:
            calls.append(p.interact(honeypot, "follow", a, technique=spec.id))
    else:
        skip = _Skip(p, honeypot, state.seen, by_id)
        chosen, state.cursor = select_targets(spec, ids, state.cursor, rng, budget, skip)
        for sid in chosen:
            state.seen.add(sid)
            calls.append(p.interact(honeypot, verb, by_id[sid].author, sid, technique=spec.id))
    return calls
