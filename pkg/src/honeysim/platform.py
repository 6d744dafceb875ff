"""In-memory, single-threaded simulation of a Twitter-like platform.

The platform owns every account, status and interaction. All mutation goes
through :class:`Platform` so that the append-only log can be replayed to
reconstruct every counter.
"""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

TICKS_PER_DAY = 24
LANGUAGES = ("en", "af", "xh", "zu")
INTERACTION_KINDS = ("follow", "favourite", "retweet")


class PlatformError(Exception):
    """Raised when a platform operation is rejected outright."""


class SuspendedAccountError(PlatformError):
    pass


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------


@dataclass
class UserProfile:
    """A platform account.

    Counters start at the account's pre-simulation baseline (the history the
    account had before the run began) and are incremented by logged actions.
    """

    id: int
    handle: str
    statuses_count: int = 0
    friends_count: int = 0
    followers_count: int = 0
    listed_count: int = 0
    account_age_days: int = 0
    verified: bool = False
    locale: str = "en"
    geo_home: str | None = None
    suspended: bool = False
    suspended_tick: int | None = None
    # ground truth; only evaluation code reads this
    archetype_ref: str | None = field(default=None, repr=False)
    baseline: tuple[int, int, int] = field(default=(0, 0, 0), repr=False)


@dataclass(frozen=True)
class Status:
    id: int
    author: int
    tick: int
    tokens: tuple[str, ...]
    language: str = "en"
    coherent: bool = True
    mentions: tuple[int, ...] = ()
    hashtags: tuple[str, ...] = ()
    geotag: str | None = None
    retweet_of: int | None = None

    @property
    def is_retweet(self) -> bool:
        return self.retweet_of is not None

    def to_record(self) -> dict:
        return {
            "type": "status",
            "id": self.id,
            "tick": self.tick,
            "author": self.author,
            "kind": "retweet" if self.is_retweet else "original",
            "retweet_of": self.retweet_of,
            "language": self.language,
            "coherent": self.coherent,
            "geotag": self.geotag,
            "mentions": list(self.mentions),
            "hashtags": list(self.hashtags),
            "tokens": list(self.tokens),
        }


@dataclass(frozen=True)
class InteractionEvent:
    tick: int
    actor: int
    kind: str
    target_user: int
    target_status: int | None = None
    technique: int | None = None

    def to_record(self) -> dict:
        return {
            "type": "event",
            "tick": self.tick,
            "actor": self.actor,
            "kind": self.kind,
            "target_user": self.target_user,
            "target_status": self.target_status,
            "technique": self.technique,
        }


@dataclass(frozen=True)
class RateLimitPolicy:
    max_actions_per_tick: int = 10
    max_follows_per_day: int = 400
    suspension_threshold: int = 3

    def __post_init__(self):
        for name in ("max_actions_per_tick", "max_follows_per_day", "suspension_threshold"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


def normalise_keyword(keyword: str) -> str:
    return keyword.lstrip("#").lower()


# ---------------------------------------------------------------------------
# Platform
# ---------------------------------------------------------------------------


class Platform:
    def __init__(self, limits: RateLimitPolicy | None = None):
        self.limits = limits or RateLimitPolicy()
        self.tick = 0
        self.users: list[UserProfile] = []
        self.statuses: list[Status] = []
        self.log: list[Status | InteractionEvent] = []
        self.honeypots: set[int] = set()
        self.noops: list[tuple[int, int, str, int, int | None]] = []
        self.violations: list[tuple[int, int, str]] = []

        self._handles: dict[str, int] = {}
        self._friends: list[set[int]] = []
        self._followers: list[set[int]] = []
        self._engaged: set[tuple[int, str, int]] = set()
        self._by_author: list[list[int]] = []
        # keyword -> (ticks, status ids) of originals, both ascending
        self._kw_ticks: dict[str, list[int]] = {}
        self._kw_ids: dict[str, list[int]] = {}
        self._by_tick: dict[int, list[int]] = {}
        self._actions: dict[int, int] = {}
        self._follows_today: dict[int, int] = {}
        self._violation_days: dict[int, set[int]] = {}
        self._started = False

    # -- accounts -----------------------------------------------------------

    def create_user(self, handle: str, **profile) -> int:
        if handle in self._handles:
            raise PlatformError(f"duplicate handle {handle!r}")
        uid = len(self.users)
        user = UserProfile(id=uid, handle=handle, **profile)
        user.baseline = (user.statuses_count, user.friends_count, user.followers_count)
        self.users.append(user)
        self._handles[handle] = uid
        self._friends.append(set())
        self._followers.append(set())
        self._by_author.append([])
        return uid

    def user(self, uid: int) -> UserProfile:
        try:
            return self.users[uid]
        except IndexError:
            raise PlatformError(f"unknown user {uid}") from None

    def user_by_handle(self, handle: str) -> int:
        return self._handles[handle]

    def mark_honeypot(self, uid: int) -> None:
        self.user(uid)
        self.honeypots.add(uid)

    def is_active(self, uid: int) -> bool:
        return not self.users[uid].suspended

    def friends(self, uid: int) -> frozenset[int]:
        return frozenset(self._friends[uid])

    def followers(self, uid: int) -> frozenset[int]:
        return frozenset(self._followers[uid])

    # -- rate limiting ------------------------------------------------------

    def _check_active(self, uid: int) -> None:
        if self.user(uid).suspended:
            raise SuspendedAccountError(f"user {uid} is suspended")

    def _violate(self, uid: int, reason: str) -> None:
        self.violations.append((self.tick, uid, reason))
        self._violation_days.setdefault(uid, set()).add(self.tick // TICKS_PER_DAY)

    def _admit(self, uid: int, follow: bool = False) -> bool:
        if self._actions.get(uid, 0) >= self.limits.max_actions_per_tick:
            self._violate(uid, "actions_per_tick")
            return False
        if follow and self._follows_today.get(uid, 0) >= self.limits.max_follows_per_day:
            self._violate(uid, "follows_per_day")
            return False
        self._actions[uid] = self._actions.get(uid, 0) + 1
        if follow:
            self._follows_today[uid] = self._follows_today.get(uid, 0) + 1
        return True

    def _attribution(self, actor: int, target: int, technique: int | None) -> int | None:
        if actor in self.honeypots or target in self.honeypots:
            return technique
        return None

    # -- writes -------------------------------------------------------------

    def _append_status(self, status: Status) -> None:
        self.statuses.append(status)
        self.log.append(status)
        self._by_author[status.author].append(status.id)
        self.users[status.author].statuses_count += 1
        if status.is_retweet:
            return
        self._by_tick.setdefault(status.tick, []).append(status.id)
        for kw in _status_keywords(status):
            self._kw_ticks.setdefault(kw, []).append(status.tick)
            self._kw_ids.setdefault(kw, []).append(status.id)

    def post_status(
        self,
        author: int,
        tokens: Iterable[str],
        language: str = "en",
        coherent: bool = True,
        mentions: Iterable[int] = (),
        hashtags: Iterable[str] = (),
        geotag: str | None = None,
    ) -> int | None:
        """Publish an original status; returns its id, or None if rate-limited."""
        self._check_active(author)
        tokens = tuple(tokens)
        if not tokens:
            raise PlatformError("original statuses need at least one token")
        if language not in LANGUAGES:
            raise PlatformError(f"unsupported language {language!r}")
        mentions = tuple(mentions)
        hashtags = tuple(normalise_keyword(h) for h in hashtags)
        lowered = {t.lower() for t in tokens}
        for m in mentions:
            if "@" + self.user(m).handle.lower() not in lowered:
                raise PlatformError(f"mention of user {m} missing from tokens")
        for h in hashtags:
            if "#" + h not in lowered:
                raise PlatformError(f"hashtag #{h} missing from tokens")
        if not self._admit(author):
            return None
        status = Status(
            id=len(self.statuses),
            author=author,
            tick=self.tick,
            tokens=tokens,
            language=language,
            coherent=coherent,
            mentions=mentions,
            hashtags=hashtags,
            geotag=geotag,
        )
        self._append_status(status)
        return status.id

    def interact(
        self,
        actor: int,
        kind: str,
        target_user: int,
        target_status: int | None = None,
        technique: int | None = None,
    ) -> InteractionEvent | None:
        """Follow a user, or favourite/retweet one of their statuses.

        Returns None when the action is dropped by the rate limiter or is an
        idempotent repeat (recorded in ``violations`` / ``noops``).
        """
        self._check_active(actor)
        self.user(target_user)
        if kind == "follow":
            if target_status is not None:
                raise PlatformError("follow takes no target status")
            if target_user == actor:
                raise PlatformError("cannot follow oneself")
            if target_user in self._friends[actor]:
                self.noops.append((self.tick, actor, kind, target_user, None))
                return None
        elif kind in ("favourite", "retweet"):
            if target_status is None or not 0 <= target_status < len(self.statuses):
                raise PlatformError(f"dangling status {target_status}")
            st = self.statuses[target_status]
            if st.is_retweet:
                target_status = st.retweet_of
                st = self.statuses[target_status]
            if st.author != target_user:
                raise PlatformError(f"status {target_status} is not authored by {target_user}")
            if (actor, kind, target_status) in self._engaged:
                self.noops.append((self.tick, actor, kind, target_user, target_status))
                return None
        else:
            raise PlatformError(f"unknown interaction kind {kind!r}")

        if not self._admit(actor, follow=kind == "follow"):
            return None

        event = InteractionEvent(
            tick=self.tick,
            actor=actor,
            kind=kind,
            target_user=target_user,
            target_status=target_status,
            technique=self._attribution(actor, target_user, technique),
        )
        self.log.append(event)
        if kind == "follow":
            self._friends[actor].add(target_user)
            self._followers[target_user].add(actor)
            self.users[actor].friends_count += 1
            self.users[target_user].followers_count += 1
        else:
            self._engaged.add((actor, kind, target_status))
            if kind == "retweet":
                orig = self.statuses[target_status]
                self._append_status(
                    Status(
                        id=len(self.statuses),
                        author=actor,
                        tick=self.tick,
                        tokens=orig.tokens,
                        language=orig.language,
                        coherent=orig.coherent,
                        mentions=orig.mentions,
                        hashtags=orig.hashtags,
                        geotag=None,
                        retweet_of=orig.id,
                    )
                )
        return event

    # -- reads --------------------------------------------------------------

    def latest_status(self, uid: int) -> Status | None:
        ids = self._by_author[uid]
        return self.statuses[ids[-1]] if ids else None

    def statuses_by(self, uid: int, start: int | None = None, stop: int | None = None) -> list[Status]:
        ids = self._by_author[uid]
        tick_of = lambda i: self.statuses[i].tick  # noqa: E731  ids are in tick order
        lo = bisect.bisect_left(ids, start, key=tick_of) if start is not None else 0
        hi = bisect.bisect_left(ids, stop, key=tick_of) if stop is not None else len(ids)
        return [self.statuses[i] for i in ids[lo:hi]]

    def search_statuses(self, keyword: str, start: int, stop: int) -> list[Status]:
        """Original statuses in ticks [start, stop) containing ``keyword``.

        A keyword matches a token or hashtag case-insensitively; a multi-word
        keyword matches a contiguous token run. Ordered by (tick, id).
        """
        if stop <= start:
            return []
        words = [normalise_keyword(w) for w in keyword.split()]
        if not words:
            return []
        ticks = self._kw_ticks.get(words[0])
        if not ticks:
            return []
        lo = bisect.bisect_left(ticks, start)
        hi = bisect.bisect_left(ticks, stop)
        found = [self.statuses[i] for i in self._kw_ids[words[0]][lo:hi]]
        if len(words) > 1:
            found = [s for s in found if _contains_phrase(s.tokens, words)]
        return found

    def stream_filter(self, keywords: Iterable[str], geo: str | None = None) -> list[Status]:
        """Current-tick original statuses matching any keyword (and geo, if given)."""
        wanted = {normalise_keyword(k) for k in keywords}
        phrases = [k.split() for k in wanted if " " in k]
        out = []
        for sid in self._by_tick.get(self.tick, ()):
            st = self.statuses[sid]
            if geo is not None and st.geotag != geo:
                continue
            kws = _status_keywords(st)
            if wanted & kws or any(_contains_phrase(st.tokens, p) for p in phrases):
                out.append(st)
        return out

    def statuses_at(self, tick: int) -> list[Status]:
        return [self.statuses[i] for i in self._by_tick.get(tick, ())]

    # -- tick boundary ------------------------------------------------------

    def enforce_limits(self) -> list[int]:
        """Suspend users whose violation-day count reached the threshold."""
        newly = []
        for uid, days in sorted(self._violation_days.items()):
            user = self.users[uid]
            if not user.suspended and len(days) >= self.limits.suspension_threshold:
                user.suspended = True
                user.suspended_tick = self.tick
                newly.append(uid)
        return newly

    def end_tick(self) -> list[int]:
        suspended = self.enforce_limits()
        self.tick += 1
        self._actions.clear()
        if self.tick % TICKS_PER_DAY == 0:
            self._follows_today.clear()
        return suspended

    # -- persistence --------------------------------------------------------

    def iter_records(self) -> Iterator[dict]:
        for rec in self.log:
            yield rec.to_record()

    def write_log(self, fh: IO[str]) -> None:
        for rec in self.iter_records():
            fh.write(dump_record(rec))
            fh.write("\n")


def _status_keywords(status: Status) -> set[str]:
    kws = {normalise_keyword(t) for t in status.tokens if not t.startswith("@")}
    kws.update(status.hashtags)
    kws.discard("")
    return kws


def _contains_phrase(tokens: tuple[str, ...], words: list[str]) -> bool:
    norm = [normalise_keyword(t) for t in tokens]
    n = len(words)
    return any(norm[i : i + n] == words for i in range(len(norm) - n + 1))


def dump_record(rec: dict) -> str:
    return json.dumps(rec, separators=(",", ":"), ensure_ascii=False)


def read_log(lines: Iterable[str]) -> list[Status | InteractionEvent]:
    """Parse newline-delimited log records back into objects."""
    out: list[Status | InteractionEvent] = []
    for n, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        rec = json.loads(line)
        kind = rec.pop("type", None)
        if kind == "event":
            out.append(InteractionEvent(**rec))
        elif kind == "status":
            rec.pop("kind")
            for key in ("tokens", "mentions", "hashtags"):
                rec[key] = tuple(rec[key])
            out.append(Status(**rec))
        else:
            raise ValueError(f"line {n}: unknown record type {kind!r}")
    return out


def replay_counters(log: Iterable[Status | InteractionEvent], users: Iterable[UserProfile]) -> dict[int, tuple[int, int, int]]:
    """Recompute (statuses, friends, followers) for every user from the log."""
    counts = {u.id: list(u.baseline) for u in users}
    for rec in log:
        if isinstance(rec, Status):
            counts[rec.author][0] += 1
        elif rec.kind == "follow":
            counts[rec.actor][1] += 1
            counts[rec.target_user][2] += 1
    return {uid: tuple(c) for uid, c in counts.items()}
