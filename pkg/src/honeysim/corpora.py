"""Offline corpora: the political actor registry, dated news and a small
synthetic text model used for organic statuses and test corpora."""

from __future__ import annotations

import csv
import datetime as dt
import random
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence


class CorpusError(ValueError):
    pass


def data_path(name: str) -> Path:
    return Path(str(resources.files("honeysim") / "data" / name))


def read_word_list(path: str | Path) -> list[str]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                out.append(line)
    return out


# ---------------------------------------------------------------------------
# Actor registry
# ---------------------------------------------------------------------------


@dataclass
class ActorRegistry:
    """Handles of tracked political actors; ``leaders`` is a subset.

    ``ids`` is filled in once the actors have platform accounts.
    """

    handles: list[str]
    leaders: list[str]
    ids: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if not set(self.leaders) <= set(self.handles):
            raise CorpusError("leaders must be a subset of actors")

    @property
    def actor_ids(self) -> list[int]:
        return [self.ids[h] for h in self.handles]

    @property
    def leader_ids(self) -> list[int]:
        return [self.ids[h] for h in self.leaders]

    def handle_of(self, uid: int) -> str:
        for h, i in self.ids.items():
            if i == uid:
                return h
        raise KeyError(uid)


def ingest_actors(path: str | Path) -> ActorRegistry:
    """Read a two-column ``handle<TAB>is_leader`` file.

    Blank lines and ``#`` comments are skipped. Raises :class:`CorpusError`
    with the offending line number on malformed input.
    """
    handles: list[str] = []
    leaders: list[str] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for n, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2 or parts[1] not in ("0", "1"):
                raise CorpusError(f"{path}:{n}: expected 'handle is_leader(0|1)', got {raw.rstrip()!r}")
            handle = parts[0].lstrip("@")
            if handle in seen:
                raise CorpusError(f"{path}:{n}: duplicate handle {handle!r}")
            seen.add(handle)
            handles.append(handle)
            if parts[1] == "1":
                leaders.append(handle)
    if not handles:
        raise CorpusError(f"{path}: no actors")
    return ActorRegistry(handles, leaders)


# ---------------------------------------------------------------------------
# News
# ---------------------------------------------------------------------------

_WORD = re.compile(r"[\w'-]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    return [w.lower() for w in _WORD.findall(text)]


@dataclass(frozen=True)
class NewsArticle:
    id: int
    date: dt.date
    headline: str
    abstract: str

    @property
    def tokens(self) -> list[str]:
        return tokenize(f"{self.headline} {self.abstract}")


@dataclass
class NewsCorpus:
    articles: list[NewsArticle]
    by_day: dict[dt.date, list[NewsArticle]] = field(init=False)

    def __post_init__(self):
        self.by_day = {}
        for art in self.articles:
            self.by_day.setdefault(art.date, []).append(art)

    def on(self, day: dt.date) -> list[NewsArticle]:
        return self.by_day.get(day, [])

    def __len__(self) -> int:
        return len(self.articles)


def ingest_news(path: str | Path) -> NewsCorpus:
    """Read a tab-separated ``date headline abstract`` file with a header row."""
    articles = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter="\t")
        for n, row in enumerate(reader, 1):
            if not row or (n == 1 and row[0].strip().lower() == "date"):
                continue
            if len(row) != 3:
                raise CorpusError(f"{path}:{n}: expected 3 tab-separated fields")
            try:
                day = dt.date.fromisoformat(row[0].strip())
            except ValueError:
                raise CorpusError(f"{path}:{n}: unparseable date {row[0]!r}") from None
            articles.append(NewsArticle(len(articles), day, row[1].strip(), row[2].strip()))
    return NewsCorpus(articles)


@dataclass(frozen=True)
class ScriptedStatus:
    tick: int
    handle: str
    text: str

    @property
    def tokens(self) -> list[str]:
        return self.text.split()


def ingest_actor_statuses(path: str | Path) -> list[ScriptedStatus]:
    """Read ``tick handle text`` rows (tab-separated, optional header).

    Ticks count from the start of the warm-up, so tick 0 is one week before
    the campaign begins.
    """
    out = []
    with open(path, encoding="utf-8", newline="") as fh:
        for n, row in enumerate(csv.reader(fh, delimiter="\t"), 1):
            if not row or (n == 1 and row[0].strip().lower() == "tick"):
                continue
            if len(row) != 3:
                raise CorpusError(f"{path}:{n}: expected 3 tab-separated fields")
            try:
                tick = int(row[0])
            except ValueError:
                raise CorpusError(f"{path}:{n}: bad tick {row[0]!r}") from None
            if tick < 0 or not row[2].strip():
                raise CorpusError(f"{path}:{n}: negative tick or empty text")
            out.append(ScriptedStatus(tick, row[1].strip(), row[2].strip()))
    return out


def write_news(path: str | Path, articles: Sequence[NewsArticle]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["date", "headline", "abstract"])
        for a in articles:
            w.writerow([a.date.isoformat(), a.headline, a.abstract])


# ---------------------------------------------------------------------------
# Synthetic text
# ---------------------------------------------------------------------------


class TextModel:
    """Bag-of-words status generator over a topic vocabulary.

    Topic popularity is Zipf-distributed so that frequency-ranked trends
    have a stable head.
    """

    def __init__(self, topics: Sequence[str], filler: Sequence[str], zipf_s: float = 1.1,
                 hashtag_p: float = 0.35):
        if not topics or not filler:
            raise CorpusError("text model needs topics and filler words")
        self.topics = list(topics)
        self.filler = list(filler)
        self.topic_weights = [1.0 / (r + 1) ** zipf_s for r in range(len(self.topics))]
        self.hashtag_p = hashtag_p

    @classmethod
    def default(cls) -> TextModel:
        return cls(read_word_list(data_path("topics.txt")), read_word_list(data_path("filler.txt")))

    def draw_topics(self, rng: random.Random, k: int) -> list[str]:
        out: list[str] = []
        while len(out) < k:
            t = rng.choices(self.topics, self.topic_weights)[0]
            if t not in out:
                out.append(t)
        return out

    def status(self, rng: random.Random, topics: Sequence[str] | None = None,
               length: tuple[int, int] = (6, 14)) -> tuple[list[str], list[str]]:
        """Return (tokens, hashtags) for one organic status."""
        if topics is None:
            topics = self.draw_topics(rng, rng.randint(1, 2))
        else:
            topics = [rng.choice(list(topics))]
        n = rng.randint(*length)
        tokens = [rng.choice(self.filler) for _ in range(n)]
        hashtags = []
        for t in topics:
            if rng.random() < self.hashtag_p:
                tokens.append("#" + t)
                hashtags.append(t)
            else:
                tokens.insert(rng.randrange(len(tokens) + 1), t)
        return tokens, hashtags

    def article(self, rng: random.Random, aid: int, day: dt.date) -> NewsArticle:
        topics = self.draw_topics(rng, rng.randint(1, 3))
        head = [rng.choice(self.filler) for _ in range(rng.randint(4, 7))]
        body = [rng.choice(self.filler) for _ in range(rng.randint(12, 20))]
        head.insert(rng.randrange(len(head) + 1), topics[0])
        for t in topics:
            body.insert(rng.randrange(len(body) + 1), t)
        return NewsArticle(aid, day, " ".join(head).capitalize(), " ".join(body).capitalize() + ".")


def synthetic_news(start: dt.date, days: int, per_day: int = 20, seed: int = 0,
                   model: TextModel | None = None) -> NewsCorpus:
    model = model or TextModel.default()
    rng = random.Random(f"news:{seed}")
    arts = []
    for d in range(days):
        day = start + dt.timedelta(days=d)
        for _ in range(per_day):
            arts.append(model.article(rng, len(arts), day))
    return NewsCorpus(arts)


def default_actor_registry() -> ActorRegistry:
    return ingest_actors(data_path("actors.txt"))
