"""Content-generation pipeline: source -> translate -> shuffle -> decorate."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from ..corpora import data_path
from .catalogue import TechniqueSpec
from .trends import KeywordTrend

MAX_CHARS = 280
TRANSLATABLE = ("af", "xh", "zu")
# marks tokens the lexicon cannot map
UNMAPPED_AFFIX = {"af": ("", "ie"), "xh": ("ulu", ""), "zu": ("ubu", "")}


class CompositionError(ValueError):
    pass


@lru_cache(maxsize=None)
def load_lexicon(language: str) -> dict[str, str]:
    if language not in TRANSLATABLE:
        raise ValueError(f"unknown language tag {language!r}")
    lex = {}
    with open(data_path(f"lexicon_{language}.txt"), encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            try:
                en, tr = line.split("\t")
            except ValueError:
                raise ValueError(f"lexicon_{language}.txt:{n}: expected two tab-separated columns") from None
            lex[en.lower()] = tr
    return lex


def pseudo_translate(tokens: Sequence[str], language: str) -> list[str]:
    """Token-wise dictionary translation from English.

    Mentions and hashtags pass through untouched; words missing from the
    lexicon get a language-specific affix.
    """
    lex = load_lexicon(language)
    pre, suf = UNMAPPED_AFFIX[language]
    out = []
    for tok in tokens:
        if tok[:1] in ("@", "#"):
            out.append(tok)
        elif tok.lower() in lex:
            out.append(lex[tok.lower()])
        else:
            out.append(f"{pre}{tok}{suf}")
    return out


def shuffle_words(tokens: Sequence[str], rng: random.Random) -> list[str]:
    """Uniformly permute ``tokens``, re-drawing until the order changes
    (when any other order exists)."""
    out = list(tokens)
    if len(set(out)) < 2:
        return out
    original = list(tokens)
    while out == original:
        rng.shuffle(out)
    return out


@dataclass(frozen=True)
class GeneratedContent:
    tokens: tuple[str, ...]
    language: str
    coherent: bool
    mention: int | None
    hashtag: str | None
    provenance: tuple[str, int]


@dataclass
class ContentSources:
    """Source items valid at composition time, as (item id, tokens) pairs.

    ``political`` should hold the actors' statuses from the preceding week and
    ``news`` the preceding day's articles.
    """

    political: list[tuple[int, Sequence[str]]] = field(default_factory=list)
    news: list[tuple[int, Sequence[str]]] = field(default_factory=list)


def _clean_source(tokens: Sequence[str]) -> list[str]:
    out = []
    for t in tokens:
        if t.startswith("@"):
            continue
        out.append(t.lstrip("#"))
    return [t for t in out if t]


def _fit(body: list[str], tail: list[str]) -> list[str]:
    def length(toks):
        return len(" ".join(toks))

    while len(body) > 1 and length(body + tail) > MAX_CHARS:
        body.pop()
    if length(body + tail) > MAX_CHARS:
        room = MAX_CHARS - length(tail) - (1 if tail else 0)
        body = [body[0][: max(room, 1)]]
    return body + tail


def compose_status(
    spec: TechniqueSpec,
    sources: ContentSources,
    actors: Sequence[tuple[int, str]],
    trends: Sequence[KeywordTrend],
    rng: random.Random,
) -> GeneratedContent:
    """Build one status for a generation technique.

    ``actors`` is the registry as (user id, handle) pairs, used for mentions.
    """
    if spec.is_consume:
        raise CompositionError(f"technique {spec.id} does not generate content")
    pool = sources.political if spec.source == "political_actors" else sources.news
    if not pool:
        raise CompositionError(f"no {spec.source} content in the current window")
    item_id, raw = pool[rng.randrange(len(pool))]
    body = _clean_source(raw)
    if not body:
        raise CompositionError(f"{spec.source} item {item_id} has no usable tokens")
    if spec.language != "en":
        body = pseudo_translate(body, spec.language)
    if spec.word_order == "randomised":
        body = shuffle_words(body, rng)

    tail: list[str] = []
    mention = hashtag = None
    if spec.mentions:
        if not actors:
            raise CompositionError("mentions requested but the actor registry is empty")
        mention, handle = actors[rng.randrange(len(actors))]
        tail.append("@" + handle)
    if spec.hashtags:
        if not trends:
            raise CompositionError("hashtags requested but no trends are available")
        hashtag = trends[rng.randrange(len(trends))].keyword.replace(" ", "")
        tail.append("#" + hashtag)

    return GeneratedContent(
        tokens=tuple(_fit(body, tail)),
        language=spec.language,
        coherent=spec.coherent,
        mention=mention,
        hashtag=hashtag,
        provenance=(spec.source, item_id),
    )
