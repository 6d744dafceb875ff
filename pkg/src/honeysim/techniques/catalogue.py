"""The 37 solicitation techniques.

Techniques 1-12 consume other users' content (follow, favourite or retweet);
13-37 generate new statuses from a content source, optionally translated,
word-shuffled and decorated with a mention and/or a trending hashtag.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

CONSUME = "consume"
GENERATE = "generate"


@dataclass(frozen=True)
class TechniqueSpec:
    id: int
    family: str
    # consumption axes
    verb: str | None = None
    target_source: str | None = None
    ordering: str | None = None
    # generation axes
    source: str | None = None
    language: str | None = None
    word_order: str | None = None
    mentions: bool = False
    hashtags: bool = False

    @property
    def is_consume(self) -> bool:
        return self.family == CONSUME

    @property
    def coherent(self) -> bool:
        return self.word_order != "randomised"

    def describe(self) -> str:
        if self.is_consume:
            what = {
                "political_actors": "political actors",
                "keyword_feed": "keyword-topic statuses",
                "geo_realtime": "real-time geo-local keyword statuses",
            }[self.target_source]
            order = f" ({self.ordering})" if self.ordering != "n/a" else ""
            return f"{self.verb} {what}{order}"
        extras = [x for x, on in (("mentions", self.mentions), ("hashtags", self.hashtags)) if on]
        return f"post {self.source} content, {self.language}, {self.word_order} order" + (
            ", " + " + ".join(extras) if extras else ""
        )


_CONSUME_ROWS = [
    (1, "follow", "political_actors", "n/a"),
    (2, "favourite", "political_actors", "n/a"),
    (3, "retweet", "political_actors", "n/a"),
    (4, "follow", "keyword_feed", "sequential"),
    (5, "follow", "keyword_feed", "random"),
    (6, "favourite", "keyword_feed", "sequential"),
    (7, "favourite", "keyword_feed", "random"),
    (8, "retweet", "keyword_feed", "sequential"),
    (9, "retweet", "keyword_feed", "random"),
    (10, "follow", "geo_realtime", "n/a"),
    (11, "favourite", "geo_realtime", "n/a"),
    (12, "retweet", "geo_realtime", "n/a"),
]

# id, source, language, word order, mentions, hashtags
_P, _N = "political_actors", "news"
_S, _R = "sentence", "randomised"
_GENERATE_ROWS = [
    (13, _P, "en", _S, False, False),
    (14, _P, "en", _R, True, False),
    (15, _P, "en", _R, False, True),
    (16, _P, "af", _S, False, True),
    (17, _P, "af", _R, False, False),
    (18, _P, "xh", _S, True, False),
    (19, _P, "xh", _R, True, True),
    (20, _P, "xh", _R, False, True),
    (21, _P, "zu", _S, True, False),
    (22, _P, "zu", _R, True, True),
    (23, _N, "en", _S, True, True),
    (24, _N, "en", _S, False, True),
    (25, _N, "en", _S, False, False),
    (26, _N, "en", _R, True, False),
    (27, _N, "en", _R, False, True),
    (28, _N, "en", _R, False, False),
    (29, _N, "af", _S, True, False),
    (30, _N, "af", _S, False, True),
    (31, _N, "af", _R, True, True),
    (32, _N, "af", _R, False, False),
    (33, _N, "xh", _S, True, False),
    (34, _N, "xh", _R, True, True),
    (35, _N, "zu", _S, False, True),
    (36, _N, "zu", _R, False, True),
    (37, _N, "zu", _R, False, False),
]

CATALOGUE: dict[int, TechniqueSpec] = {}
for _id, _verb, _src, _order in _CONSUME_ROWS:
    CATALOGUE[_id] = TechniqueSpec(_id, CONSUME, verb=_verb, target_source=_src, ordering=_order)
for _id, _src, _lang, _wo, _m, _h in _GENERATE_ROWS:
    CATALOGUE[_id] = TechniqueSpec(
        _id, GENERATE, source=_src, language=_lang, word_order=_wo, mentions=_m, hashtags=_h
    )

FOLLOW_TECHNIQUES = frozenset(t.id for t in CATALOGUE.values() if t.verb == "follow")


def get_technique(tid: int) -> TechniqueSpec:
    try:
        return CATALOGUE[int(tid)]
    except (KeyError, ValueError):
        raise KeyError(f"unknown technique id {tid!r}") from None


CATALOGUE_FIELDS = [
    "id", "family", "verb", "target_source", "ordering",
    "source", "language", "word_order", "mentions", "hashtags", "description",
]


def catalogue_rows() -> list[dict]:
    rows = []
    for t in CATALOGUE.values():
        rows.append({
            "id": t.id,
            "family": t.family,
            "verb": t.verb or "",
            "target_source": t.target_source or "",
            "ordering": t.ordering or "",
            "source": t.source or "",
            "language": t.language or "",
            "word_order": t.word_order or "",
            "mentions": int(t.mentions) if not t.is_consume else "",
            "hashtags": int(t.hashtags) if not t.is_consume else "",
            "description": t.describe(),
        })
    return rows


def catalogue_csv() -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, CATALOGUE_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(catalogue_rows())
    return buf.getvalue()
