from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from ..corpora import data_path, read_word_list
from ..platform import Status, normalise_keyword


@dataclass(frozen=True)
class KeywordTrend:
    keyword: str
    count: int
    rank: int


def default_stop_tokens() -> frozenset[str]:
    return frozenset(read_word_list(data_path("stopwords.txt")))


def status_terms(tokens: Iterable[str], stop: frozenset[str], max_ngram: int = 1) -> set[str]:
    words = [normalise_keyword(t) for t in tokens if not t.startswith("@")]
    words = [w for w in words if w]
    terms = {w for w in words if w not in stop}
    for n in range(2, max_ngram + 1):
        for i in range(len(words) - n + 1):
            gram = words[i : i + n]
            if not any(w in stop for w in gram):
                terms.add(" ".join(gram))
    return terms


def extract_trending_keywords(
    statuses: Iterable[Status],
    k: int = 10,
    stop: frozenset[str] | None = None,
    max_ngram: int = 1,
) -> list[KeywordTrend]:
    """Rank keywords by the number of statuses that use them.

    Each status contributes at most one count per keyword, whether it appears
    as a plain token or a hashtag. Ties are broken alphabetically.
    """
    stop = default_stop_tokens() if stop is None else stop
    counts: Counter[str] = Counter()
    for st in statuses:
        if st.is_retweet:
            continue
        terms = status_terms(st.tokens, stop, max_ngram)
        terms.update(h for h in st.hashtags if h not in stop)
        counts.update(terms)
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:k]
    return [KeywordTrend(kw, c, r) for r, (kw, c) in enumerate(ranked, 1)]
