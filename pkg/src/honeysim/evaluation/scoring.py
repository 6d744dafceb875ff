"""Simulated bot scorer and the 0.5 classification rule."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

AUTOMATED = "automated"
HUMAN = "human"
THRESHOLD = 0.5


class UnclassifiableError(ValueError):
    """Raised when classifying a user the scorer could not see."""


@dataclass(frozen=True)
class NoiseSpec:
    """Scorer noise.

    In ``beta`` mode an automated account lands below the threshold with
    probability ``miss_rate`` and a human lands above it with probability
    ``false_alarm_rate``. Within each side the score follows the Beta mode
    for that side, truncated to the side. ``unavailable_rate`` is the share
    of accounts that vanished (deleted or protected) before scoring.
    ``oracle`` returns exactly 1.0 or 0.0.
    """

    mode: str = "beta"
    miss_rate: float = 0.15
    false_alarm_rate: float = 0.12
    bot_shape: tuple[float, float] = (5.0, 2.0)
    human_shape: tuple[float, float] = (1.6, 4.0)
    unavailable_rate: float = 4 / 288

    def __post_init__(self):
        if self.mode not in ("beta", "oracle"):
            raise ValueError(f"unknown noise mode {self.mode!r}")
        for name in ("miss_rate", "false_alarm_rate", "unavailable_rate"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name}={v} outside [0, 1]")
        for shape in (self.bot_shape, self.human_shape):
            if len(shape) != 2 or min(shape) <= 0:
                raise ValueError(f"bad Beta shape {shape!r}")

    @classmethod
    def oracle(cls) -> "NoiseSpec":
        return cls(mode="oracle", miss_rate=0.0, false_alarm_rate=0.0, unavailable_rate=0.0)


@dataclass(frozen=True)
class BotScore:
    user: int
    score: float | None
    classifiable: bool = True

    def __post_init__(self):
        if self.classifiable:
            if self.score is None or not 0.0 <= self.score <= 1.0:
                raise ValueError(f"user {self.user}: score {self.score!r} outside [0, 1]")
        elif self.score is not None:
            raise ValueError(f"user {self.user}: unclassifiable users carry no score")


def _truncated_beta(rng: np.random.Generator, shape, high: bool) -> float:
    a, b = shape
    for _ in range(10_000):
        x = float(rng.beta(a, b))
        if (x >= THRESHOLD) == high:
            return x
    # the chosen side has almost no Beta mass; fall back to a uniform draw there
    return float(rng.uniform(THRESHOLD, 1.0)) if high else float(rng.uniform(0.0, THRESHOLD))


def score_user(user: int, automated: bool, noise: NoiseSpec, rng: np.random.Generator,
               suspended: bool = False) -> BotScore:
    if suspended:
        return BotScore(user, None, False)
    if noise.mode == "oracle":
        return BotScore(user, 1.0 if automated else 0.0)
    if noise.unavailable_rate and rng.random() < noise.unavailable_rate:
        return BotScore(user, None, False)
    if automated:
        high = rng.random() >= noise.miss_rate
    else:
        high = rng.random() < noise.false_alarm_rate
    shape = noise.bot_shape if high else noise.human_shape
    return BotScore(user, _truncated_beta(rng, shape, high))


def user_rng(seed: int, user: int) -> np.random.Generator:
    """Per-user stream, so a user's score does not depend on who else is scored."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(user)]))


def score_users(users: Iterable[int], truth: Mapping[int, str], noise: NoiseSpec, seed: int,
                suspended: Iterable[int] = ()) -> dict[int, BotScore]:
    gone = set(suspended)
    out = {}
    for uid in sorted(set(users)):
        if uid not in truth:
            raise KeyError(f"no ground truth for user {uid}")
        out[uid] = score_user(uid, truth[uid] == AUTOMATED, noise, user_rng(seed, uid), uid in gone)
    return out


def classify(score: float | BotScore | None, threshold: float = THRESHOLD) -> str:
    if isinstance(score, BotScore):
        if not score.classifiable:
            raise UnclassifiableError(f"user {score.user} could not be scored")
        score = score.score
    if score is None:
        raise UnclassifiableError("no score")
    return AUTOMATED if score >= threshold else HUMAN
