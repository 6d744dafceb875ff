"""Descriptive statistics in the shape used by the report tables."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable

import numpy as np

STAT_FIELDS = ("n", "mean", "median", "sd", "min", "q1", "q3", "max")


@dataclass(frozen=True)
class Describe:
    n: int
    mean: float
    median: float
    sd: float | None  # sample sd; undefined for a single value
    min: float
    q1: float
    q3: float
    max: float

    def as_dict(self) -> dict:
        return asdict(self)


def describe(values: Iterable[float]) -> Describe:
    """Summary of a non-empty sample; quartiles by linear interpolation (type 7)."""
    x = np.asarray(list(values), dtype=float)
    if x.size == 0:
        raise ValueError("cannot describe an empty sample")
    q1, med, q3 = np.quantile(x, [0.25, 0.5, 0.75], method="linear")
    lo, hi = float(x.min()), float(x.max())
    # exact-rounded sum; clamp so a constant sample's mean cannot drift past its range
    mean = min(max(math.fsum(x.tolist()) / x.size, lo), hi)
    return Describe(
        n=int(x.size),
        mean=mean,
        median=float(med),
        sd=float(x.std(ddof=1)) if x.size > 1 else None,
        min=lo,
        q1=float(q1),
        q3=float(q3),
        max=hi,
    )
