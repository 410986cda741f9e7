"""Forecast error measures and multi-metric model ranking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np


@dataclass(frozen=True)
class ErrorTriple:
    mape: float  # percent
    mad: float  # kWh
    msd: float  # kWh^2

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.mape, self.mad, self.msd)


def _pair(actual, fitted) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(actual, dtype=float).ravel()
    f = np.asarray(fitted, dtype=float).ravel()
    if a.size != f.size:
        raise ValueError(f"length mismatch: {a.size} actual vs {f.size} fitted")
    if a.size == 0:
        raise ValueError("cannot score empty sequences")
    return a, f


def mad(actual, fitted) -> float:
    """Mean absolute deviation between actual and fitted values."""
    a, f = _pair(actual, fitted)
    return float(np.mean(np.abs(a - f)))


def msd(actual, fitted) -> float:
    """Mean squared deviation between actual and fitted values."""
    a, f = _pair(actual, fitted)
    return float(np.mean((a - f) ** 2))


def mape(actual, fitted) -> float:
    """Mean absolute percentage error, in percent.

    Raises:
        ValueError: if any actual value is zero.
    """
    a, f = _pair(actual, fitted)
    if np.any(a == 0):
        raise ValueError("MAPE undefined at zero actual")
    return float(100.0 * np.mean(np.abs(a - f) / np.abs(a)))


def error_triple(actual, fitted) -> ErrorTriple:
    return ErrorTriple(mape(actual, fitted), mad(actual, fitted), msd(actual, fitted))


def approximation_pct_error(actual: float, forecast: float) -> float:
    """Signed percentage gap; positive means the forecast fell short of actual."""
    if actual == 0:
        raise ValueError("approximation error undefined at zero actual")
    return 100.0 * (actual - forecast) / actual


@dataclass(frozen=True)
class Ranking:
    triples: dict[int, ErrorTriple]
    ranks: dict[int, tuple[float, float, float]]
    rank_sum: dict[int, float]
    order: tuple[int, ...]  # best first

    @property
    def best(self) -> int:
        return self.order[0]


TIE_RTOL = 1e-9


def tolerant_ranks(values, rtol: float = TIE_RTOL) -> np.ndarray:
    """1-based ranks where values within ``rtol`` (relative) share the mean rank.

    Groups are formed in sorted order: a value joins the current group while it
    stays within ``rtol`` of the group's smallest member.
    """
    v = np.asarray(values, dtype=float)
    order = np.argsort(v, kind="stable")
    ranks = np.empty(v.size)
    start = 0
    for k in range(1, v.size + 1):
        if k == v.size or v[order[k]] - v[order[start]] > rtol * max(abs(v[order[k]]), abs(v[order[start]])):
            ranks[order[start:k]] = (start + 1 + k) / 2.0
            start = k
    return ranks


def rank_models(triples: Mapping[int, ErrorTriple]) -> Ranking:
    """Rank approaches by the sum of their MAPE, MAD and MSD ranks.

    Each metric is ranked separately; values equal to within a relative 1e-9
    share the mean rank, so identical fits reached by different arithmetic
    tie. The approach with the smallest rank sum wins; remaining ties fall
    back to MAPE, then MAD, then MSD, then the lower approach id.
    """
    if not triples:
        raise ValueError("nothing to rank")
    ids = sorted(triples)
    table = np.array([triples[i].as_tuple() for i in ids], dtype=float)
    if np.isnan(table).any():
        raise ValueError("error measures contain NaN")
    per_metric = np.column_stack([tolerant_ranks(table[:, j]) for j in range(3)])
    sums = per_metric.sum(axis=1)
    # per-metric ranks order the metric values with the same tie tolerance
    order = sorted(
        range(len(ids)),
        key=lambda k: (sums[k], per_metric[k, 0], per_metric[k, 1], per_metric[k, 2], ids[k]),
    )
    return Ranking(
        triples={i: triples[i] for i in ids},
        ranks={i: tuple(float(r) for r in per_metric[k]) for k, i in enumerate(ids)},
        rank_sum={i: float(sums[k]) for k, i in enumerate(ids)},
        order=tuple(ids[k] for k in order),
    )
