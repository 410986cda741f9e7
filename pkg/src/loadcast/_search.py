"""Derivative-free coordinate search on a box, shared by the smoothing and ARIMA fitters."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass
class SearchResult:
    x: np.ndarray
    fun: float
    evaluations: int
    converged: bool


def coordinate_search(
    fun: Callable[[np.ndarray], float],
    x0,
    lower: float,
    upper: float,
    step: float,
    min_step: float,
    max_evals: int = 20_000,
    f0: float | None = None,
) -> SearchResult:
    """Pattern search along each coordinate with step halving.

    Each coordinate is probed at ``-step`` then ``+step`` (clipped to the box);
    a move is taken only on strict improvement. When a full sweep improves
    nothing the step is halved, until it drops below ``min_step``.
    """
    x = np.array(x0, dtype=float)
    fx = fun(x) if f0 is None else f0
    evals = 0 if f0 is not None else 1
    if x.size == 0:
        return SearchResult(x, fx, evals, True)
    while step >= min_step:
        improved = False
        for i in range(x.size):
            for direction in (-1.0, 1.0):
                value = min(max(x[i] + direction * step, lower), upper)
                if value == x[i]:
                    continue
                if evals >= max_evals:
                    return SearchResult(x, fx, evals, False)
                cand = x.copy()
                cand[i] = value
                fc = fun(cand)
                evals += 1
                if fc < fx:
                    x, fx = cand, fc
                    improved = True
                    break
        if not improved:
            step /= 2.0
    return SearchResult(x, fx, evals, True)
