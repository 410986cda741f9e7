"""Calendar-anchored monthly series, quarterly aggregation and holdout splits."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class InsufficientDataError(ValueError):
    """Raised when a series is too short for the requested operation."""


@dataclass(frozen=True, order=True)
class MonthKey:
    year: int
    month: int

    def __post_init__(self):
        if not 1 <= self.month <= 12:
            raise ValueError(f"month must be in 1..12, got {self.month}")

    @classmethod
    def parse(cls, text: str) -> "MonthKey":
        """Parse a ``YYYY-MM`` string."""
        try:
            year, month = text.strip().split("-")
            if len(year) != 4 or len(month) != 2:
                raise ValueError
            return cls(int(year), int(month))
        except ValueError:
            raise ValueError(f"invalid month {text!r}, expected YYYY-MM") from None

    def shift(self, months: int) -> "MonthKey":
        ordinal = self.year * 12 + (self.month - 1) + months
        return MonthKey(ordinal // 12, ordinal % 12 + 1)

    def next(self) -> "MonthKey":
        return self.shift(1)

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"


def month_index(key: MonthKey, origin: MonthKey) -> int:
    """Signed number of months from ``origin`` to ``key``."""
    return (key.year - origin.year) * 12 + (key.month - origin.month)


def _frozen_values(values: Iterable[float]) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError("values must be one-dimensional")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class MonthlySeries:
    """Contiguous monthly consumption values (kWh) starting at ``start``."""

    start: MonthKey
    values: np.ndarray

    def __post_init__(self):
        arr = _frozen_values(self.values)
        if arr.size == 0:
            raise ValueError("series must contain at least one value")
        if not np.all(np.isfinite(arr)):
            raise ValueError("series values must be finite")
        if np.any(arr < 0):
            raise ValueError("series values must be non-negative")
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonthlySeries):
            return NotImplemented
        return self.start == other.start and np.array_equal(self.values, other.values)

    @property
    def end(self) -> MonthKey:
        return self.start.shift(len(self) - 1)

    def months(self) -> list[MonthKey]:
        return [self.start.shift(i) for i in range(len(self))]

    def concat(self, other: "MonthlySeries") -> "MonthlySeries":
        if other.start != self.end.next():
            raise ValueError(f"{other.start} does not follow {self.end}")
        return MonthlySeries(self.start, np.concatenate([self.values, other.values]))


@dataclass(frozen=True, eq=False)
class QuarterlySeries:
    """Three-month block means; ``start`` is the first month of the first block."""

    start: MonthKey
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen_values(self.values))

    def __len__(self) -> int:
        return self.values.size

    def block_start(self, i: int) -> MonthKey:
        return self.start.shift(3 * i)


class TariffPeriod(enum.Enum):
    """Metering windows of the Turkish multi-rate tariff."""

    TOTAL = ("total", "00:00", "24:00")
    DAY = ("day", "06:00", "17:00")
    PEAK = ("peak", "17:00", "22:00")
    NIGHT = ("night", "22:00", "06:00")

    def __init__(self, column: str, opens: str, closes: str):
        self.column = column
        self.opens = opens
        self.closes = closes

    @classmethod
    def from_column(cls, name: str) -> "TariffPeriod":
        for period in cls:
            if period.column == name.strip().lower():
                return period
        raise ValueError(f"unknown tariff period {name!r}")


def aggregate_quarterly(s: MonthlySeries) -> QuarterlySeries:
    """Average consecutive 3-month blocks anchored at the series start.

    A trailing incomplete block is dropped rather than padded.
    """
    n = len(s)
    if n < 3:
        raise InsufficientDataError("insufficient data for quarterly aggregation")
    blocks = n // 3
    means = s.values[: 3 * blocks].reshape(blocks, 3).mean(axis=1)
    return QuarterlySeries(s.start, means)


def split_holdout(s: MonthlySeries, k: int) -> tuple[MonthlySeries, MonthlySeries]:
    """Split off the last ``k`` months as a test segment."""
    if not 1 <= k < len(s):
        raise ValueError(f"holdout {k} out of range for series of length {len(s)}")
    cut = len(s) - k
    return (
        MonthlySeries(s.start, s.values[:cut]),
        MonthlySeries(s.start.shift(cut), s.values[cut:]),
    )


def as_array(values: Sequence[float] | MonthlySeries | QuarterlySeries) -> np.ndarray:
    if isinstance(values, (MonthlySeries, QuarterlySeries)):
        return np.asarray(values.values, dtype=float)
    return np.asarray(values, dtype=float)
