"""Shared numerical plumbing: compensated sums, powers, PRNG, threading."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import CapacityError

# Largest b**n accepted for grids and exhaustive enumeration.
MAX_GRID_POINTS = 2**24
MAX_ENUMERATION = 2**22

# Work is always split into chunks of this size, whatever the thread count,
# so that reductions see the same operands in the same order.
CHUNK = 1 << 15

_thread_override: int | None = None


def set_threads(k: int | None) -> None:
    """Cap internal parallelism; ``None`` restores the default."""
    global _thread_override
    if k is not None and k < 1:
        raise ValueError("thread count must be >= 1")
    _thread_override = k


def get_threads() -> int:
    if _thread_override is not None:
        return _thread_override
    env = os.environ.get("FRACVAR_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def chunk_bounds(total: int, size: int = CHUNK) -> list[tuple[int, int]]:
    return [(lo, min(lo + size, total)) for lo in range(0, total, size)]


def map_chunks(fn: Callable[[int, int], np.ndarray], total: int,
               size: int = CHUNK) -> np.ndarray:
    """Apply ``fn(lo, hi)`` over fixed chunks of ``range(total)`` and concatenate.

    Chunks are independent, so the result is bit-identical for any thread
    count.
    """
    bounds = chunk_bounds(total, size)
    if not bounds:
        return np.empty(0)
    threads = min(get_threads(), len(bounds))
    if threads <= 1:
        parts = [fn(lo, hi) for lo, hi in bounds]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda lh: fn(*lh), bounds))
    return np.concatenate(parts)


def check_capacity(b: int, n: int, limit: int = MAX_GRID_POINTS) -> int:
    """Return ``b**n`` or raise :class:`CapacityError` above ``limit``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    size = b**n
    if size > limit:
        raise CapacityError(f"b**n = {b}**{n} exceeds the budget of {limit} points")
    return size


def abs_pow(x: np.ndarray, p: float) -> np.ndarray:
    """Elementwise ``|x|**p``; exact zeros stay zero."""
    a = np.abs(np.asarray(x, dtype=float))
    if p == 1.0:
        return a
    if p == 2.0:
        return a * a
    out = np.zeros_like(a)
    nz = a > 0
    out[nz] = np.power(a[nz], p)
    return out


def exact_sum(values: np.ndarray | Sequence[float]) -> float:
    """Correctly rounded sum; independent of operand grouping."""
    return math.fsum(np.asarray(values, dtype=float).ravel().tolist())


class CompensatedAccumulator:
    """Vectorised Neumaier summation of a fixed sequence of arrays."""

    def __init__(self, shape) -> None:
        self.s = np.zeros(shape)
        self.c = np.zeros(shape)

    def add(self, term: np.ndarray) -> None:
        t = self.s + term
        big = np.abs(self.s) >= np.abs(term)
        self.c += np.where(big, (self.s - t) + term, (term - t) + self.s)
        self.s = t

    @property
    def value(self) -> np.ndarray:
        return self.s + self.c


class SplitMix64:
    """SplitMix64 (Steele, Lea & Flood 2014); reproducible from the seed alone."""

    _MASK = (1 << 64) - 1

    def __init__(self, seed: int) -> None:
        self.state = seed & self._MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self._MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self._MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self._MASK
        return z ^ (z >> 31)

    def __iter__(self) -> Iterator[int]:
        while True:
            yield self.next()


def pairs_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass
class CertificateReport:
    """Outcome of a sampled inequality check."""

    name: str
    passed: bool
    worst: float
    limit: float
    samples: int
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed


@dataclass
class BoundReport:
    """Explicit bound against computed values, per level ``n``.

    ``bound`` is ``None`` when no finite-n bound applies (values only).
    """

    name: str
    regime: str
    p: float
    levels: list[tuple[int, float]]
    bounds: list[tuple[int, float | None]]
    passed: bool | None

    @property
    def margins(self) -> list[tuple[int, float | None]]:
        out = []
        for (n, v), (_, bnd) in zip(self.levels, self.bounds):
            out.append((n, None if bnd is None else bnd - v))
        return out

    @property
    def min_margin(self) -> float | None:
        m = [x for _, x in self.margins if x is not None]
        return min(m) if m else None

    @property
    def max_value(self) -> float:
        return max((v for _, v in self.levels), default=0.0)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "regime": self.regime,
            "p": self.p,
            "passed": self.passed,
            "min_margin": self.min_margin,
            "levels": [
                {"n": n, "value": v, "bound": bnd, "margin": mg}
                for (n, v), (_, bnd), (_, mg) in zip(self.levels, self.bounds, self.margins)
            ],
        }
