"""Load externally sampled paths and analyse them on b-adic sub-grids.

A path of length ``b**n + 1`` holds the values ``g(k b^-n)``, ``k = 0 .. b^n``.
Coarser levels are read off by taking every ``b**(n-m)``-th value, so no
resampling or interpolation is ever performed.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError, FormatError
from .variation import VariationCurve, curve_from_levels, infer_level, pth_variation

__all__ = ["SampledPath", "load_csv", "save_csv", "multiscale_variation"]

_VALUE_COLUMNS = ("value", "f")


@dataclass(frozen=True)
class SampledPath:
    values: np.ndarray
    b: int
    n: int
    label: str = ""

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1:
            raise DomainError("values must be one-dimensional")
        if infer_level(vals.size, self.b) != self.n:
            raise DomainError(f"length {vals.size} does not match n = {self.n}")
        if not np.all(np.isfinite(vals)):
            raise DomainError("values must be finite")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_values(cls, values, b: int, label: str = "") -> "SampledPath":
        vals = np.asarray(values, dtype=float)
        return cls(vals, b, infer_level(vals.size, b), label)

    def level(self, m: int) -> np.ndarray:
        """Subsampled values on the level-``m`` grid."""
        if not 0 <= m <= self.n:
            raise DomainError(f"level {m} outside 0..{self.n}")
        return self.values[:: self.b ** (self.n - m)]


def _parse_value(text: str, where: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise FormatError(f"{where}: cannot parse {text.strip()!r} as a number") from None
    if not math.isfinite(v):
        raise FormatError(f"{where}: non-finite value {text.strip()!r}")
    return v


def load_csv(path, b: int) -> SampledPath:
    """Read one value per line (optional header ``value``).

    Files with several columns are accepted when the header names a
    ``value`` or ``f`` column, which covers grids written by this package.
    """
    path = Path(path)
    if b < 2:
        raise DomainError("b must be >= 2")
    with path.open(newline="", encoding="utf-8") as fh:
        rows = [(i, r) for i, r in enumerate(csv.reader(fh), start=1)
                if r and "".join(r).strip()]
    if not rows:
        raise FormatError(f"{path}: no data")
    col = 0
    first_line, first = rows[0]
    try:
        float(first[0])
    except ValueError:
        names = [h.strip().lower() for h in first]
        picks = [names.index(c) for c in _VALUE_COLUMNS if c in names]
        if len(names) > 1 and not picks:
            raise FormatError(f"{path}:{first_line}: header needs a 'value' column")
        if len(names) == 1 and names[0] not in _VALUE_COLUMNS:
            raise FormatError(f"{path}:{first_line}: cannot parse {first[0]!r} as a number")
        col = picks[0] if picks else 0
        rows = rows[1:]
    values = []
    for lineno, row in rows:
        if col >= len(row):
            raise FormatError(f"{path}:{lineno}: missing column {col + 1}")
        values.append(_parse_value(row[col], f"{path}:{lineno}"))
    n = infer_level(len(values), b)
    return SampledPath(np.array(values), b, n, path.stem)


def save_csv(path, sampled: SampledPath) -> None:
    """Write a single ``value`` column; values round-trip exactly."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        fh.write("value\n")
        for v in sampled.values:
            fh.write(repr(float(v)) + "\n")


def multiscale_variation(path: SampledPath, p: float, levels: int) -> VariationCurve:
    """``V^{p,1}_m`` for the ``levels`` finest levels ``m = n-levels+1 .. n``."""
    if not 1 <= levels <= path.n:
        raise DomainError(f"levels must lie in 1..{path.n}")
    rows = [(m, pth_variation(path.level(m), path.b, p))
            for m in range(path.n - levels + 1, path.n + 1)]
    return curve_from_levels(rows, p, 1.0, path.b)
