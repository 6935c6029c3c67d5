"""Period-1 Hölder waves that vanish on the integers.

Three families are provided: the triangular wave (distance to the nearest
integer), the trigonometric wave ``nu*sin(2 pi x) + rho*cos(2 pi x) - rho``
and piecewise-linear tables. Every wave carries its Hölder exponent
``gamma``, a Hölder constant ``holder_const`` valid on the whole real line,
and an upper bound ``sup_abs`` for ``|phi|``.

Grid arguments ``num/den`` are reduced modulo ``den`` in integer arithmetic
before any float is formed, so ``phi(k * b**m / b**n)`` is evaluated without
the cancellation that ``b**m * t`` would suffer in floating point.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from pathlib import Path

import numpy as np

from ._numerics import CertificateReport, pairs_rng
from .errors import DomainError, FormatError, InvalidWaveError

__all__ = [
    "WavePhi",
    "eval_wave",
    "slope",
    "slopes",
    "certify_holder",
    "parse_wave",
]

TRIANGULAR = "triangular"
SINECOS = "sinecos"
CUSTOM = "custom"


def _holder_from_lipschitz(lip: float, osc: float, gamma: float) -> float:
    # |phi(x)-phi(y)| <= min(lip*h, osc) <= lip**gamma * osc**(1-gamma) * h**gamma
    if gamma == 1.0:
        return lip
    return lip**gamma * osc ** (1.0 - gamma)


@dataclass(frozen=True)
class WavePhi:
    kind: str
    gamma: float
    holder_const: float
    sup_abs: float
    nu: float = 0.0
    rho: float = 0.0
    table_x: tuple[float, ...] = ()
    table_y: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in (TRIANGULAR, SINECOS, CUSTOM):
            raise InvalidWaveError(f"unknown wave kind {self.kind!r}")
        if not 0.0 < self.gamma <= 1.0:
            raise InvalidWaveError(f"gamma must lie in (0, 1], got {self.gamma}")
        if self.holder_const < 0 or self.sup_abs < 0:
            raise InvalidWaveError("holder_const and sup_abs must be non-negative")
        if self.kind == CUSTOM:
            if len(self.table_x) == 0:
                raise InvalidWaveError("custom wave table is empty")
            if len(self.table_x) != len(self.table_y):
                raise InvalidWaveError("custom wave table columns differ in length")

    # -- constructors -----------------------------------------------------

    @classmethod
    def triangular(cls, gamma: float = 1.0) -> "WavePhi":
        """Distance to the nearest integer.

        For ``gamma < 1`` the Hölder constant defaults to ``2**(gamma-1)``.
        """
        return cls(TRIANGULAR, gamma, _holder_from_lipschitz(1.0, 0.5, gamma), 0.5)

    @classmethod
    def sine_cosine(cls, nu: float, rho: float, *, gamma: float = 1.0,
                    holder_const: float | None = None,
                    sup_abs: float | None = None) -> "WavePhi":
        lip = 2.0 * math.pi * math.hypot(nu, rho)
        sup = abs(nu) + 2.0 * abs(rho) if sup_abs is None else sup_abs
        if holder_const is None:
            holder_const = _holder_from_lipschitz(lip, 2.0 * sup, gamma)
        return cls(SINECOS, gamma, holder_const, sup, nu=nu, rho=rho)

    @classmethod
    def custom(cls, xs, ys, *, gamma: float = 1.0,
               holder_const: float | None = None,
               sup_abs: float | None = None) -> "WavePhi":
        """Piecewise-linear wave through ``(xs, ys)`` on ``[0, 1]``.

        The endpoints are forced to zero: missing ``x = 0`` / ``x = 1``
        nodes are added, existing ones are overwritten.
        """
        xs = [float(x) for x in xs]
        ys = [float(y) for y in ys]
        if not xs:
            raise InvalidWaveError("custom wave table is empty")
        if len(xs) != len(ys):
            raise InvalidWaveError("custom wave table columns differ in length")
        if any(not (0.0 <= x <= 1.0) for x in xs):
            raise InvalidWaveError("table abscissae must lie in [0, 1]")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise InvalidWaveError("table abscissae must be strictly increasing")
        if not all(math.isfinite(y) for y in ys):
            raise InvalidWaveError("table values must be finite")
        if xs[0] > 0.0:
            xs.insert(0, 0.0)
            ys.insert(0, 0.0)
        if xs[-1] < 1.0:
            xs.append(1.0)
            ys.append(0.0)
        ys[0] = ys[-1] = 0.0
        x = np.array(xs)
        y = np.array(ys)
        lip = float(np.max(np.abs(np.diff(y) / np.diff(x))))
        osc = float(y.max() - y.min())
        if sup_abs is None:
            sup_abs = float(np.max(np.abs(y)))
        if holder_const is None:
            holder_const = _holder_from_lipschitz(lip, osc, gamma)
        return cls(CUSTOM, gamma, holder_const, sup_abs,
                   table_x=tuple(xs), table_y=tuple(ys))

    @classmethod
    def from_csv(cls, path, **kwargs) -> "WavePhi":
        """Load a custom table from a CSV file with header ``x,phi``."""
        path = Path(path)
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or [h.strip() for h in header] != ["x", "phi"]:
                raise FormatError(f"{path}: expected header 'x,phi'")
            xs, ys = [], []
            for lineno, row in enumerate(reader, start=2):
                if not row or not "".join(row).strip():
                    continue
                try:
                    x, y = (float(v) for v in row)
                except ValueError as exc:
                    raise FormatError(f"{path}:{lineno}: {exc}") from None
                xs.append(x)
                ys.append(y)
        return cls.custom(xs, ys, **kwargs)

    # -- evaluation -------------------------------------------------------

    def __call__(self, x):
        return eval_wave(self, x)

    def _eval_unit(self, y: np.ndarray) -> np.ndarray:
        """Evaluate on reduced arguments ``y`` in ``[0, 1)``."""
        if self.kind == TRIANGULAR:
            return np.minimum(y, 1.0 - y)
        if self.kind == SINECOS:
            # centred argument keeps sin(pi*y) exact near the integers
            c = y - np.round(y)
            s = np.sin(np.pi * c)
            # 1 - cos loses digits near the integers, -2 sin^2 near 1/2
            cm1 = np.where(np.abs(c) < 0.25, -2.0 * s * s, np.cos(2.0 * np.pi * c) - 1.0)
            return self.nu * np.sin(2.0 * np.pi * c) + self.rho * cm1
        return np.interp(y, self.table_x, self.table_y)

    def on_grid(self, num, den: int) -> np.ndarray:
        """``phi(num / den)`` for integer ``num``; reduction is exact."""
        if isinstance(num, int):
            # arbitrary-precision scalar path
            r = num % den
            if self.kind == TRIANGULAR:
                return float(min(r, den - r) / den)
            return float(self._eval_unit(np.asarray(r / den)))
        r = np.asarray(num) % den
        if self.kind == TRIANGULAR:
            tri = np.minimum(r, den - r)
            return np.asarray(tri / den, dtype=float)
        return self._eval_unit(np.asarray(r / den, dtype=float))

    def slopes_at(self, num, den: int) -> np.ndarray:
        """``(phi((num+1)/den) - phi(num/den)) * den`` evaluated stably."""
        if isinstance(num, int):
            num = np.asarray([num % den], dtype=object if den >= 2**62 else np.int64)
            return self.slopes_at(num, den)[0]
        r = np.asarray(num) % den
        if self.kind == TRIANGULAR:
            r1 = (r + 1) % den
            d = np.minimum(r1, den - r1) - np.minimum(r, den - r)
            return np.asarray(d, dtype=float)
        if self.kind == SINECOS:
            # difference-to-product: both terms factor through sin(pi/den)
            u = np.asarray(((2 * r + 1) % (2 * den)) / den, dtype=float)
            u = u - 2.0 * np.round(u / 2.0)
            d = self.nu * np.cos(np.pi * u) - self.rho * np.sin(np.pi * u)
            return 2.0 * math.sin(math.pi / den) * den * d
        x0 = np.asarray(r / den, dtype=float)
        x1 = np.asarray((r + 1) / den, dtype=float)
        tx = np.asarray(self.table_x)
        ty = np.asarray(self.table_y)
        seg0 = np.clip(np.searchsorted(tx, x0, side="right") - 1, 0, len(tx) - 2)
        seg1 = np.clip(np.searchsorted(tx, x1, side="left") - 1, 0, len(tx) - 2)
        seg_slope = np.diff(ty) / np.diff(tx)
        out = (np.interp(x1, tx, ty) - np.interp(x0, tx, ty)) * den
        same = seg0 == seg1
        out = np.where(same, seg_slope[seg0], out)
        return np.asarray(out, dtype=float)


def eval_wave(phi: WavePhi, x):
    """Evaluate ``phi`` at a real, rational or array argument.

    Rationals (``fractions.Fraction``, ``int``) and scalar floats are reduced
    modulo 1 exactly before conversion to float.
    """
    if isinstance(x, (Rational, float)) and not isinstance(x, bool):
        q = Fraction(x)
        num, den = q.numerator, q.denominator
        return float(phi.on_grid(num, den))
    arr = np.asarray(x, dtype=float)
    y = np.mod(arr, 1.0)
    y = np.where(y >= 1.0, 0.0, y)
    out = phi._eval_unit(y)
    return out if out.ndim else float(out)


def slope(phi: WavePhi, b: int, m: int, k: int) -> float:
    """Slope of the chord of ``phi`` over ``[k b^-m, (k+1) b^-m]``."""
    if b < 2 or m < 0:
        raise DomainError("need b >= 2 and m >= 0")
    den = b**m
    if not 0 <= k < den:
        raise DomainError(f"k={k} outside [0, {den})")
    return float(phi.slopes_at(k, den))


def slopes(phi: WavePhi, b: int, m: int) -> np.ndarray:
    """All ``b**m`` chord slopes at level ``m``, indexed by ``k``."""
    den = b**m
    return phi.slopes_at(np.arange(den, dtype=np.int64), den)


def certify_holder(phi: WavePhi, pair_count: int, seed: int = 0,
                   rel_tol: float = 1e-9) -> CertificateReport:
    """Check ``|phi(x)-phi(y)| <= C |x-y|**gamma`` on sampled pairs in [-1, 2]^2.

    Half of the pairs are independent uniform points, the other half are
    close pairs with separation log-uniform in ``[1e-6, 1]`` to probe small
    scales. ``rel_tol`` absorbs float rounding in the differences.
    """
    if pair_count < 1:
        raise DomainError("pair_count must be >= 1")
    rng = pairs_rng(seed)
    n_far = pair_count - pair_count // 2
    n_near = pair_count // 2
    x_far = rng.uniform(-1.0, 2.0, n_far)
    y_far = rng.uniform(-1.0, 2.0, n_far)
    x_near = rng.uniform(-1.0, 1.0, n_near)
    h = 10.0 ** rng.uniform(-6.0, 0.0, n_near)
    x = np.concatenate([x_far, x_near])
    y = np.concatenate([y_far, x_near + h])
    dist = np.abs(x - y)
    keep = dist > 0
    diff = np.abs(eval_wave(phi, x[keep]) - eval_wave(phi, y[keep]))
    ratio = diff / dist[keep] ** phi.gamma
    worst = float(ratio.max()) if ratio.size else 0.0
    passed = worst <= phi.holder_const * (1.0 + rel_tol) + 1e-15
    return CertificateReport("holder", passed, worst, phi.holder_const, pair_count,
                             {"gamma": phi.gamma})


def parse_wave(text: str) -> WavePhi:
    """Parse ``triangular``, ``triangular:0.5``, ``sinecos:nu,rho`` or ``custom:path``."""
    name, _, arg = text.partition(":")
    name = name.strip().lower()
    if name == TRIANGULAR:
        return WavePhi.triangular(float(arg)) if arg else WavePhi.triangular()
    if name in (SINECOS, "sine-cosine", "weierstrass"):
        parts = [float(v) for v in arg.split(",")] if arg else [1.0, 0.0]
        if len(parts) != 2:
            raise InvalidWaveError("sinecos expects 'sinecos:nu,rho'")
        return WavePhi.sine_cosine(*parts)
    if name == CUSTOM:
        if not arg:
            raise InvalidWaveError("custom wave needs a CSV path")
        return WavePhi.from_csv(arg)
    raise InvalidWaveError(f"unknown wave {text!r}")
