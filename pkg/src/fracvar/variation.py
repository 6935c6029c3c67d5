"""p-th variation and Riesz variation along b-adic partitions.

``V^{p,t}_n(g) = sum_{k <= floor(t b^n)} |g((k+1) b^-n) - g(k b^-n)|^p`` with
``g`` extended by ``g(1)`` beyond 1, so the index ``k = b^n`` contributes
nothing. ``RV^p_n = b^{n(p-1)} V^{p,1}_n``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._numerics import BoundReport, abs_pow, exact_sum
from .errors import ContractError, DomainError, NoBracketError, ShapeError
from .weights import CRITICAL, SUB
from .wtf import WtfSpec, eval_f_grid, holder_bound

__all__ = [
    "VariationCurve",
    "RieszCurve",
    "infer_level",
    "pth_variation",
    "riesz_variation",
    "variation_curve",
    "classify_trend",
    "estimate_variation_index",
    "check_regime_bounds",
    "riesz_normalized_curve",
    "TREND_SLOPE",
]

VANISHING, CONVERGING, DIVERGING, UNDETERMINED = (
    "Vanishing", "Converging", "Diverging", "Undetermined")

# log_b-slope threshold over the last three levels
TREND_SLOPE = 0.05
P_MATCH_RTOL = 1e-9


def infer_level(length: int, b: int) -> int:
    """Return ``n`` with ``length == b**n + 1`` or raise :class:`ShapeError`."""
    if b < 2:
        raise DomainError("b must be >= 2")
    n, size = 0, 1
    while size + 1 < length:
        size *= b
        n += 1
    if size + 1 != length:
        lower = size // b + 1 if n > 0 else None
        options = [v for v in (lower, size + 1) if v is not None and v >= 2]
        raise ShapeError(f"length {length} is not b**n + 1 for b = {b}; "
                         f"nearest valid lengths: {options}")
    return n


def _cutoff(t, B: int) -> int:
    # exact floor(t * B); t given as float is taken at its exact binary value
    q = Fraction(t)
    if not 0 <= q <= 1:
        raise DomainError(f"t = {t} outside [0, 1]")
    return math.floor(q * B)


def _increments(samples: np.ndarray, b: int) -> tuple[np.ndarray, int]:
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 1:
        raise ShapeError("samples must be one-dimensional")
    n = infer_level(arr.size, b)
    return np.diff(arr), n


def pth_variation(samples, b: int, p: float, t=1.0) -> float:
    """``V^{p,t}_n`` of a grid vector of length ``b**n + 1``."""
    if not p >= 1:
        raise DomainError("p must be >= 1")
    inc, n = _increments(samples, b)
    B = b**n
    upto = min(_cutoff(t, B) + 1, B)
    return exact_sum(abs_pow(inc[:upto], p))


def riesz_variation(samples, b: int, p: float) -> float:
    """``RV^p_n = b^{n(p-1)} V^{p,1}_n``; shares the summation with :func:`pth_variation`."""
    n = infer_level(np.asarray(samples).size, b)
    return float(b) ** (n * (p - 1.0)) * pth_variation(samples, b, p, 1.0)


def _log_b(x: float, b: int) -> float:
    return math.log(x) / math.log(b)


def classify_trend(levels: list[tuple[int, float]], b: int) -> str:
    """Label a sequence of variation values using its last three levels.

    The log_b-slope ``(log_b V_n - log_b V_{n-2}) / 2`` below ``-TREND_SLOPE``
    means Vanishing and above ``+TREND_SLOPE`` means Diverging. Otherwise the
    sequence is Converging when successive differences shrink, else
    Undetermined.
    """
    if len(levels) < 3:
        return UNDETERMINED
    (n0, v0), (_, v1), (n2, v2) = levels[-3:]
    if v0 == v1 == v2 == 0.0:
        return VANISHING
    if v2 == 0.0:
        return VANISHING
    if v0 == 0.0:
        return DIVERGING
    slope = (_log_b(v2, b) - _log_b(v0, b)) / (n2 - n0)
    if slope < -TREND_SLOPE:
        return VANISHING
    if slope > TREND_SLOPE:
        return DIVERGING
    if abs(v2 - v1) < abs(v1 - v0) or v2 == v1:
        return CONVERGING
    return UNDETERMINED


def _curve_csv(rows: list[tuple[int, float, float | None]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "value", "normalized"])
    for n, v, z in rows:
        w.writerow([n, repr(float(v)), "" if z is None else repr(float(z))])
    return buf.getvalue()


@dataclass
class VariationCurve:
    p: float
    t: float
    levels: list[tuple[int, float]]
    trend: str
    limit_estimate: float | None = None
    b: int = 2
    bound_report: BoundReport | None = None

    @property
    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.levels])

    def to_csv(self) -> str:
        return _curve_csv([(n, v, None) for n, v in self.levels])

    def to_dict(self) -> dict:
        out = {"p": self.p, "t": self.t, "b": self.b, "trend": self.trend,
               "limit_estimate": self.limit_estimate,
               "levels": [{"n": n, "value": v} for n, v in self.levels]}
        if self.bound_report is not None:
            out["regime_check"] = self.bound_report.to_dict()
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def curve_from_levels(levels, p, t, b) -> VariationCurve:
    trend = classify_trend(levels, b)
    limit = levels[-1][1] if trend == CONVERGING else None
    return VariationCurve(p, float(t), list(levels), trend, limit, b)


def variation_curve(spec: WtfSpec, p: float, t=1.0, n_max: int = 10,
                    n_min: int = 1) -> VariationCurve:
    """``V^{p,t}_n(f)`` for ``n = n_min .. n_max`` from exact grids.

    Each level's grid is computed independently, so memory stays
    ``O(b**n_max)``.
    """
    if n_min < 0 or n_max < n_min:
        raise DomainError("need 0 <= n_min <= n_max")
    levels = [(n, pth_variation(eval_f_grid(spec, n), spec.b, p, t))
              for n in range(n_min, n_max + 1)]
    return curve_from_levels(levels, p, t, spec.b)


def _slope_fit(ns, values, b) -> float:
    vals = np.asarray(values, dtype=float)
    if np.any(vals <= 0):
        return -math.inf
    y = np.log(vals) / math.log(b)
    return float(np.polyfit(np.asarray(ns, dtype=float), y, 1)[0])


@dataclass
class IndexEstimate:
    q_hat: float
    table: list[tuple[float, float]]
    n_range: tuple[int, int]

    def to_dict(self) -> dict:
        return {"q_hat": self.q_hat, "n_range": list(self.n_range),
                "slopes": [{"p": p, "slope": s} for p, s in self.table]}


def estimate_variation_index(source, p_grid, n_range, b: int | None = None) -> IndexEstimate:
    """Locate the exponent where ``V^{p,1}_n`` switches from growth to decay.

    ``source`` is a :class:`WtfSpec` (grids are computed for each level) or a
    sample vector of length ``b**N + 1`` (coarsened by subsampling, ``b``
    required). For each ``p`` the slope ``s(p)`` of ``log_b V^{p,1}_n``
    against ``n`` is fitted by least squares over ``n_range = (lo, hi)``; the
    returned ``q_hat`` is the linearly interpolated root of ``s``.
    """
    lo, hi = n_range
    if hi - lo + 1 < 3:
        raise DomainError("need at least three levels")
    ps = sorted(float(p) for p in p_grid)
    if isinstance(source, WtfSpec):
        b = source.b
        grids = {n: eval_f_grid(source, n) for n in range(lo, hi + 1)}
    else:
        if b is None:
            raise DomainError("b is required for sampled input")
        values = np.asarray(getattr(source, "values", source), dtype=float)
        N = infer_level(values.size, b)
        if hi > N:
            raise DomainError(f"n_range upper end {hi} exceeds sample level {N}")
        grids = {n: values[:: b ** (N - n)] for n in range(lo, hi + 1)}
    ns = list(range(lo, hi + 1))
    table = []
    for p in ps:
        vals = [pth_variation(grids[n], b, p, 1.0) for n in ns]
        table.append((p, _slope_fit(ns, vals, b)))
    for p, s in table:
        if abs(s) <= 1e-12:
            return IndexEstimate(p, table, (lo, hi))
    for (p0, s0), (p1, s1) in zip(table, table[1:]):
        if s0 > 0 > s1 or s0 < 0 < s1:
            q = p0 + (p1 - p0) * s0 / (s0 - s1)
            return IndexEstimate(q, table, (lo, hi))
    raise NoBracketError("slope of log_b V^{p,1}_n does not change sign on the p grid",
                         table)


def _expect_p(p: float, target: float, what: str) -> None:
    if abs(p - target) > P_MATCH_RTOL * target:
        raise ContractError(f"{what} bounds V^(p) only for p = {target:g}, got p = {p:g}")


def check_regime_bounds(spec: WtfSpec, p: float, n_max: int, n_min: int = 1) -> BoundReport:
    """Compare ``V^{p,1}_n(f)`` with the explicit finite-n bound of its regime.

    * Sub, ``p = 1/gamma``: ``V <= (C / (1 - rho b^gamma))^p`` for every n
      (for ``gamma = 1`` also the total-variation bound for Lipschitz f);
    * Critical, ``p = 1/gamma``: ``V <= (C n)^(1/gamma)`` for every n;
    * Super, ``p = 1/beta``: ``V = E|T_n|^p <= (C / (rho b^gamma - 1))^p`` for
      every n, hence also for the limsup.
    """
    reg = spec.regime
    C, g = spec.C, spec.gamma
    if reg.regime == SUB:
        _expect_p(p, 1.0 / g, "the sub-critical bound")
        const = (C / (1.0 - spec.ratio)) ** p
        bound_at = lambda n: const  # noqa: E731
        name = "sub: (C/(1-rho b^gamma))^p"
    elif reg.regime == CRITICAL:
        _expect_p(p, 1.0 / g, "the critical bound")
        bound_at = lambda n: (C * n) ** (1.0 / g)  # noqa: E731
        name = "critical: (C n)^(1/gamma)"
    else:
        _expect_p(p, 1.0 / reg.beta, "the super-critical bound")
        const = (C / (spec.ratio - 1.0)) ** p
        bound_at = lambda n: const  # noqa: E731
        name = "super: (C/(rho b^gamma - 1))^p"
    levels, bounds = [], []
    for n in range(n_min, n_max + 1):
        v = pth_variation(eval_f_grid(spec, n), spec.b, p, 1.0)
        levels.append((n, v))
        bounds.append((n, bound_at(n)))
    passed = all(v <= bnd for (_, v), (_, bnd) in zip(levels, bounds))
    return BoundReport(name, reg.regime, p, levels, bounds, passed)


@dataclass
class RieszCurve:
    p: float
    regime: str
    levels: list[tuple[int, float]]
    normalized: list[tuple[int, float]]
    bound: float
    b: int = 2

    @property
    def bounded(self) -> bool:
        return all(z <= self.bound for _, z in self.normalized)

    def to_csv(self) -> str:
        return _curve_csv([(n, v, z) for (n, v), (_, z) in zip(self.levels, self.normalized)])

    def to_dict(self) -> dict:
        return {"p": self.p, "b": self.b, "regime": self.regime, "bound": self.bound,
                "bounded": self.bounded,
                "levels": [{"n": n, "value": v, "normalized": z}
                           for (n, v), (_, z) in zip(self.levels, self.normalized)]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def riesz_normalizer(spec: WtfSpec, p: float, n: int) -> float:
    """``b^{p(1-gamma)n}``, ``n^p b^{p(1-gamma)n}`` or ``b^{p(1-beta)n}`` by regime."""
    reg = spec.regime
    b, g = float(spec.b), spec.gamma
    if reg.regime == SUB:
        return b ** (p * (1.0 - g) * n)
    if reg.regime == CRITICAL:
        return float(n) ** p * b ** (p * (1.0 - g) * n)
    return b ** (p * (1.0 - reg.beta) * n)


def riesz_normalized_curve(spec: WtfSpec, p: float, n_max: int, n_min: int = 1) -> RieszCurve:
    """Riesz variations and their regime normalisation.

    The normalised sequence is bounded by the ``p``-th power of the Hölder
    constant from :func:`fracvar.wtf.holder_bound`, which is what the grid
    estimate ``|f((k+1)b^-n) - f(k b^-n)| <= K b^{-n exponent}`` gives.
    """
    if not p >= 1:
        raise DomainError("p must be >= 1")
    if n_min < 1:
        raise DomainError("levels start at n = 1")
    _, K, _ = holder_bound(spec)
    levels, normalized = [], []
    for n in range(n_min, n_max + 1):
        rv = riesz_variation(eval_f_grid(spec, n), spec.b, p)
        levels.append((n, rv))
        normalized.append((n, rv / riesz_normalizer(spec, p, n)))
    return RieszCurve(p, spec.regime.regime, levels, normalized, K**p, spec.b)
