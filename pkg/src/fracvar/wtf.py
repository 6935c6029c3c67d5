"""Weierstrass-type functions ``f(t) = sum_m xi_m psi(b^-m) phi(b^m t)``.

Pointwise evaluation truncates the series with a certified geometric tail
bound. On the b-adic grid ``k b^-n`` every term with ``m >= n`` vanishes
because ``phi`` is zero on the integers, so :func:`eval_f_grid` is exact up
to float rounding.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np

from ._numerics import (
    CertificateReport,
    CompensatedAccumulator,
    SplitMix64,
    check_capacity,
    map_chunks,
    pairs_rng,
)
from .errors import DomainError, UnsupportedSpecError
from .waves import WavePhi, parse_wave
from .weights import (
    CRITICAL,
    SUB,
    SUPER,
    RegimeReport,
    WeightPsi,
    classify_regime,
    parse_weight,
)

__all__ = [
    "SignRule",
    "WtfSpec",
    "GridPoint",
    "eval_f",
    "eval_f_grid",
    "holder_bound",
    "check_holder_bounds",
    "grid_csv",
]


@dataclass(frozen=True)
class SignRule:
    """Level signs ``xi_m`` in ``{-1, +1}``.

    ``kind`` is one of ``plus``, ``minus``, ``alternating`` (``xi_m = (-1)**m``),
    ``explicit`` (``values``) or ``seeded``. Seeded signs take the top bit of
    successive SplitMix64 outputs: bit 0 gives ``+1``, bit 1 gives ``-1``.
    """

    kind: str = "plus"
    values: tuple[int, ...] = ()
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("plus", "minus", "alternating", "explicit", "seeded"):
            raise DomainError(f"unknown sign rule {self.kind!r}")
        if self.kind == "explicit" and any(v not in (-1, 1) for v in self.values):
            raise DomainError("explicit signs must be +1 or -1")

    @property
    def constant(self) -> bool:
        return self.kind in ("plus", "minus")

    def signs(self, n: int) -> np.ndarray:
        """``xi_0 .. xi_{n-1}`` as a float array."""
        if self.kind == "plus":
            return np.ones(n)
        if self.kind == "minus":
            return -np.ones(n)
        if self.kind == "alternating":
            return np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
        if self.kind == "explicit":
            if n > len(self.values):
                raise DomainError(f"explicit sign list has {len(self.values)} entries, "
                                  f"{n} requested")
            return np.array(self.values[:n], dtype=float)
        gen = SplitMix64(self.seed)
        return np.array([1.0 if gen.next() >> 63 == 0 else -1.0 for _ in range(n)])

    def __str__(self) -> str:
        if self.kind == "explicit":
            return "explicit:" + ",".join("+" if v > 0 else "-" for v in self.values)
        if self.kind == "seeded":
            return f"seeded:{self.seed}"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "SignRule":
        kind, _, arg = text.partition(":")
        kind = kind.strip().lower()
        aliases = {"+": "plus", "allplus": "plus", "-": "minus", "allminus": "minus",
                   "alt": "alternating"}
        kind = aliases.get(kind, kind)
        if kind == "seeded":
            return cls("seeded", seed=int(arg or 0))
        if kind == "explicit":
            vals = []
            for tok in arg.split(","):
                tok = tok.strip()
                vals.append(-1 if tok.startswith("-") else 1)
            return cls("explicit", values=tuple(vals))
        return cls(kind)


@dataclass(frozen=True)
class WtfSpec:
    b: int
    psi: WeightPsi
    phi: WavePhi
    signs: SignRule = field(default_factory=SignRule)

    def __post_init__(self):
        if not isinstance(self.b, int) or self.b < 2:
            raise DomainError("b must be an integer >= 2")
        rho = self.psi.at_inverse_power(self.b, 1)
        if not 0.0 < rho < 1.0:
            raise UnsupportedSpecError(f"psi(1/b) = {rho!r} is not in (0, 1)")

    @classmethod
    def from_strings(cls, b: int, weight: str, wave: str, signs: str = "plus") -> "WtfSpec":
        return cls(int(b), parse_weight(weight), parse_wave(wave), SignRule.parse(signs))

    @classmethod
    def takagi(cls) -> "WtfSpec":
        return cls(2, WeightPsi.power(1.0), WavePhi.triangular())

    @property
    def rho(self) -> float:
        """``psi(1/b)``."""
        return self.psi.at_inverse_power(self.b, 1)

    @property
    def gamma(self) -> float:
        return self.phi.gamma

    @property
    def C(self) -> float:
        return self.phi.holder_const

    @property
    def regime(self) -> RegimeReport:
        return classify_regime(self.psi, self.b, self.phi.gamma)

    @property
    def ratio(self) -> float:
        """``psi(1/b) * b**gamma``; below, at or above 1 by regime."""
        return self.rho * float(self.b) ** self.gamma

    def weights(self, n: int) -> np.ndarray:
        """``psi(b^-m)`` for ``m = 0 .. n-1``."""
        return np.asarray(self.psi.at_inverse_power(self.b, np.arange(n)), dtype=float).reshape(n)

    def sup_bound(self) -> float:
        """Uniform bound ``sup|phi| / (1 - psi(1/b))`` on ``|f|``."""
        return self.phi.sup_abs / (1.0 - self.rho)

    def describe(self) -> dict:
        return {"b": self.b, "weight": str(self.psi), "wave": self.phi.kind,
                "gamma": self.phi.gamma, "holder_const": self.phi.holder_const,
                "sup_abs": self.phi.sup_abs, "signs": str(self.signs)}


@dataclass(frozen=True)
class GridPoint:
    """The point ``t = k b^-n``."""

    k: int
    n: int
    b: int = 2

    def __post_init__(self):
        if self.n < 0 or not 0 <= self.k <= self.b**self.n:
            raise DomainError("grid point needs 0 <= k <= b**n")
        if self.b**self.n >= 2**63:
            raise DomainError("b**n must fit in a signed 64-bit integer")

    @property
    def t(self) -> Fraction:
        return Fraction(self.k, self.b**self.n)


def truncation_level(spec: WtfSpec, tol: float) -> int:
    """Smallest ``N`` with ``sup|phi| rho^N / (1 - rho) < tol``."""
    rho = spec.rho
    S = spec.phi.sup_abs
    if S == 0.0:
        return 0
    lead = S / (1.0 - rho)
    if lead < tol:
        return 0
    N = max(0, int(math.floor(math.log(tol / lead) / math.log(rho))))
    while lead * rho**N >= tol:
        N += 1
    while N > 0 and lead * rho ** (N - 1) < tol:
        N -= 1
    return N


def eval_f(spec: WtfSpec, t, tol: float = 1e-12, periodic: bool = False) -> tuple[float, float]:
    """Evaluate ``f(t)`` to absolute accuracy ``tol``.

    Returns ``(value, err_bound)`` with ``err_bound < tol``. ``t`` may be a
    float or an exact rational; in both cases ``b^m t`` is reduced modulo 1
    in integer arithmetic. Arguments outside ``[0, 1]`` are rejected unless
    ``periodic=True``.
    """
    if not tol > 0:
        raise DomainError("tol must be > 0")
    if not isinstance(t, (Rational, float, int)):
        raise DomainError("t must be a real scalar")
    q = Fraction(t)
    if not periodic and not 0 <= q <= 1:
        raise DomainError(f"t = {t} outside [0, 1]")
    N = truncation_level(spec, tol)
    err = spec.phi.sup_abs * spec.rho**N / (1.0 - spec.rho)
    if N == 0:
        return 0.0, err
    w = spec.weights(N)
    xi = spec.signs.signs(N)
    num, den = q.numerator, q.denominator
    terms = []
    bm = 1
    for m in range(N):
        terms.append(xi[m] * w[m] * float(spec.phi.on_grid((num * bm) % den, den)))
        bm *= spec.b
    return math.fsum(terms), err


def eval_f_grid(spec: WtfSpec, n: int) -> np.ndarray:
    """``f(k b^-n)`` for ``k = 0 .. b^n`` (length ``b^n + 1``).

    Uses the exact n-term truncation; terms are added in order of decreasing
    weight with compensated summation, independently for each ``k``.
    """
    B = check_capacity(spec.b, n)
    if n == 0:
        return np.zeros(2)
    w = spec.weights(n)
    xi = spec.signs.signs(n)
    order = sorted(range(n), key=lambda m: (-w[m], m))
    mults = [pow(spec.b, m, B) for m in range(n)]
    phi = spec.phi

    def block(lo: int, hi: int) -> np.ndarray:
        k = np.arange(lo, hi, dtype=np.int64)
        acc = CompensatedAccumulator(k.shape)
        for m in order:
            acc.add(xi[m] * w[m] * phi.on_grid(k * mults[m], B))
        return acc.value

    return map_chunks(block, B + 1)


def holder_bound(spec: WtfSpec) -> tuple[str, float, float | None]:
    """Explicit modulus of continuity for ``f``.

    Returns ``(regime, constant, exponent)``:

    * Sub: ``|f(t)-f(s)| <= K |t-s|**gamma`` with ``K = C / (1 - rho b^gamma)``;
    * Super: ``K |t-s|**beta`` with
      ``K = C b^gamma / (rho b^gamma - 1) + 2 sup|phi| / (1 - rho)``;
    * Critical: ``K |t-s|**gamma log_b(1/|t-s|)`` for ``|t-s| <= 1/2`` with
      ``K = C (1/log_b 2 + 1) + 2 sup|phi| / ((1 - rho) log_b 2)``.
    """
    reg = spec.regime
    C, S, rho, g, b = spec.C, spec.phi.sup_abs, spec.rho, spec.gamma, spec.b
    if reg.regime == SUB:
        return SUB, C / (1.0 - spec.ratio), g
    if reg.regime == SUPER:
        return SUPER, C * b**g / (spec.ratio - 1.0) + 2.0 * S / (1.0 - rho), reg.beta
    lb2 = math.log(2.0) / math.log(b)
    return CRITICAL, C * (1.0 / lb2 + 1.0) + 2.0 * S / ((1.0 - rho) * lb2), g


def check_holder_bounds(spec: WtfSpec, pair_count: int = 10_000, seed: int = 0,
                        tol: float = 1e-13) -> CertificateReport:
    """Sample pairs ``(s, t)`` with ``0 < |t-s| <= 1/2`` and test :func:`holder_bound`.

    A pair counts as a violation only if the computed difference exceeds the
    bound by more than the certified truncation error of both evaluations.
    """
    regime, K, expo = holder_bound(spec)
    rng = pairs_rng(seed)
    s = rng.uniform(0.0, 1.0, pair_count)
    h = 10.0 ** rng.uniform(-8.0, math.log10(0.5), pair_count)
    sign = np.where(rng.uniform(size=pair_count) < 0.5, -1.0, 1.0)
    t = s + sign * h
    t = np.where((t < 0) | (t > 1), s - sign * h, t)
    worst = -math.inf
    violations = 0
    for si, ti in zip(s.tolist(), t.tolist()):
        d = abs(ti - si)
        if not 0 < d <= 0.5:
            continue
        fs, es = eval_f(spec, si, tol)
        ft, et = eval_f(spec, ti, tol)
        if regime == CRITICAL:
            bound = K * d**expo * math.log(1.0 / d, spec.b)
        else:
            bound = K * d**expo
        excess = abs(ft - fs) - es - et - bound
        worst = max(worst, (abs(ft - fs) - es - et) / bound)
        if excess > 0:
            violations += 1
    return CertificateReport(f"holder-{regime}", violations == 0, worst, 1.0, pair_count,
                             {"constant": K, "exponent": expo, "violations": violations})


def _exact_t(k: int, n: int, b: int) -> str:
    B = b**n
    if b not in (2, 5, 10):
        return repr(k / B)
    # B divides 10**n, so k/B has at most n decimals
    scaled = k * 10**n // B
    if n == 0:
        return str(scaled)
    whole, frac = divmod(scaled, 10**n)
    frac_s = str(frac).rjust(n, "0").rstrip("0")
    return f"{whole}.{frac_s}" if frac_s else str(whole)


def grid_csv(spec: WtfSpec, n: int, values: np.ndarray | None = None) -> str:
    """CSV dump with header ``k,n,t,f``; exact decimal ``t`` for b in {2, 5, 10}."""
    if values is None:
        values = eval_f_grid(spec, n)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "n", "t", "f"])
    for k, v in enumerate(values.tolist()):
        writer.writerow([k, n, _exact_t(k, n, spec.b), repr(float(v))])
    return buf.getvalue()
