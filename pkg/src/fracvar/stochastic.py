"""Digit-path representation of b-adic increments.

With i.i.d. uniform digits ``U_1, U_2, ...`` in ``{0, .., b-1}`` put
``R_m = sum_{i<=m} U_i b^{i-1}`` and ``Y_m = lambda_{m, R_m}`` (the chord
slope of ``phi`` over ``[R_m b^-m, (R_m+1) b^-m]``). Then

    V^{p,1}_n(f) = b^n E| sum_{m=1}^n xi_{n-m} psi(b^{m-n}) b^-m Y_m |^p

and the normalised sums ``W_n``, ``T_n`` and ``Z_n`` below are linear
functionals of ``(Y_1, .., Y_n)``. Exhaustive enumeration of all ``b^n``
digit paths gives an oracle for the grid variation that never touches the
values of ``f``.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from ._numerics import (
    MAX_ENUMERATION,
    BoundReport,
    CompensatedAccumulator,
    abs_pow,
    check_capacity,
    exact_sum,
    get_threads,
    map_chunks,
)
from .errors import ContractError, DomainError, HypothesisError, UnsupportedSignError
from .weights import SUB, SUPER
from .wtf import WtfSpec

__all__ = [
    "DigitPath",
    "PathFunctionals",
    "ZMomentEstimate",
    "NonzeroCertificate",
    "functional_coefficients",
    "path_functionals",
    "enumerate_paths",
    "enumerate_variation",
    "exhaustive_bound_check",
    "z_samples",
    "z_moment",
    "nonzero_certificate",
]

Z_BLOCK = 4096
MAX_EXHAUSTIVE_BOUND = 2**20


@dataclass(frozen=True)
class DigitPath:
    b: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if self.b < 2:
            raise DomainError("b must be >= 2")
        if any(not 0 <= u < self.b for u in self.digits):
            raise DomainError("digits must lie in {0, .., b-1}")

    @property
    def n(self) -> int:
        return len(self.digits)

    def r_values(self) -> list[int]:
        """``R_1 .. R_n``."""
        out, r, w = [], 0, 1
        for u in self.digits:
            r += u * w
            w *= self.b
            out.append(r)
        return out


@dataclass(frozen=True)
class PathFunctionals:
    y: tuple[float, ...]
    w_n: float
    t_n: float
    z_n: float | None


def functional_coefficients(spec: WtfSpec, n: int, which: str) -> np.ndarray:
    """Coefficients ``c_1 .. c_n`` with ``functional = sum_m c_m Y_m``.

    ``which`` is ``"increment"`` (the inner sum of the variation identity),
    ``"W"``, ``"T"`` or ``"Z"``. Products of large and small powers are
    formed in log space.
    """
    b = spec.b
    m = np.arange(1, n + 1)
    lnb = math.log(b)
    if which == "Z":
        if not spec.signs.constant:
            raise UnsupportedSignError("Z_n is defined for constant sign rules only")
        xi = spec.signs.signs(1)[0]
        return xi * np.exp(-m * (math.log(spec.rho) + lnb))
    xi = spec.signs.signs(n)[n - m]
    ln_psi = np.asarray(spec.psi.log_value(-(n - m) * lnb), dtype=float).reshape(n)
    if which == "increment":
        expo = ln_psi - m * lnb
    elif which == "W":
        expo = ln_psi + (n * (spec.gamma - 1.0) + (n - m)) * lnb
    elif which == "T":
        expo = ln_psi - n * math.log(spec.rho) - m * lnb
    else:
        raise ValueError(f"unknown functional {which!r}")
    return xi * np.exp(expo)


def path_functionals(spec: WtfSpec, path: DigitPath, with_z: bool | None = None) -> PathFunctionals:
    """``Y_1..Y_n``, ``W_n``, ``T_n`` and ``Z_n`` along one digit path.

    ``Z_n`` needs a constant sign rule; it is ``None`` for other rules unless
    ``with_z=True`` is passed, which raises instead.
    """
    if path.b != spec.b:
        raise DomainError("path base differs from spec base")
    n = path.n
    y = [float(spec.phi.slopes_at(r, spec.b ** (m + 1)))
         for m, r in enumerate(path.r_values())]
    yv = np.array(y)
    if n == 0:
        return PathFunctionals((), 0.0, 0.0, 0.0 if spec.signs.constant else None)
    w = math.fsum(functional_coefficients(spec, n, "W") * yv)
    t = math.fsum(functional_coefficients(spec, n, "T") * yv)
    z = None
    if spec.signs.constant:
        z = math.fsum(functional_coefficients(spec, n, "Z") * yv)
    elif with_z:
        raise UnsupportedSignError("Z_n is defined for constant sign rules only")
    return PathFunctionals(tuple(y), w, t, z)


def _slope_tables(spec: WtfSpec, n: int) -> list[np.ndarray]:
    phi, b = spec.phi, spec.b
    return [phi.slopes_at(np.arange(b**m, dtype=np.int64), b**m) for m in range(1, n + 1)]


def enumerate_paths(spec: WtfSpec, n: int, which: str,
                    limit: int = MAX_ENUMERATION) -> np.ndarray:
    """Evaluate a functional on every digit path of length ``n``.

    Paths are visited in odometer order (``U_1`` fastest), i.e. ``R_n``
    runs through ``0 .. b^n - 1``; ``Y_m`` is looked up at ``R_n mod b^m``.
    """
    B = check_capacity(spec.b, n, limit)
    if n == 0:
        return np.zeros(1)
    coef = functional_coefficients(spec, n, which)
    tables = _slope_tables(spec, n)
    sizes = [spec.b**m for m in range(1, n + 1)]

    def block(lo: int, hi: int) -> np.ndarray:
        r = np.arange(lo, hi, dtype=np.int64)
        acc = CompensatedAccumulator(r.shape)
        for c, tab, size in zip(coef, tables, sizes):
            acc.add(c * tab[r % size])
        return acc.value

    return map_chunks(block, B)


def enumerate_variation(spec: WtfSpec, p: float, n: int) -> float:
    """``V^{p,1}_n(f)`` as ``b^n`` times the mean over all digit paths."""
    if not p >= 1:
        raise DomainError("p must be >= 1")
    if n == 0:
        return 0.0
    inner = enumerate_paths(spec, n, "increment")
    # b^n * (sum / b^n) == sum
    return exact_sum(abs_pow(inner, p))


def exhaustive_bound_check(spec: WtfSpec, n: int) -> BoundReport:
    """Check ``|W_m|`` (Sub) or ``|T_m|`` (Super) on all paths for ``m = 1 .. n``.

    Bounds: ``C / (1 - rho b^gamma)`` for ``W`` and ``C / (rho b^gamma - 1)``
    for ``T``. In the critical regime ``T_m = W_m`` and no uniform bound is
    claimed; the maxima are reported with ``passed = None``.
    """
    check_capacity(spec.b, n, MAX_EXHAUSTIVE_BOUND)
    reg = spec.regime.regime
    if reg == SUB:
        which, bound, name = "W", spec.C / (1.0 - spec.ratio), "|W_n| <= C/(1-rho b^gamma)"
    elif reg == SUPER:
        which, bound, name = "T", spec.C / (spec.ratio - 1.0), "|T_n| <= C/(rho b^gamma-1)"
    else:
        which, bound, name = "W", None, "critical: max |W_n| = max |T_n| (no bound)"
    levels, bounds = [], []
    for m in range(1, n + 1):
        vals = enumerate_paths(spec, m, which, MAX_EXHAUSTIVE_BOUND)
        levels.append((m, float(np.max(np.abs(vals)))))
        bounds.append((m, bound))
    if bound is None:
        passed = None
    else:
        passed = all(v <= bound for _, v in levels)
    return BoundReport(name, reg, 1.0, levels, bounds, passed)


@dataclass
class ZMomentEstimate:
    p: float
    mc_mean: float
    mc_stderr: float
    trunc_N: int
    tail_bound: float
    samples: int
    seed: int
    convention: str = "from_one"
    moment_tail_bound: float | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"


def _z_block(spec: WtfSpec, coef: np.ndarray, count: int, trunc_N: int,
             seed: int, index: int) -> np.ndarray:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    rng = np.random.Generator(np.random.PCG64(ss))
    b = spec.b
    # level-major draws: the first m levels do not depend on trunc_N
    digits = rng.integers(0, b, size=(trunc_N, count), dtype=np.int64)
    exact64 = b**trunc_N < 2**62
    r = np.zeros(count, dtype=np.int64 if exact64 else object)
    acc = CompensatedAccumulator(count)
    w = 1
    for m in range(trunc_N):
        col = digits[m] if exact64 else digits[m].astype(object)
        r = r + col * w
        w *= b
        acc.add(coef[m] * spec.phi.slopes_at(r, w))
    return acc.value


def z_samples(spec: WtfSpec, samples: int, trunc_N: int, seed: int,
              convention: str = "from_one") -> np.ndarray:
    """Independent draws of the truncated series ``Z_N = xi sum_{m<=N} (rho b)^-m Y_m``.

    ``convention="from_zero"`` rescales by ``rho b``, i.e. weights
    ``(rho b)^-(m-1)``, matching series indexed from ``m = 0``.
    Samples are produced in blocks of :data:`Z_BLOCK`, block ``i`` seeded by
    ``SeedSequence(seed, spawn_key=(i,))``; output is independent of the
    number of worker threads. Within a block the digits are drawn level by
    level, so runs that differ only in ``trunc_N`` share their digit paths.
    """
    if samples < 1 or trunc_N < 1:
        raise DomainError("samples and trunc_N must be >= 1")
    if not spec.signs.constant:
        raise UnsupportedSignError("Z is defined for constant sign rules only")
    if convention not in ("from_one", "from_zero"):
        raise DomainError(f"unknown convention {convention!r}")
    coef = functional_coefficients(spec, trunc_N, "Z")
    if convention == "from_zero":
        coef = coef * (spec.rho * spec.b)
    counts = [min(Z_BLOCK, samples - lo) for lo in range(0, samples, Z_BLOCK)]
    jobs = [(c, i) for i, c in enumerate(counts)]
    threads = min(get_threads(), len(jobs))
    run = lambda job: _z_block(spec, coef, job[0], trunc_N, seed, job[1])  # noqa: E731
    if threads <= 1:
        parts = [run(j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, jobs))
    return np.concatenate(parts)


def z_tail_bound(spec: WtfSpec, trunc_N: int) -> float:
    """``C (rho b^gamma)^-N / (rho b^gamma - 1)``: bound on ``|Z - Z_N|``."""
    q = spec.ratio
    return spec.C * q ** (-trunc_N) / (q - 1.0)


def z_moment(spec: WtfSpec, p: float, samples: int = 100_000, trunc_N: int = 40,
             seed: int = 0, convention: str = "from_one") -> ZMomentEstimate:
    """Monte Carlo estimate of ``E|Z|^p`` with a certified truncation bound.

    ``tail_bound`` bounds ``|Z - Z_N|`` on every path. ``moment_tail_bound``
    turns it into a bound on ``| |Z|^p - |Z_N|^p |`` (for ``p >= 1``) using
    the uniform bound ``|Z| <= C / (rho b^gamma - 1)``.
    """
    if spec.regime.regime != SUPER:
        raise ContractError("Z requires the super-critical regime rho b^gamma > 1")
    if not p > 0:
        raise DomainError("p must be > 0")
    z = z_samples(spec, samples, trunc_N, seed, convention)
    vals = abs_pow(z, p)
    mean = exact_sum(vals) / samples
    if samples > 1:
        var = exact_sum((vals - mean) ** 2) / (samples - 1)
        stderr = math.sqrt(var / samples)
    else:
        stderr = 0.0
    scale = spec.rho * spec.b if convention == "from_zero" else 1.0
    tail = z_tail_bound(spec, trunc_N) * scale
    mtail = None
    if p >= 1:
        zmax = spec.C / (spec.ratio - 1.0) * scale
        mtail = p * zmax ** (p - 1.0) * tail
    return ZMomentEstimate(float(p), mean, stderr, trunc_N, tail, samples, seed,
                           convention, mtail)


@dataclass(frozen=True)
class NonzeroCertificate:
    """``P(|Z| > delta) >= prob_lower``, witnessed by paths starting with N zeros."""

    M: int
    N: int
    delta: float
    prob_lower: float

    def to_dict(self) -> dict:
        return asdict(self)


def nonzero_certificate(spec: WtfSpec, scan_depth: int = 60) -> NonzeroCertificate:
    """Certify ``P(Z != 0) > 0`` for all-plus signs in the super-critical regime.

    Requires ``phi(b^-k) >= 0`` for ``k <= scan_depth`` with at least one
    positive value. ``M`` is the first ``k`` with ``phi(b^-M) > 0``, ``N > M``
    the smallest level with ``C sum_{m >= N} (rho b^gamma)^-m < phi(b^-M)``,
    and ``delta`` half of the remaining slack. On the event
    ``U_1 = .. = U_N = 0`` every ``Y_m`` with ``m < N`` is ``b^m phi(b^-m) >= 0``,
    which forces ``|Z| > delta``; that event has probability ``b^-N``.
    """
    if spec.regime.regime != SUPER:
        raise ContractError("the certificate needs the super-critical regime")
    if spec.signs.kind != "plus":
        raise UnsupportedSignError("the certificate is stated for all-plus signs only")
    b = spec.b
    values = [float(spec.phi.on_grid(1, b**k)) for k in range(1, scan_depth + 1)]
    negative = [k for k, v in enumerate(values, start=1) if v < 0]
    if negative:
        raise HypothesisError(f"phi(b^-k) < 0 for k = {negative[0]}")
    positive = [k for k, v in enumerate(values, start=1) if v > 0]
    if not positive:
        raise HypothesisError(f"phi(b^-k) = 0 for all k <= {scan_depth}")
    M = positive[0]
    target = values[M - 1]
    q = spec.ratio
    N = M + 1
    while spec.C * q ** (-N) / (1.0 - 1.0 / q) >= target:
        N += 1
        if N - 1 > scan_depth:
            raise HypothesisError("tail does not drop below phi(b^-M) within the scan depth")
    tail = spec.C * q ** (-N) / (1.0 - 1.0 / q)
    delta = 0.5 * (target - tail)
    return NonzeroCertificate(M, N, delta, float(b) ** (-N))
