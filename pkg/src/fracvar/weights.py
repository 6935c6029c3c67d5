"""Submultiplicative weights and the regime trichotomy.

The catalogue holds pure powers and four standard log-type examples::

    power:a        x**a                      (multiplicative)
    logplus:A      A + |ln x|
    powerlog:A     x**A * (1 + |ln x|)
    sinlog:A       A + |sin(ln x)|
    powersinlog:A  x**A * (1 + |sin(ln x)|)

For the log-type weights ``psi(1/b) >= 1``, so they never yield a valid
Weierstrass-type function; they are kept for the submultiplicativity and
growth-exponent diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._numerics import CertificateReport, pairs_rng
from .errors import DomainError, UnsupportedSpecError

__all__ = [
    "WeightPsi",
    "RegimeReport",
    "eval_weight",
    "classify_regime",
    "estimate_alpha",
    "verify_submultiplicative",
    "parse_weight",
    "SUB",
    "CRITICAL",
    "SUPER",
]

SUB, CRITICAL, SUPER = "Sub", "Critical", "Super"
CRITICAL_RTOL = 1e-12

_KINDS = ("power", "logplus", "powerlog", "sinlog", "powersinlog")


@dataclass(frozen=True)
class WeightPsi:
    kind: str
    param: float

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown weight kind {self.kind!r}")
        if self.kind == "power":
            if not self.param > 0:
                raise DomainError("power exponent must be > 0")
        elif not self.param >= 1:
            raise DomainError(f"{self.kind} needs A >= 1")

    @classmethod
    def power(cls, alpha: float) -> "WeightPsi":
        return cls("power", float(alpha))

    @property
    def multiplicative(self) -> bool:
        return self.kind == "power"

    def __call__(self, x):
        return eval_weight(self, x)

    def log_value(self, lnx):
        """``ln psi(e**lnx)``; avoids forming tiny ``x`` explicitly."""
        u = np.asarray(lnx, dtype=float)
        a = self.param
        if self.kind == "power":
            out = a * u
        elif self.kind == "logplus":
            out = np.log(a + np.abs(u))
        elif self.kind == "powerlog":
            out = a * u + np.log1p(np.abs(u))
        elif self.kind == "sinlog":
            out = np.log(a + np.abs(np.sin(u)))
        else:
            out = a * u + np.log1p(np.abs(np.sin(u)))
        return out if out.ndim else float(out)

    def at_inverse_power(self, b: int, m) -> np.ndarray | float:
        """``psi(b**-m)``, computed from the logarithm for the log-type kinds."""
        m_arr = np.asarray(m, dtype=float)
        if self.kind == "power":
            out = float(b) ** (-m_arr * self.param)
        else:
            out = np.exp(self.log_value(-m_arr * math.log(b)))
        return out if np.ndim(out) else float(out)

    def __str__(self) -> str:
        return f"{self.kind}:{self.param:g}"


def eval_weight(psi: WeightPsi, x):
    x_arr = np.asarray(x, dtype=float)
    if np.any(~(x_arr > 0)):
        raise DomainError("weights are defined for x > 0 only")
    if psi.kind == "power":
        out = x_arr**psi.param
        return out if out.ndim else float(out)
    out = np.exp(psi.log_value(np.log(x_arr)))
    return out if np.ndim(out) else float(out)


@dataclass(frozen=True)
class RegimeReport:
    regime: str
    psi_at_inv_b: float
    threshold: float
    beta: float | None
    q: float

    def to_dict(self) -> dict:
        return {
            "regime": self.regime,
            "psi_at_inv_b": self.psi_at_inv_b,
            "threshold": self.threshold,
            "beta": self.beta,
            "q": self.q,
        }


def classify_regime(psi: WeightPsi, b: int, gamma: float) -> RegimeReport:
    """Compare ``psi(1/b)`` with ``b**-gamma``.

    ``q`` is ``1/beta`` in the super-critical regime and ``1/gamma``
    otherwise.
    """
    if b < 2:
        raise DomainError("b must be an integer >= 2")
    if not 0 < gamma <= 1:
        raise DomainError("gamma must lie in (0, 1]")
    rho = psi.at_inverse_power(b, 1)
    if not 0.0 < rho < 1.0:
        raise UnsupportedSpecError(f"psi(1/b) = {rho!r} is not in (0, 1)")
    thr = float(b) ** (-gamma)
    if psi.kind == "power":
        # closed form: compare exponents, not rounded powers
        diff = gamma - psi.param
        close = abs(diff) <= CRITICAL_RTOL * gamma
        sign = 0 if close else (1 if diff > 0 else -1)
        beta_exact = psi.param
    else:
        close = abs(rho - thr) <= CRITICAL_RTOL * thr
        sign = 0 if close else (1 if rho > thr else -1)
        beta_exact = -math.log(rho) / math.log(b)
    if sign == 0:
        return RegimeReport(CRITICAL, rho, thr, None, 1.0 / gamma)
    if sign < 0:
        return RegimeReport(SUB, rho, thr, None, 1.0 / gamma)
    return RegimeReport(SUPER, rho, thr, beta_exact, 1.0 / beta_exact)


def estimate_alpha(psi: WeightPsi | Callable, x_min: float, points: int = 24,
                   extrapolate: bool = True) -> float:
    """Estimate ``alpha = lim_{x -> 0} ln psi(x) / ln x``.

    The ratio is sampled on ``points`` geometrically spaced abscissae from
    ``1e-1`` down to ``x_min``. Without extrapolation the last ratio is
    returned. With extrapolation the ratios are fitted, in ``s = -ln x``, by
    ``alpha + c1/s + c2 ln(s)/s``, which removes the logarithmic corrections
    ``x**alpha h(x)`` typically carries; ``alpha`` is the intercept. If the
    ratio is constant (pure powers) that constant is returned unchanged.
    """
    if not 0.0 < x_min < 1.0:
        raise DomainError("x_min must lie in (0, 1)")
    if isinstance(psi, WeightPsi) and psi.multiplicative:
        return psi.param
    s = np.geomspace(math.log(10.0), -math.log(x_min), points)
    if isinstance(psi, WeightPsi):
        lnpsi = np.asarray(psi.log_value(-s))
    else:
        lnpsi = np.log(np.asarray([psi(math.exp(-v)) for v in s], dtype=float))
    ratio = lnpsi / (-s)
    if not extrapolate or np.all(ratio == ratio[-1]):
        return float(ratio[-1])
    design = np.column_stack([np.ones_like(s), 1.0 / s, np.log(s) / s])
    coef, *_ = np.linalg.lstsq(design, ratio, rcond=None)
    return float(coef[0])


def verify_submultiplicative(psi: WeightPsi | Callable, pair_count: int,
                             seed: int = 0, rel_tol: float = 1e-12) -> CertificateReport:
    """Check ``psi(xy) <= psi(x) psi(y) (1 + rel_tol)`` on pairs in (0, 1]^2.

    Abscissae are drawn log-uniformly down to ``1e-12`` so both moderate and
    very small arguments are exercised. ``worst`` is the largest value of
    ``psi(xy) / (psi(x) psi(y)) - 1``; it is ``<= 0`` on success.
    """
    if pair_count < 1:
        raise DomainError("pair_count must be >= 1")
    rng = pairs_rng(seed)
    x = 10.0 ** rng.uniform(-12.0, 0.0, pair_count)
    y = 10.0 ** rng.uniform(-12.0, 0.0, pair_count)
    if isinstance(psi, WeightPsi):
        lhs = np.asarray(psi.log_value(np.log(x) + np.log(y)))
        rhs = np.asarray(psi.log_value(np.log(x))) + np.asarray(psi.log_value(np.log(y)))
        excess = np.expm1(lhs - rhs)
    else:
        fx = np.array([psi(v) for v in x], dtype=float)
        fy = np.array([psi(v) for v in y], dtype=float)
        fxy = np.array([psi(v) for v in x * y], dtype=float)
        excess = fxy / (fx * fy) - 1.0
    worst = float(excess.max())
    return CertificateReport("submultiplicative", worst <= rel_tol, worst, rel_tol,
                             pair_count)


def parse_weight(text: str) -> WeightPsi:
    """Parse ``power:0.5``, ``logplus:1.0`` and friends."""
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    if kind not in _KINDS:
        raise DomainError(f"unknown weight {text!r}; expected one of {', '.join(_KINDS)}")
    if not arg:
        raise DomainError(f"weight {text!r} needs a parameter, e.g. {kind}:1.0")
    return WeightPsi(kind, float(arg))
