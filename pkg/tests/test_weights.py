import math

import pytest
from hypothesis import given, settings, strategies as st

from fracvar import (DomainError, UnsupportedSpecError, WeightPsi, classify_regime,
                     estimate_alpha, eval_weight, parse_weight, verify_submultiplicative)
from fracvar.weights import CRITICAL, SUB, SUPER


def test_eval_examples():
    assert eval_weight(WeightPsi.power(1), 0.5) == 0.5
    assert eval_weight(WeightPsi("logplus", 1.0), 1 / math.e) == pytest.approx(2.0, rel=1e-15)
    assert eval_weight(WeightPsi("powerlog", 1.0), 1.0) == 1.0
    with pytest.raises(DomainError):
        eval_weight(WeightPsi.power(1), 0.0)


def test_regime_examples():
    r = classify_regime(WeightPsi.power(0.5), 2, 1.0)
    assert (r.regime, r.beta, r.q) == (SUPER, 0.5, 2.0)
    assert classify_regime(WeightPsi.power(1), 2, 1.0).regime == CRITICAL
    assert classify_regime(WeightPsi.power(2), 3, 1.0).regime == SUB


def test_regime_needs_rho_below_one():
    with pytest.raises(UnsupportedSpecError):
        classify_regime(WeightPsi("logplus", 1.0), 2, 1.0)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 3.0), st.floats(0.05, 1.0), st.integers(2, 9))
def test_power_regime_is_exponent_comparison(alpha, gamma, b):
    r = classify_regime(WeightPsi.power(alpha), b, gamma)
    expected = SUB if alpha > gamma else SUPER if alpha < gamma else CRITICAL
    if abs(alpha - gamma) > 1e-12 * gamma:
        assert r.regime == expected


def test_estimate_alpha():
    assert estimate_alpha(WeightPsi.power(0.7), 1e-6) == 0.7
    assert abs(estimate_alpha(WeightPsi("powerlog", 1.0), 1e-8) - 1.0) < 0.05
    assert abs(estimate_alpha(WeightPsi("logplus", 1.0), 1e-8)) < 0.05


def test_estimate_alpha_callable():
    assert abs(estimate_alpha(lambda x: x**0.3 * (2 + math.log(1 / x)), 1e-8) - 0.3) < 0.05


def test_submultiplicative():
    rep = verify_submultiplicative(WeightPsi.power(0.5), 10_000)
    assert rep.passed and abs(rep.worst) <= 1e-15
    assert verify_submultiplicative(WeightPsi("sinlog", 1.0), 10_000).passed
    for kind in ("logplus", "powerlog", "powersinlog"):
        assert verify_submultiplicative(WeightPsi(kind, 1.0), 10_000).passed


def test_supermultiplicative_fails():
    assert not verify_submultiplicative(lambda x: 0.5 * x, 10_000).passed


@pytest.mark.parametrize("w", ["power:0.5", "power:1", "power:2", "powerlog:1",
                               "powersinlog:1.5", "logplus:1", "sinlog:2"])
def test_chaining(w):
    psi = parse_weight(w)
    for b in (2, 3):
        r = psi.at_inverse_power(b, 1)
        for m in range(1, 31):
            assert psi.at_inverse_power(b, m) <= r**m * (1 + 1e-12)


def test_parse_weight_errors():
    with pytest.raises(DomainError):
        parse_weight("cubic:2")
    with pytest.raises(DomainError):
        parse_weight("power")
