"""Randomised invariants over random bases, weights, waves and sign rules."""

from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st

from fracvar import (SignRule, WavePhi, WeightPsi, WtfSpec, enumerate_variation, eval_f,
                     eval_f_grid, pth_variation, set_threads, z_samples)
from fracvar.wtf import holder_bound

waves = st.one_of(
    st.builds(WavePhi.triangular, st.sampled_from([1.0, 0.75, 0.5])),
    st.builds(lambda nu, r: WavePhi.sine_cosine(nu, r),
              st.floats(-1, 1), st.floats(-1, 1)),
    st.builds(lambda a, c: WavePhi.custom([0.3, 0.6], [a, c]),
              st.floats(-2, 2), st.floats(-2, 2)),
)
signs = st.one_of(st.sampled_from(["plus", "minus", "alternating"]),
                  st.integers(0, 1000).map(lambda s: f"seeded:{s}"))


@st.composite
def specs(draw):
    b = draw(st.sampled_from([2, 3, 4]))
    alpha = draw(st.floats(0.1, 2.5))
    return WtfSpec(b, WeightPsi.power(alpha), draw(waves), SignRule.parse(draw(signs)))


def _top(b):
    return {2: 8, 3: 5, 4: 4}[b]


@settings(max_examples=60, deadline=None)
@given(specs(), st.floats(1.0, 4.0), st.data())
def test_grid_equals_enumeration(spec, p, data):
    n = data.draw(st.integers(1, _top(spec.b)))
    d = pth_variation(eval_f_grid(spec, n), spec.b, p)
    e = enumerate_variation(spec, p, n)
    assert abs(d - e) <= 1e-10 * max(abs(d), 1e-300)


@settings(max_examples=40, deadline=None)
@given(specs(), st.data())
def test_grid_holder_increments(spec, data):
    # consecutive grid values obey the explicit modulus of continuity
    n = data.draw(st.integers(1, _top(spec.b)))
    reg, K, expo = holder_bound(spec)
    inc = np.abs(np.diff(eval_f_grid(spec, n)))
    h = float(spec.b) ** -n
    if reg == "Critical":
        if h > 0.5:
            return
        bound = K * h**expo * np.log(1 / h) / np.log(spec.b)
    else:
        bound = K * h**expo
    assert inc.max() <= bound * (1 + 1e-12) + 1e-15


@settings(max_examples=40, deadline=None)
@given(specs(), st.data())
def test_eval_at_grid_points(spec, data):
    n = data.draw(st.integers(0, 4))
    k = data.draw(st.integers(0, spec.b**n))
    v, err = eval_f(spec, Fraction(k, spec.b**n), 1e-12)
    assert abs(v - eval_f_grid(spec, n)[k]) <= 1e-12 + err


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(1, 8))
def test_thread_count_does_not_change_results(t1, t2):
    spec = WtfSpec(2, WeightPsi.power(0.5), WavePhi.triangular())
    try:
        set_threads(t1)
        g1 = eval_f_grid(spec, 17)
        z1 = z_samples(spec, 9000, 30, 5)
        set_threads(t2)
        g2 = eval_f_grid(spec, 17)
        z2 = z_samples(spec, 9000, 30, 5)
    finally:
        set_threads(None)
    assert g1.tobytes() == g2.tobytes()
    assert z1.tobytes() == z2.tobytes()
