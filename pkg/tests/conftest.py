import pytest

from fracvar import SignRule, WavePhi, WeightPsi, WtfSpec


def make_spec(b, alpha, signs="plus", wave=None):
    return WtfSpec(b, WeightPsi.power(alpha), wave or WavePhi.triangular(),
                   SignRule.parse(signs))


@pytest.fixture
def takagi():
    return WtfSpec.takagi()


@pytest.fixture
def half():
    """Power(1/2) weight with the triangular wave: V^{2,1}_n = 1 - 2^-n."""
    return make_spec(2, 0.5)


@pytest.fixture
def sub3():
    return make_spec(3, 2.0)
