from fractions import Fraction

import pytest

from welattice.model import make_market


@pytest.fixture
def e1():
    """Single good, two buyers valuing it 5 and 3."""
    return make_market([1, 2], ["a"], [[5], [3]], name="e1")


@pytest.fixture
def e1h6():
    """Same market with the price cap raised above the top valuation."""
    return make_market([1, 2], ["a"], [[5], [3]], h=6, name="e1h6")


@pytest.fixture
def e2():
    """Two goods, two buyers: v1=(4,1), v2=(3,2)."""
    return make_market([1, 2], ["a", "b"], [[4, 1], [3, 2]], name="e2")


@pytest.fixture
def e2_int():
    """The two-good market on the integer grid."""
    return make_market([1, 2], ["a", "b"], [[4, 1], [3, 2]], tick=Fraction(1), name="e2-int")
