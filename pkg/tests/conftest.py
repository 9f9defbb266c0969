from fractions import Fraction

import pytest

from cesaro_ca.catalog import BINARY, TERNARY, wall_xor
from cesaro_ca.measure import bernoulli
from cesaro_ca.shift_space import build_sft


@pytest.fixture
def wall():
    return wall_xor()


@pytest.fixture
def wall_measure():
    """Bernoulli(1/2, 1/4, 1/4) on {0, 1, 2}."""
    return bernoulli(TERNARY, [Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)])


@pytest.fixture
def golden():
    return build_sft(BINARY, ["11"])


@pytest.fixture
def wall_rule_text():
    return """\
# 2 is a wall; 0/1 add their right neighbour
alphabet: 0 1 2
radius: 1
*00 -> 0
*01 -> 1
*10 -> 1
*11 -> 0
*20 -> 2
*21 -> 2
*02 -> 0
*12 -> 1
*22 -> 2
"""
