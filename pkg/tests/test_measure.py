from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cesaro_ca.catalog import BINARY, TERNARY
from cesaro_ca.measure import MeasureKind, bernoulli, cylinder_prob, markov, uniform


class TestBernoulli:
    def test_cylinder(self, wall_measure):
        assert cylinder_prob(wall_measure, "2012") == Fraction(1, 128)
        assert cylinder_prob(wall_measure, "") == 1

    def test_probabilities_must_sum_to_one(self):
        with pytest.raises(ValueError, match="sum"):
            bernoulli(BINARY, ["1/2", "1/3"])

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            bernoulli(BINARY, ["3/2", "-1/2"])

    def test_mapping(self):
        mu = bernoulli(TERNARY, {"0": "1/2", "2": "1/2"})
        assert mu.initial == (Fraction(1, 2), 0, Fraction(1, 2))
        assert not mu.has_full_support()

    def test_uniform(self):
        assert uniform(TERNARY).cylinder_prob("01") == Fraction(1, 9)


class TestMarkov:
    def test_stationary_vector(self):
        mu = markov(BINARY, [["1/2", "1/2"], [1, 0]])
        assert mu.kind is MeasureKind.MARKOV
        assert mu.initial == (Fraction(2, 3), Fraction(1, 3))
        assert mu.cylinder_prob("01") == Fraction(1, 3)
        assert mu.cylinder_prob("11") == 0

    def test_reducible(self):
        with pytest.raises(ValueError, match="irreducible"):
            markov(BINARY, [[1, 0], [0, 1]])

    def test_rows_must_be_stochastic(self):
        with pytest.raises(ValueError):
            markov(BINARY, [["1/2", "1/3"], [1, 0]])

    @settings(max_examples=25, deadline=None)
    @given(
        a=st.fractions(min_value=Fraction(1, 10), max_value=Fraction(9, 10), max_denominator=10),
        b=st.fractions(min_value=Fraction(1, 10), max_value=Fraction(9, 10), max_denominator=10),
    )
    def test_kolmogorov_consistency(self, a, b):
        mu = markov(BINARY, [[1 - a, a], [b, 1 - b]])
        for u in ("", "0", "1", "01", "110"):
            assert sum(mu.cylinder_prob(u + s) for s in "01") == mu.cylinder_prob(u)
            assert sum(mu.cylinder_prob(s + u) for s in "01") == mu.cylinder_prob(u)
