from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cesaro_ca.blocking import ClassifyParams
from cesaro_ca.catalog import BINARY, TERNARY, identity, negation, xor_right
from cesaro_ca.cesaro import (
    Convergence,
    cesaro_mean,
    convergence_diagnostic,
    equicontinuous_cesaro_limit,
    pushforward_cylinder,
    pushforward_series,
    pushforward_snapshot,
)
from cesaro_ca.errors import HypothesisNotMetError, UnsupportedDomainError
from cesaro_ca.measure import bernoulli, uniform
from cesaro_ca.rule import LocalRule


class TestPushforward:
    def test_identity_is_constant(self):
        mu = bernoulli(BINARY, ["1/3", "2/3"])
        assert pushforward_series(identity(), mu, "01", 5) == [Fraction(2, 9)] * 5

    def test_negation_alternates(self):
        mu = bernoulli(BINARY, ["1/3", "2/3"])
        assert pushforward_series(negation(), mu, "0", 4) == [Fraction(1, 3), Fraction(2, 3)] * 2

    def test_wall_oscillation(self, wall, wall_measure):
        assert pushforward_series(wall, wall_measure, "2012", 4) == [
            Fraction(1, 128),
            Fraction(1, 256),
            Fraction(1, 128),
            Fraction(1, 256),
        ]
        assert pushforward_cylinder(wall, wall_measure, "2112", 1) == Fraction(1, 128)

    def test_walls_are_conserved(self, wall, wall_measure):
        assert set(pushforward_series(wall, wall_measure, "2", 6)) == {Fraction(1, 4)}

    def test_uniform_is_invariant_under_surjective_rules(self):
        mu = uniform(BINARY)
        for u in ("0", "01", "110"):
            assert pushforward_series(xor_right(), mu, u, 5) == [Fraction(1, 2 ** len(u))] * 5

    def test_sft_domain_is_unsupported(self, golden):
        rule = LocalRule(BINARY, 0, (0, 1), domain=golden)
        with pytest.raises(UnsupportedDomainError):
            pushforward_series(rule, uniform(BINARY), "0", 2)

    @settings(max_examples=20, deadline=None)
    @given(
        table=st.lists(st.integers(0, 2), min_size=27, max_size=27),
        n=st.integers(0, 3),
        length=st.integers(1, 3),
    )
    def test_mass_is_conserved(self, table, n, length):
        rule = LocalRule(TERNARY, 1, tuple(table))
        mu = bernoulli(TERNARY, ["1/2", "1/3", "1/6"])
        total = sum(pushforward_cylinder(rule, mu, u, n) for u in TERNARY.words(length))
        assert total == 1


class TestSnapshot:
    def test_consistent(self, wall, wall_measure):
        snapshot = pushforward_snapshot(wall, wall_measure, 3, 2)
        assert sum(snapshot.table.values()) == 1
        assert snapshot.marginal() == {
            u: pushforward_cylinder(wall, wall_measure, u, 3) for u in TERNARY.words(1)
        }


class TestCesaro:
    def test_wall_means_converge(self, wall, wall_measure):
        series = cesaro_mean(wall, wall_measure, "2012", 64)
        assert series.last == Fraction(3, 512)
        assert series.mean(1) == Fraction(1, 128)
        assert len(series) == 64

    def test_order_range(self, wall, wall_measure):
        series = cesaro_mean(wall, wall_measure, "2", 4)
        with pytest.raises(ValueError):
            series.mean(0)

    def test_e1_limit(self):
        mu = bernoulli(BINARY, ["1/3", "2/3"])
        params = ClassifyParams(max_len=3)
        assert equicontinuous_cesaro_limit(negation(), mu, 2, 0, "0", params=params) == Fraction(1, 2)
        assert equicontinuous_cesaro_limit(negation(), mu, 4, 3, "0", params=params) == Fraction(1, 2)

    def test_e1_limit_needs_compatible_period(self):
        mu = bernoulli(BINARY, ["1/3", "2/3"])
        with pytest.raises(HypothesisNotMetError):
            equicontinuous_cesaro_limit(negation(), mu, 1, 0, "0", params=ClassifyParams(max_len=3))

    def test_e1_limit_needs_e1(self, wall, wall_measure):
        with pytest.raises(HypothesisNotMetError, match="not E1"):
            equicontinuous_cesaro_limit(
                wall, wall_measure, 2, 0, "0", params=ClassifyParams(max_len=3)
            )


class TestDiagnostic:
    def test_constant(self):
        assert convergence_diagnostic([Fraction(1, 3)] * 10, 4, 1e-3) is Convergence.CAUCHY_LIKE

    def test_alternating(self):
        series = [Fraction(i % 2) for i in range(10)]
        assert convergence_diagnostic(series, 4, 1e-3) is Convergence.OSCILLATING

    def test_too_short(self):
        with pytest.raises(ValueError):
            convergence_diagnostic([0.0, 1.0, 0.0], 2, 1e-3)
