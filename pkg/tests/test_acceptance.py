"""End-to-end checks on the wall rule, negation and the elementary rules."""

from fractions import Fraction

import numpy as np
import pytest
from oracles import brute_pushforward

from cesaro_ca.blocking import canonical_window, certify_with_ladder, falsify_blocking
from cesaro_ca.caps import Caps
from cesaro_ca.catalog import BINARY, TERNARY, elementary, negation
from cesaro_ca.cesaro import Convergence, cesaro_mean, convergence_diagnostic, pushforward_cylinder
from cesaro_ca.formula import evaluate_formula, support_tests
from cesaro_ca.measure import bernoulli, markov
from cesaro_ca.periodic_points import construct_f_periodic_point
from cesaro_ca.rule import LocalRule, apply_periodic, apply_window_n, orbit_periodic
from cesaro_ca.surjectivity import count_preimages, is_surjective
from cesaro_ca.symbolic import PeriodicConfig

ALPHABETS = {2: BINARY, 3: TERNARY}


class TestWallRule:
    def test_wall_is_blocking_and_survives_the_falsifier(self, wall):
        assert certify_with_ladder(wall, "2", 0, 1) is not None
        assert falsify_blocking(wall, "2", 0, 1, horizon=8) is None

    def test_surjective_and_balanced(self, wall):
        assert is_surjective(wall).surjective
        for length in range(1, 5):
            assert {count_preimages(wall, u) for u in TERNARY.words(length)} == {9}

    @pytest.mark.parametrize("u", ["2012", "2112"])
    def test_raw_series_oscillates_but_means_settle(self, wall, wall_measure, u):
        series = cesaro_mean(wall, wall_measure, u, 64)
        assert convergence_diagnostic(series.pushforward[:11], 5, 1e-3) is Convergence.OSCILLATING
        assert convergence_diagnostic(series.values, 8, 1e-3) is Convergence.CAUCHY_LIKE

    def test_limit_is_not_bernoulli(self, wall, wall_measure):
        # Between the walls the pair alternates between preimages of weight p*q and
        # q^2, so both words average r^2 * q * s; a Bernoulli limit would give s^2 * r^2.
        p, q, r = Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)
        s = (p + q) / 2
        expected = r * r * q * s
        assert expected == Fraction(3, 512)
        for u in ("2012", "2112"):
            assert cesaro_mean(wall, wall_measure, u, 64).last == expected
        assert expected != s * s * r * r

    def test_formula_brackets_the_cesaro_limit(self, wall, wall_measure):
        N = 200
        evaluations = [evaluate_formula(wall, wall_measure, "2", 0, m) for m in range(1, 5)]
        slack = 1 - evaluations[-1].rkm_mass
        for u in "012":
            values = [ev.value(u) for ev in evaluations]
            assert values == sorted(values)
            limit = cesaro_mean(wall, wall_measure, u, N).last
            assert abs(values[-1] - limit) <= slack + Fraction(5, N)

    @pytest.mark.parametrize("v", [*TERNARY.words(1), *TERNARY.words(2)])
    def test_periodic_points(self, wall, v):
        point, m = construct_f_periodic_point(wall, v, "2")
        assert m <= 256
        assert point.contains_word(v)

    def test_support_is_witnessed(self, wall, wall_measure):
        assert support_tests(wall, wall_measure, "2", 2).complete


class TestNegation:
    def test_even_means_are_exact(self):
        mu = bernoulli(BINARY, ["1/3", "2/3"])
        series = cesaro_mean(negation(), mu, "0", 10)
        assert [series.mean(2 * t) for t in range(1, 6)] == [Fraction(1, 2)] * 5

    def test_every_periodic_point_is_an_involution_orbit(self):
        rule = negation()
        for length in range(1, 7):
            for g in BINARY.words(length):
                x = PeriodicConfig(g)
                summary = orbit_periodic(rule, x, 4)
                assert summary.preperiod == 0
                assert apply_periodic(rule, apply_periodic(rule, x)) == x


def _random_instance(seed: int):
    rng = np.random.default_rng(seed)
    q = int(rng.integers(2, 4))
    alphabet = ALPHABETS[q]
    rule = LocalRule(alphabet, 1, tuple(int(v) for v in rng.integers(0, q, size=q**3)))
    if q == 2 and rng.random() < 0.5:
        a, b = (Fraction(int(rng.integers(1, 5)), 5) for _ in range(2))
        measure = markov(alphabet, [[1 - a, a], [b, 1 - b]])
    else:
        weights = [int(w) for w in rng.integers(1, 5, size=q)]
        measure = bernoulli(alphabet, [Fraction(w, sum(weights)) for w in weights])
    length = int(rng.integers(1, 4))
    u = alphabet.decode(rng.integers(0, q, size=length))
    n = int(rng.integers(0, 4))
    return rule, measure, u, n


@pytest.mark.parametrize("seed", range(200))
def test_pushforward_matches_enumeration(seed):
    rule, measure, u, n = _random_instance(seed)
    assert pushforward_cylinder(rule, measure, u, n) == brute_pushforward(rule, measure, u, n)


@pytest.mark.parametrize("number", range(256))
def test_certificates_survive_falsification_and_replay(number):
    rule = elementary(number)
    caps = Caps(strip_width=8)
    rng = np.random.default_rng(number)
    for length in range(1, 5):
        offset, width = canonical_window(rule.radius, length)
        for word in BINARY.words(length):
            cert = certify_with_ladder(rule, word, offset, width, caps=caps)
            if cert is None:
                continue
            assert falsify_blocking(rule, word, offset, width, horizon=6, caps=caps) is None
            for _ in range(50):
                n = int(rng.integers(1, 7))
                left = BINARY.decode(rng.integers(0, 2, size=n))
                right = BINARY.decode(rng.integers(0, 2, size=n))
                image = apply_window_n(rule, left + word + right, n)
                assert image[offset : offset + width] == cert.expected_window(n)
