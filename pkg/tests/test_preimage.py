from fractions import Fraction

from oracles import brute_pushforward, preimage_rows

from cesaro_ca.catalog import BINARY, constant, elementary, negation, xor_right
from cesaro_ca.measure import bernoulli, markov, uniform
from cesaro_ca.preimage import effective_table, preimage_automata, word_automaton


class TestWordAutomaton:
    def test_single_word(self):
        aut = word_automaton((0, 1, 1), 2)
        assert aut.count() == 1
        assert aut.width == 1
        assert aut.measure(bernoulli(BINARY, ["1/3", "2/3"])) == Fraction(4, 27)


class TestPreimageAutomata:
    def test_xor_right_counts(self):
        auts = list(preimage_automata(xor_right(), "0", 4))
        assert [a.length for a in auts] == [1, 2, 3, 4]
        assert [a.count() for a in auts] == [1, 2, 4, 8]
        assert all(a.measure(uniform(BINARY)) == Fraction(1, 2) for a in auts)

    def test_full_support_rule_matches_enumeration(self):
        rule = elementary(30)
        mu = bernoulli(BINARY, ["1/4", "3/4"])
        for n, aut in enumerate(preimage_automata(rule, "01", 3)):
            rows = preimage_rows(rule, "01", n)
            assert aut.count() == len(rows)
            assert aut.measure(mu) == brute_pushforward(rule, mu, "01", n)

    def test_empty_preimage(self):
        auts = list(preimage_automata(constant(), "1", 2))
        assert auts[1].is_empty
        assert auts[1].measure(uniform(BINARY)) == 0
        assert auts[1].count() == 0

    def test_minimised_width_stays_small(self):
        # Negation only flips: every F^-n[u] is a single word.
        for aut in preimage_automata(negation(), "0110", 6):
            assert aut.count() == 1
            assert aut.width == 1

    def test_markov_measure_matches_enumeration(self):
        rule = elementary(110)
        mu = markov(BINARY, [["1/3", "2/3"], ["1/2", "1/2"]])
        for n, aut in enumerate(preimage_automata(rule, "10", 3)):
            assert aut.measure(mu) == brute_pushforward(rule, mu, "10", n)


class TestEffectiveTable:
    def test_xor_right(self):
        span, table = effective_table(xor_right())
        assert span == (0, 1)
        assert table == (0, 1, 1, 0)
