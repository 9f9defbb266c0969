import pytest

from oracles import brute_count_preimages

from cesaro_ca.catalog import BINARY, constant, elementary, min_right, xor_right
from cesaro_ca.rule import LocalRule
from cesaro_ca.surjectivity import count_preimages, is_surjective


class TestBalance:
    def test_wall_xor(self, wall):
        verdict = is_surjective(wall)
        assert verdict.surjective
        assert verdict.method == "balance"
        assert verdict.preimages_per_word == 9

    def test_constant_witness(self):
        verdict = is_surjective(constant())
        assert not verdict.surjective
        assert verdict.witness == "1"

    def test_min_right_witness(self):
        verdict = is_surjective(min_right())
        assert verdict.witness == "101"
        assert count_preimages(min_right(), "101") == 0

    def test_xor_right(self):
        assert is_surjective(xor_right()).preimages_per_word == 4

    @pytest.mark.parametrize("number", range(256))
    def test_elementary_verdicts_agree_with_counts(self, number):
        rule = elementary(number)
        verdict = is_surjective(rule)
        if verdict.surjective:
            for length in (1, 2, 3):
                assert all(count_preimages(rule, u) == 4 for u in BINARY.words(length))
        else:
            assert count_preimages(rule, verdict.witness) == 0

    def test_known_surjective_elementary(self):
        for number in (15, 30, 45, 90, 105, 150, 170, 204):
            assert is_surjective(elementary(number)).surjective
        for number in (0, 110, 128, 184):
            assert not is_surjective(elementary(number)).surjective


class TestCounting:
    def test_matches_enumeration(self, wall):
        for length in (1, 2, 3):
            for u in wall.alphabet.words(length):
                assert count_preimages(wall, u) == brute_count_preimages(wall, u) == 9

    def test_on_sft(self, golden):
        rule = LocalRule(BINARY, 0, (0, 1), domain=golden)
        assert count_preimages(rule, "01") == 1
        assert count_preimages(rule, "11") == 0


class TestNumericalVerdict:
    def test_identity_on_golden_mean(self, golden):
        verdict = is_surjective(LocalRule(BINARY, 0, (0, 1), domain=golden))
        assert verdict.surjective
        assert verdict.numerical

    def test_constant_on_golden_mean(self, golden):
        verdict = is_surjective(LocalRule(BINARY, 0, (0, 0), domain=golden))
        assert not verdict.surjective
        assert verdict.numerical
        assert verdict.max_deviation > 0.1
