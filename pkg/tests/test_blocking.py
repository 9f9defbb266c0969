import asyncio

import pytest

from cesaro_ca.blocking import (
    BlockingCertificate,
    ClassifyParams,
    EquicontinuityClass,
    canonical_window,
    certify_block,
    certify_blocking,
    certify_with_ladder,
    classify_equicontinuity,
    classify_equicontinuity_async,
    falsify_blocking,
    minimal_schedule,
    search_blocking_words,
    search_blocking_words_async,
)
from cesaro_ca.caps import Caps
from cesaro_ca.catalog import constant, identity, left_shift, negation, xor_right
from cesaro_ca.errors import CapExceededError, HypothesisNotMetError
from cesaro_ca.rule import apply_window_n, shift_compose

SMALL = ClassifyParams(max_len=3, horizon=6)


class TestCertify:
    def test_wall_is_blocking(self, wall):
        cert = certify_blocking(wall, "2", 0, 1)
        assert cert is not None
        assert cert.column == ("2",)
        assert (cert.preperiod, cert.period) == (0, 1)

    def test_word_left_of_wall(self, wall):
        cert = certify_blocking(wall, "12", 0, 2)
        assert cert.column == ("12",)

    def test_xor_is_not_certified(self):
        assert certify_with_ladder(xor_right(), "0", 0, 1) is None

    def test_negation_column(self):
        cert = certify_blocking(negation(), "0", 0, 1)
        assert cert.column == ("0", "1")
        assert (cert.preperiod, cert.period) == (0, 2)
        assert cert.expected_window(5) == "1"

    def test_constant_preperiod(self):
        cert = certify_blocking(constant(), "1", 0, 1)
        assert cert.column == ("1", "0")
        assert (cert.preperiod, cert.period) == (1, 1)
        assert cert.expected_window(7) == "0"

    def test_certificate_is_deterministic(self, wall):
        assert certify_blocking(wall, "2", 0, 1) == certify_blocking(wall, "2", 0, 1)

    def test_round_trip(self, wall):
        cert = certify_blocking(wall, "02", 0, 2)
        assert BlockingCertificate.from_dict(cert.to_dict()) == cert

    def test_strip_cap(self, wall):
        with pytest.raises(CapExceededError) as info:
            certify_blocking(wall, "2", 0, 1, strip_width=13)
        assert info.value.cap == "strip_width"

    def test_window_checks(self, wall):
        with pytest.raises(ValueError):
            certify_blocking(wall, "2", 0, 2)
        with pytest.raises(ValueError):
            certify_blocking(left_shift(), "01", 0, 0)


class TestFalsify:
    def test_wall_survives(self, wall):
        assert falsify_blocking(wall, "2", 0, 1, horizon=8) is None

    def test_xor_witness_replays(self):
        rule = xor_right()
        witness = falsify_blocking(rule, "0", 0, 1, horizon=4)
        assert witness is not None
        assert witness.windows[0] != witness.windows[1]
        assert witness.replay(rule) == witness.windows

    def test_left_shift_is_falsified(self):
        assert falsify_blocking(left_shift(), "010", 1, 1, horizon=3) is not None

    def test_sampling_is_seeded(self):
        rule = xor_right()
        caps = Caps(falsify_exhaustive=4, falsify_samples=64)
        a = falsify_blocking(rule, "0", 0, 1, horizon=6, seed=3, caps=caps)
        b = falsify_blocking(rule, "0", 0, 1, horizon=6, seed=3, caps=caps)
        assert a is not None
        assert a == b


class TestSchedules:
    def test_minimal_schedule_shortens(self):
        assert minimal_schedule(["a", "b", "a", "b"], 0, 4) == (("a", "b"), 0, 2)
        assert minimal_schedule(["x", "a", "a"], 1, 2) == (("x", "a"), 1, 1)

    def test_canonical_window(self):
        assert canonical_window(1, 1) == (0, 1)
        assert canonical_window(1, 2) == (0, 2)
        assert canonical_window(1, 3) == (1, 1)
        assert canonical_window(2, 1) is None


class TestSearch:
    def test_wall_words(self, wall):
        words = [c.word for c in search_blocking_words(wall, 2)]
        assert words == ["2", "02", "12", "22"]

    def test_certificates_replay(self, wall):
        for cert in search_blocking_words(wall, 2):
            for left in ("0", "1", "2"):
                for right in ("00", "10", "21"):
                    x = left * 8 + cert.word + right * 4
                    for n in range(1, 5):
                        image = apply_window_n(wall, x, n)
                        start = 8 + cert.offset - n
                        assert image[start : start + cert.width] == cert.expected_window(n)


class TestClassify:
    def test_negation_is_e1(self):
        verdict = classify_equicontinuity(negation(), SMALL)
        assert verdict.cls is EquicontinuityClass.E1
        assert (verdict.period, verdict.preperiod, verdict.e1_length) == (2, 0, 1)

    def test_identity_is_e1(self):
        verdict = classify_equicontinuity(identity(), SMALL)
        assert verdict.cls is EquicontinuityClass.E1
        assert verdict.period == 1

    def test_constant_preperiod(self):
        verdict = classify_equicontinuity(constant(), SMALL)
        assert verdict.cls is EquicontinuityClass.E1
        assert (verdict.period, verdict.preperiod) == (1, 1)

    def test_wall_is_e2(self, wall):
        verdict = classify_equicontinuity(wall, SMALL)
        assert verdict.cls is EquicontinuityClass.E2
        assert "2" in [c.word for c in verdict.certificates]

    def test_left_shift_has_no_blocking_word(self):
        verdict = classify_equicontinuity(left_shift(), SMALL)
        assert verdict.cls is EquicontinuityClass.NO_BLOCKING_WORD_FOUND
        assert verdict.exhaustion["falsified"] == verdict.exhaustion["tested"]

    def test_shift_composition_is_e1(self):
        verdict = classify_equicontinuity(shift_compose(left_shift(), 1), SMALL)
        assert verdict.cls is EquicontinuityClass.E1

    def test_to_dict(self):
        data = classify_equicontinuity(negation(), SMALL).to_dict()
        assert data["class"] == "E1"
        assert data["certificates"][0]["word"] == "0"


class TestCertifyBlock:
    def test_canonical_window(self, wall):
        cert = certify_block(wall, "12")
        assert (cert.offset, cert.width) == canonical_window(1, 2)

    def test_certificate_passes_through(self, wall):
        cert = certify_blocking(wall, "2", 0, 1)
        assert certify_block(wall, cert) is cert

    def test_rejects_non_blocking_word(self):
        with pytest.raises(HypothesisNotMetError, match="not a certified blocking word"):
            certify_block(xor_right(), "0")


class TestRunningLoop:
    def test_sync_entry_points_inside_a_loop(self, wall):
        async def search():
            words = [c.word for c in search_blocking_words(wall, 2)]
            verdict = classify_equicontinuity(negation(), SMALL)
            return words, verdict

        words, verdict = asyncio.run(search())
        assert words == ["2", "02", "12", "22"]
        assert verdict.cls is EquicontinuityClass.E1

    def test_async_matches_sync(self, wall):
        outcome = asyncio.run(search_blocking_words_async(wall, 2, concurrency=2))
        assert list(outcome.certificates) == search_blocking_words(wall, 2)
        assert outcome.tested == {1: 3, 2: 9}
        verdict = asyncio.run(classify_equicontinuity_async(constant(), SMALL))
        assert verdict == classify_equicontinuity(constant(), SMALL)

    def test_concurrency_must_be_positive(self, wall):
        with pytest.raises(ValueError, match="concurrency"):
            asyncio.run(search_blocking_words_async(wall, 1, concurrency=0))
