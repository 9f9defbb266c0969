import pytest

from cesaro_ca.symbolic import Alphabet, Cylinder, PeriodicConfig


class TestAlphabet:
    def test_symbols_are_sorted(self):
        assert Alphabet.of("210").symbols == ("0", "1", "2")
        assert Alphabet.of("210") == Alphabet.of(["0", "1", "2"])

    def test_rejects_bad_symbols(self):
        with pytest.raises(ValueError):
            Alphabet.of("")
        with pytest.raises(ValueError):
            Alphabet.of(["0", "10"])
        with pytest.raises(ValueError):
            Alphabet.of("00")

    def test_words_are_lexicographic(self):
        assert list(Alphabet.of("01").words(2)) == ["00", "01", "10", "11"]
        assert list(Alphabet.of("01").words(0)) == [""]

    def test_encode_decode(self):
        a = Alphabet.of("abc")
        assert a.encode("cab") == (2, 0, 1)
        assert a.decode((2, 0, 1)) == "cab"

    def test_check_word_names_position(self):
        with pytest.raises(ValueError, match="position 2"):
            Alphabet.of("01").check_word("012")


class TestPeriodicConfig:
    def test_indexing(self):
        x = PeriodicConfig("01")
        assert [x.at(i) for i in range(-2, 3)] == ["0", "1", "0", "1", "0"]
        assert x.window(1, 3) == "101"

    def test_contains_word_wraps(self):
        x = PeriodicConfig("01")
        assert x.contains_word("1010")
        assert not x.contains_word("11")

    def test_empty_generator(self):
        with pytest.raises(ValueError):
            PeriodicConfig("")


class TestCylinder:
    def test_recentred(self):
        assert Cylinder("abc").recentred().position == -1
        assert Cylinder("ab").recentred().position == 0

