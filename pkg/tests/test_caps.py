import pytest

from cesaro_ca.caps import ENV_VAR, Caps
from cesaro_ca.errors import CapExceededError


class TestCaps:
    def test_parse_overrides(self):
        caps = Caps.parse("strip_width=8, rkm_length=9")
        assert caps.strip_width == 8
        assert caps.rkm_length == 9
        assert caps.orbit_steps == Caps().orbit_steps

    def test_from_env(self, monkeypatch):
        monkeypatch.setenv(ENV_VAR, "falsify_samples=16")
        assert Caps.from_env().falsify_samples == 16
        monkeypatch.delenv(ENV_VAR)
        assert Caps.from_env() == Caps()

    @pytest.mark.parametrize("text", ["bogus=1", "strip_width", "strip_width=x"])
    def test_bad_settings(self, text):
        with pytest.raises(ValueError):
            Caps.parse(text)

    def test_non_positive(self):
        with pytest.raises(ValueError, match="positive"):
            Caps(strip_width=0)

    def test_check(self):
        caps = Caps(rkm_length=5)
        caps.check("rkm_length", 5)
        with pytest.raises(CapExceededError) as info:
            caps.check("rkm_length", 7)
        assert (info.value.cap, info.value.requested, info.value.limit) == ("rkm_length", 7, 5)
        assert ENV_VAR in str(info.value)

    def test_to_dict(self):
        assert Caps().to_dict()["strip_width"] == 12
