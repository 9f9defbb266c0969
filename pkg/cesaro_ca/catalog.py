"""Named local rules used by the demo, the experiments and the tests."""

from __future__ import annotations

from cesaro_ca.rule import LocalRule
from cesaro_ca.symbolic import Alphabet

BINARY = Alphabet.of("01")
TERNARY = Alphabet.of("012")


def identity(alphabet: Alphabet = BINARY, radius: int = 0) -> LocalRule:
    return LocalRule.from_function(
        alphabet, radius, lambda *nbhd: nbhd[radius], name="identity"
    )


def negation() -> LocalRule:
    return LocalRule.from_function(
        BINARY, 0, lambda b: "1" if b == "0" else "0", name="negation"
    )


def xor_right() -> LocalRule:
    return LocalRule.from_function(
        BINARY, 1, lambda a, b, c: str((int(b) + int(c)) % 2), name="xor-right"
    )


def left_shift(alphabet: Alphabet = BINARY) -> LocalRule:
    """σ itself: F(x)_i = x_{i+1}."""
    return LocalRule.from_function(alphabet, 1, lambda a, b, c: c, name="left-shift")


def constant(alphabet: Alphabet = BINARY, symbol: str = "0", radius: int = 0) -> LocalRule:
    alphabet.check_word(symbol)
    return LocalRule.from_function(
        alphabet, radius, lambda *nbhd: symbol, name=f"constant-{symbol}"
    )


def min_right() -> LocalRule:
    return LocalRule.from_function(BINARY, 1, lambda a, b, c: min(b, c), name="min-right")


def elementary(number: int) -> LocalRule:
    """Wolfram-numbered radius-1 rule over {0,1}."""
    if not 0 <= number < 256:
        raise ValueError(f"elementary rule number must be in [0, 255], got {number}")

    def f(a: str, b: str, c: str) -> str:
        return str((number >> (4 * int(a) + 2 * int(b) + int(c))) & 1)

    return LocalRule.from_function(BINARY, 1, f, name=f"elementary-{number}")


def wall_xor() -> LocalRule:
    """Ternary rule where 2 is a wall and 0/1 cells add their right neighbour mod 2.

    f(x_{-1}, x_0, 2) = x_0, f(x_{-1}, 2, x_1) = 2, otherwise x_0 + x_1 mod 2.
    """

    def f(a: str, b: str, c: str) -> str:
        if c == "2":
            return b
        if b == "2":
            return "2"
        return str((int(b) + int(c)) % 2)

    return LocalRule.from_function(TERNARY, 1, f, name="wall-xor")


CATALOG = {
    "identity": identity,
    "negation": negation,
    "xor-right": xor_right,
    "left-shift": left_shift,
    "constant-0": constant,
    "min-right": min_right,
    "wall-xor": wall_xor,
}


def by_name(name: str) -> LocalRule:
    """Look a rule up by catalog name; `elementary-<n>` is also accepted."""
    if name.startswith("elementary-"):
        return elementary(int(name.removeprefix("elementary-")))
    try:
        return CATALOG[name]()
    except KeyError:
        known = ", ".join(sorted(CATALOG))
        raise ValueError(f"unknown rule '{name}'; known rules: {known}, elementary-<n>") from None
