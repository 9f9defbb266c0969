"""Text formats for rules, measures and shift spaces.

All three are line based, with `#` starting a comment:

    alphabet: 0 1 2          alphabet: 0 1 2          alphabet: 0 1
    radius: 1                bernoulli: 1/2 1/4 1/4   forbid: 11
    **2 -> ...               (or `markov:` followed
    ...                       by one row per line)

Rule lines are `u -> a` with `*` matching any symbol at that position; later
lines override earlier ones, an identical pattern given twice is an error, and
the finished table must be total.
"""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from pathlib import Path

from cesaro_ca.errors import EmptyLanguageError, ParseError
from cesaro_ca.measure import MarkovMeasure, bernoulli, markov
from cesaro_ca.rule import LocalRule
from cesaro_ca.shift_space import ShiftSpace, build_sft
from cesaro_ca.symbolic import Alphabet

logger = logging.getLogger(__name__)

WILDCARD = "*"


def _lines(text: str):
    """(line number, column of first character, content) for non-blank lines."""
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].rstrip()
        stripped = content.lstrip()
        if stripped:
            yield number, len(content) - len(stripped) + 1, stripped


def _header(line: str) -> tuple[str, str] | None:
    key, sep, value = line.partition(":")
    if not sep or " " in key.strip() or "->" in line:
        return None
    return key.strip().lower(), value.strip()


def _parse_alphabet(value: str, path: str, number: int, column: int) -> Alphabet:
    try:
        return Alphabet.of(value.split())
    except ValueError as exc:
        raise ParseError(str(exc), path=path, line=number, column=column) from None


def _fraction(token: str, path: str, number: int, column: int) -> Fraction:
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"'{token}' is not a rational p/q", path=path, line=number, column=column) from None
    if value < 0 or value > 1:
        raise ParseError(f"probability {token} is outside [0, 1]", path=path, line=number, column=column)
    return value


# ── Rules ──


def parse_rule_text(
    text: str, *, path: str = "<rule>", domain: ShiftSpace | None = None
) -> LocalRule:
    alphabet: Alphabet | None = None
    radius: int | None = None
    name = ""
    patterns: dict[str, tuple[str, int]] = {}
    order: list[tuple[str, str]] = []
    for number, column, line in _lines(text):
        header = _header(line)
        if header is not None:
            key, value = header
            if key == "alphabet":
                alphabet = _parse_alphabet(value, path, number, column)
            elif key == "radius":
                try:
                    radius = int(value)
                except ValueError:
                    raise ParseError(
                        f"radius must be an integer, got '{value}'", path=path, line=number, column=column
                    ) from None
                if radius < 0:
                    raise ParseError(f"radius must be >= 0, got {radius}", path=path, line=number, column=column)
            elif key == "name":
                name = value
            else:
                raise ParseError(f"unknown header '{key}'", path=path, line=number, column=column)
            continue

        if alphabet is None or radius is None:
            raise ParseError("rule entries must follow 'alphabet:' and 'radius:'", path=path, line=number, column=column)
        lhs, sep, rhs = line.partition("->")
        lhs, rhs = lhs.strip(), rhs.strip()
        if not sep:
            raise ParseError(f"expected 'u -> a', got '{line}'", path=path, line=number, column=column)
        if len(lhs) != 2 * radius + 1:
            raise ParseError(
                f"neighbourhood '{lhs}' must have length {2 * radius + 1}",
                path=path, line=number, column=column,
            )
        for i, s in enumerate(lhs):
            if s != WILDCARD and s not in alphabet:
                raise ParseError(f"symbol '{s}' is not in the alphabet", path=path, line=number, column=column + i)
        if len(rhs) != 1 or rhs not in alphabet:
            raise ParseError(
                f"output '{rhs}' is not a symbol of the alphabet",
                path=path, line=number, column=column + line.index("->") + 2,
            )
        if lhs in patterns:
            raise ParseError(
                f"duplicate entry for '{lhs}' (first given on line {patterns[lhs][1]})",
                path=path, line=number, column=column,
            )
        patterns[lhs] = (rhs, number)
        order.append((lhs, rhs))

    if alphabet is None or radius is None:
        raise ParseError("missing 'alphabet:' or 'radius:' header", path=path, line=1, column=1)

    table: dict[str, str] = {}
    for lhs, rhs in order:
        choices = [alphabet.symbols if s == WILDCARD else (s,) for s in lhs]
        for nbhd in itertools.product(*choices):
            table["".join(nbhd)] = rhs
    missing = [u for u in alphabet.words(2 * radius + 1) if u not in table]
    if missing:
        raise ParseError(
            f"rule is not total: {len(missing)} neighbourhoods undefined, first '{missing[0]}'",
            path=path, line=1, column=1,
        )
    codes = tuple(alphabet.index(table[u]) for u in alphabet.words(2 * radius + 1))
    rule = LocalRule(alphabet, radius, codes, domain=domain, name=name)
    logger.debug("parsed %s from %s", rule.describe(), path)
    return rule


def parse_rule(path: Path | str, *, domain: ShiftSpace | None = None) -> LocalRule:
    path = Path(path)
    return parse_rule_text(path.read_text(), path=str(path), domain=domain)


def emit_rule(rule: LocalRule) -> str:
    lines = [f"alphabet: {' '.join(rule.alphabet)}", f"radius: {rule.radius}"]
    if rule.name:
        lines.append(f"name: {rule.name}")
    for u in rule.alphabet.words(rule.width):
        lines.append(f"{u} -> {rule.output(u)}")
    return "\n".join(lines) + "\n"


# ── Measures ──


def parse_measure_text(text: str, *, path: str = "<measure>") -> MarkovMeasure:
    alphabet: Alphabet | None = None
    probabilities: list[Fraction] | None = None
    rows: list[list[Fraction]] | None = None
    last = (1, 1)
    for number, column, line in _lines(text):
        last = (number, column)
        header = _header(line)
        if header is not None:
            key, value = header
            if key == "alphabet":
                alphabet = _parse_alphabet(value, path, number, column)
            elif key == "bernoulli":
                probabilities = [
                    _fraction(tok, path, number, column + line.index(tok)) for tok in value.split()
                ]
            elif key == "markov":
                if value:
                    raise ParseError("matrix rows go on the lines after 'markov:'", path=path, line=number, column=column)
                rows = []
            else:
                raise ParseError(f"unknown header '{key}'", path=path, line=number, column=column)
            continue
        if rows is None:
            raise ParseError(f"unexpected line '{line}'", path=path, line=number, column=column)
        rows.append([_fraction(tok, path, number, column + line.index(tok)) for tok in line.split()])

    number, column = last
    if (probabilities is None) == (rows is None):
        raise ParseError("expected exactly one of 'bernoulli:' or 'markov:'", path=path, line=number, column=column)
    size = len(probabilities) if probabilities is not None else len(rows)
    if alphabet is None:
        alphabet = Alphabet.of(str(i) for i in range(size))
    try:
        if probabilities is not None:
            return bernoulli(alphabet, probabilities)
        return markov(alphabet, rows)
    except ValueError as exc:
        raise ParseError(str(exc), path=path, line=number, column=column) from None


def parse_measure(path: Path | str) -> MarkovMeasure:
    path = Path(path)
    return parse_measure_text(path.read_text(), path=str(path))


def emit_measure(measure: MarkovMeasure) -> str:
    return measure.to_text()


# ── Shift spaces ──


def parse_space_text(text: str, *, path: str = "<space>") -> ShiftSpace:
    alphabet: Alphabet | None = None
    forbidden: list[str] = []
    for number, column, line in _lines(text):
        header = _header(line)
        if header is None:
            raise ParseError(f"expected 'alphabet:' or 'forbid:', got '{line}'", path=path, line=number, column=column)
        key, value = header
        if key == "alphabet":
            alphabet = _parse_alphabet(value, path, number, column)
        elif key == "forbid":
            if alphabet is None:
                raise ParseError("'forbid:' before 'alphabet:'", path=path, line=number, column=column)
            if not value or not alphabet.is_word(value):
                raise ParseError(f"forbidden word '{value}' is not a word over the alphabet", path=path, line=number, column=column)
            forbidden.append(value)
        else:
            raise ParseError(f"unknown header '{key}'", path=path, line=number, column=column)
    if alphabet is None:
        raise ParseError("missing 'alphabet:' header", path=path, line=1, column=1)
    try:
        return build_sft(alphabet, forbidden)
    except EmptyLanguageError as exc:
        raise ParseError(str(exc), path=path, line=1, column=1) from exc


def parse_space(path: Path | str) -> ShiftSpace:
    path = Path(path)
    return parse_space_text(path.read_text(), path=str(path))


def emit_space(space: ShiftSpace) -> str:
    lines = [f"alphabet: {' '.join(space.alphabet)}"]
    lines.extend(f"forbid: {e}" for e in space.forbidden)
    return "\n".join(lines) + "\n"
