"""Brute-force references: enumerate every candidate word with numpy."""

from fractions import Fraction

import numpy as np

from cesaro_ca.measure import MarkovMeasure
from cesaro_ca.rule import LocalRule, all_words_array
from cesaro_ca.symbolic import Alphabet


def preimage_rows(rule: LocalRule, u: str, n: int) -> np.ndarray:
    """All words w of length |u| + 2rn with F^n(w) = u."""
    q = rule.alphabet.size
    rows = all_words_array(q, len(u) + 2 * rule.radius * n)
    image = rows
    for _ in range(n):
        image = rule.apply_batch(image)
    target = np.asarray(rule.alphabet.encode(u))
    return rows[(image == target).all(axis=1)]


def rows_measure(measure: MarkovMeasure, rows: np.ndarray) -> Fraction:
    if len(rows) == 0:
        return Fraction(0)
    if measure.is_bernoulli:
        q = measure.alphabet.size
        counts = np.stack([(rows == a).sum(axis=1) for a in range(q)], axis=1)
        patterns, multiplicity = np.unique(counts, axis=0, return_counts=True)
        total = Fraction(0)
        for pattern, mult in zip(patterns, multiplicity):
            prob = Fraction(1)
            for a, c in enumerate(pattern):
                prob *= measure.initial[a] ** int(c)
            total += int(mult) * prob
        return total
    return sum(
        (measure.cylinder_prob(measure.alphabet.decode(row)) for row in rows), Fraction(0)
    )


def brute_pushforward(rule: LocalRule, measure: MarkovMeasure, u: str, n: int) -> Fraction:
    return rows_measure(measure, preimage_rows(rule, u, n))


def brute_count_preimages(rule: LocalRule, u: str) -> int:
    return len(preimage_rows(rule, u, 1))


def brute_preimage_counts(rule: LocalRule, length: int) -> dict[str, int]:
    """Preimage count of every word of `length` that has one."""
    rows = all_words_array(rule.alphabet.size, length + 2 * rule.radius)
    images, counts = np.unique(rule.apply_batch(rows), axis=0, return_counts=True)
    return {rule.alphabet.decode(row): int(c) for row, c in zip(images, counts)}


def brute_language(alphabet: Alphabet, forbidden: list[str], n: int) -> set[str]:
    """Words of length n sitting in the middle of a long word avoiding `forbidden`.

    Each side holds more memory windows than there are memory states, so a
    padded occurrence always runs through a cycle and extends to both sides.
    """
    q = alphabet.size
    memory = max(len(e) for e in forbidden) - 1
    pad = q**memory + memory + 1
    rows = all_words_array(q, n + 2 * pad, dtype=np.uint8)
    ok = np.ones(len(rows), dtype=bool)
    for e in forbidden:
        codes = np.asarray(alphabet.encode(e))
        for j in range(rows.shape[1] - len(e) + 1):
            ok &= ~(rows[:, j : j + len(e)] == codes).all(axis=1)
    return {alphabet.decode(row[pad : pad + n]) for row in rows[ok]}
