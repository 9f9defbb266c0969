"""Surjectivity of a cellular automaton on its domain.

On the full shift the test is exact: a rule is onto iff no word is a
Garden-of-Eden word, and then every word has exactly |A|^{2r} preimages. The
search runs breadth first over subsets of de Bruijn vertices (words of length
2r), starting from the full set; reaching the empty subset yields the shortest
word without preimage. Other domains get a numerical verdict: F is onto X iff
the Parry measure of X is F-invariant.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass

from cesaro_ca.caps import DEFAULT_CAPS, Caps
from cesaro_ca.parry import parry_measure
from cesaro_ca.preimage import effective_table, preimage_step, word_automaton
from cesaro_ca.rule import LocalRule, apply_window
from cesaro_ca.symbolic import Word

logger = logging.getLogger(__name__)

PARRY_TOL = 1e-8
PARRY_MAX_LENGTH = 4


@dataclass(frozen=True)
class SurjectivityVerdict:
    surjective: bool
    method: str
    witness: Word | None = None
    preimages_per_word: int | None = None
    max_deviation: float | None = None
    checked_length: int | None = None

    @property
    def numerical(self) -> bool:
        return self.method == "parry-numerical"

    def to_dict(self) -> dict:
        return {
            "surjective": self.surjective,
            "method": self.method,
            "witness": self.witness,
            "preimages_per_word": self.preimages_per_word,
            "max_deviation": self.max_deviation,
            "checked_length": self.checked_length,
        }


def _de_bruijn_moves(rule: LocalRule) -> list[list[int]]:
    """moves[v][b]: bitmask of vertices reachable from v while emitting symbol b."""
    q = rule.alphabet.size
    span = 2 * rule.radius
    n_vertices = q**span
    moves = [[0] * q for _ in range(n_vertices)]
    for v in range(n_vertices):
        for a in range(q):
            code = v * q + a
            target = code % n_vertices
            moves[v][rule.table[code]] |= 1 << target
    return moves


def _garden_of_eden(rule: LocalRule, caps: Caps) -> Word | None:
    q = rule.alphabet.size
    moves = _de_bruijn_moves(rule)
    n_vertices = len(moves)
    full = (1 << n_vertices) - 1
    parent: dict[int, tuple[int, int] | None] = {full: None}
    queue = deque([full])
    while queue:
        subset = queue.popleft()
        for b in range(q):
            image = 0
            bits = subset
            while bits:
                low = bits & -bits
                image |= moves[low.bit_length() - 1][b]
                bits ^= low
            if image in parent:
                continue
            parent[image] = (subset, b)
            if image == 0:
                path = []
                node = image
                while parent[node] is not None:
                    prev, sym = parent[node]
                    path.append(sym)
                    node = prev
                return rule.alphabet.decode(reversed(path))
            caps.check("subset_states", len(parent))
            queue.append(image)
    logger.debug("subset construction closed with %d subsets and no empty set", len(parent))
    return None


def count_preimages(rule: LocalRule, u: Word, *, caps: Caps = DEFAULT_CAPS) -> int:
    """Number of admissible words w with |w| = |u| + 2r and f(w) = u."""
    rule.alphabet.check_word(u)
    if not rule.domain.is_full:
        return sum(
            1
            for w in rule.domain.language_words(len(u) + 2 * rule.radius)
            if apply_window(rule, w) == u
        )
    # The preimage automaton spans only the rule's support; cells outside it are free.
    (lo, hi), table = effective_table(rule)
    q = rule.alphabet.size
    aut = preimage_step(word_automaton(rule.alphabet.encode(u), q), hi - lo, table, caps=caps)
    return aut.count() * q ** (2 * rule.radius - (hi - lo))


def _parry_verdict(rule: LocalRule, max_length: int) -> SurjectivityVerdict:
    space = rule.domain
    parry = parry_measure(space)
    worst = 0.0
    worst_word: Word | None = None
    for length in range(1, max_length + 1):
        pulled: dict[Word, float] = {}
        for w in space.language_words(length + 2 * rule.radius):
            image = apply_window(rule, w)
            pulled[image] = pulled.get(image, 0.0) + parry.cylinder_prob(w)
        for u in space.language_words(length):
            deviation = abs(pulled.get(u, 0.0) - parry.cylinder_prob(u))
            if deviation > worst:
                worst, worst_word = deviation, u
    surjective = worst <= PARRY_TOL
    logger.warning(
        "surjectivity of %s on %s is a numerical verdict (max deviation %.3g)",
        rule.describe(),
        space.describe(),
        worst,
    )
    return SurjectivityVerdict(
        surjective=surjective,
        method="parry-numerical",
        witness=None if surjective else worst_word,
        max_deviation=worst,
        checked_length=max_length,
    )


def is_surjective(
    rule: LocalRule, *, max_length: int = PARRY_MAX_LENGTH, caps: Caps = DEFAULT_CAPS
) -> SurjectivityVerdict:
    if not rule.domain.is_full:
        return _parry_verdict(rule, max_length)
    caps.check("subset_states", rule.alphabet.size ** (2 * rule.radius))
    witness = _garden_of_eden(rule, caps)
    if witness is not None:
        logger.info("%s is not surjective: %r has no preimage", rule.describe(), witness)
        return SurjectivityVerdict(surjective=False, method="balance", witness=witness)
    per_word = rule.alphabet.size ** (2 * rule.radius)
    logger.info("%s is surjective (%d preimages per word)", rule.describe(), per_word)
    return SurjectivityVerdict(surjective=True, method="balance", preimages_per_word=per_word)
