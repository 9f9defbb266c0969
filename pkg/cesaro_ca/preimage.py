"""Layered automata for the preimage sets F^{-n}[u].

F^{-n}[u] is a finite set of words of length |u| + n·s, where s = hi - lo is
the width of the rule's effective neighbourhood. It is held as a layered
deterministic automaton (layer j = states after reading j symbols) that is
minimised after every step, so its width stays small even when the number of
preimage words is astronomically large. Measures of the set are forward sums
over the layers.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction

from cesaro_ca.caps import DEFAULT_CAPS, Caps
from cesaro_ca.measure import MarkovMeasure
from cesaro_ca.rule import LocalRule
from cesaro_ca.symbolic import Word

logger = logging.getLogger(__name__)

DEAD = -1

Layer = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class PreimageAutomaton:
    """`layers[j][state][symbol]` is the next state in layer j+1, or DEAD.

    Layer `length` holds the single accepting state. An automaton with no
    layer-0 state accepts nothing.
    """

    alphabet_size: int
    length: int
    layers: tuple[Layer, ...]

    @property
    def is_empty(self) -> bool:
        return self.length > 0 and not self.layers[0]

    @property
    def width(self) -> int:
        return max((len(layer) for layer in self.layers), default=1)

    def count(self) -> int:
        if self.is_empty:
            return 0
        weights = [1]
        for layer in self.layers:
            nxt = [0] * _next_width(layer)
            for state, w in enumerate(weights):
                for target in layer[state]:
                    if target != DEAD:
                        nxt[target] += w
            weights = nxt
        return sum(weights)

    def measure(self, mu: MarkovMeasure) -> Fraction:
        """μ of the set of accepted words, as a forward sum over the layers."""
        if self.is_empty:
            return Fraction(0)
        if self.length == 0:
            return Fraction(1)
        if mu.is_bernoulli:
            return self._bernoulli_measure(mu)
        return self._markov_measure(mu)

    def _bernoulli_measure(self, mu: MarkovMeasure) -> Fraction:
        probs = mu.initial
        weights = [Fraction(1)]
        for layer in self.layers:
            nxt = [Fraction(0)] * _next_width(layer)
            for state, w in enumerate(weights):
                if not w:
                    continue
                for a, target in enumerate(layer[state]):
                    if target != DEAD and probs[a]:
                        nxt[target] += w * probs[a]
            weights = nxt
        return sum(weights, Fraction(0))

    def _markov_measure(self, mu: MarkovMeasure) -> Fraction:
        weights: dict[tuple[int, int], Fraction] = {}
        for a, target in enumerate(self.layers[0][0]):
            if target != DEAD and mu.initial[a]:
                weights[(target, a)] = weights.get((target, a), Fraction(0)) + mu.initial[a]
        for layer in self.layers[1:]:
            nxt: dict[tuple[int, int], Fraction] = {}
            for (state, prev), w in weights.items():
                for a, target in enumerate(layer[state]):
                    if target == DEAD:
                        continue
                    p = mu.transition(prev, a)
                    if p:
                        key = (target, a)
                        nxt[key] = nxt.get(key, Fraction(0)) + w * p
            weights = nxt
        return sum(weights.values(), Fraction(0))


def _next_width(layer: Layer) -> int:
    return 1 + max((t for row in layer for t in row), default=-1)


def word_automaton(codes: tuple[int, ...], alphabet_size: int) -> PreimageAutomaton:
    layers = tuple(
        ((tuple(0 if a == c else DEAD for a in range(alphabet_size))),) for c in codes
    )
    return PreimageAutomaton(alphabet_size, len(codes), layers)


def minimise(alphabet_size: int, layers: list[list[tuple[int, ...]]]) -> PreimageAutomaton:
    """Merge future-equivalent states, last layer first, and drop dead ones."""
    length = len(layers)
    classes = [0] * (1 + max((t for row in layers[-1] for t in row), default=-1)) if layers else [0]
    new_layers: list[Layer] = []
    for layer in reversed(layers):
        signatures: dict[tuple[int, ...], int] = {}
        next_classes = []
        for row in layer:
            sig = tuple(classes[t] if t != DEAD else DEAD for t in row)
            if all(t == DEAD for t in sig):
                next_classes.append(DEAD)
            else:
                next_classes.append(signatures.setdefault(sig, len(signatures)))
        new_layers.append(tuple(signatures))
        classes = next_classes
    new_layers.reverse()
    if layers and classes[0] == DEAD:
        return PreimageAutomaton(alphabet_size, length, tuple(() for _ in range(length)))
    if layers and classes[0] != 0:
        raise ArithmeticError("initial state did not receive class 0")
    return PreimageAutomaton(alphabet_size, length, tuple(new_layers))


def effective_table(rule: LocalRule) -> tuple[tuple[int, int], tuple[int, ...]]:
    """The rule restricted to its support [lo, hi], as a table over s+1 symbols."""
    lo, hi = rule.support()
    q = rule.alphabet.size
    r = rule.radius
    table = []
    for code in range(q ** (hi - lo + 1)):
        digits = [0] * rule.width
        c = code
        for j in range(hi, lo - 1, -1):
            digits[j + r] = c % q
            c //= q
        table.append(rule.table[rule.code(digits)])
    return (lo, hi), tuple(table)


def preimage_step(
    aut: PreimageAutomaton,
    span: int,
    table: tuple[int, ...],
    *,
    caps: Caps = DEFAULT_CAPS,
) -> PreimageAutomaton:
    """Automaton for {x : g(x) accepted by `aut`}, g the effective rule of width span+1."""
    q = aut.alphabet_size
    length = aut.length + span
    if aut.is_empty:
        return PreimageAutomaton(q, length, tuple(() for _ in range(length)))
    top = q**span
    index: dict[tuple[int, int], int] = {(0, 0): 0}
    layers: list[list[tuple[int, ...]]] = []
    for t in range(length):
        next_index: dict[tuple[int, int], int] = {}
        rows: list[tuple[int, ...]] = []
        for buf, state in index:
            row = []
            for a in range(q):
                window = buf * q + a
                if t < span:
                    key = (window, 0)
                else:
                    target = aut.layers[t - span][state][table[window]]
                    if target == DEAD:
                        row.append(DEAD)
                        continue
                    key = (window % top, target)
                if t == length - 1:
                    key = (0, 0)
                row.append(next_index.setdefault(key, len(next_index)))
            rows.append(tuple(row))
        layers.append(rows)
        caps.check("automaton_width", len(next_index))
        index = next_index
    return minimise(q, layers)


def preimage_automata(
    rule: LocalRule, u: Word, count: int, *, caps: Caps = DEFAULT_CAPS
) -> Iterator[PreimageAutomaton]:
    """Yield the minimised automata of F^{-n}[u] for n = 0, 1, ..., count - 1."""
    (lo, hi), table = effective_table(rule)
    span = hi - lo
    aut = word_automaton(rule.alphabet.encode(u), rule.alphabet.size)
    for n in range(count):
        if n:
            aut = preimage_step(aut, span, table, caps=caps)
            logger.debug("F^-%d[%s]: %d layers, width %d", n, u, aut.length, aut.width)
        yield aut
