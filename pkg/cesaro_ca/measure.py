"""Exact-rational shift-invariant measures: Bernoulli and stationary Markov."""

from __future__ import annotations

import enum
import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from cesaro_ca.symbolic import Alphabet, Word

logger = logging.getLogger(__name__)


class MeasureKind(enum.Enum):
    BERNOULLI = "bernoulli"
    MARKOV = "markov"


def _as_fraction(value: Fraction | int | str) -> Fraction:
    f = Fraction(value)
    if f < 0 or f > 1:
        raise ValueError(f"probability {f} is outside [0, 1]")
    return f


def _stationary(matrix: Sequence[Sequence[Fraction]]) -> tuple[Fraction, ...]:
    """Unique π with πP = π and Σπ = 1, by Gaussian elimination over Q."""
    n = len(matrix)
    # Rows of (P^T - I), last row replaced by the normalisation constraint.
    system = [
        [matrix[j][i] - (1 if i == j else 0) for j in range(n)] + [Fraction(0)]
        for i in range(n)
    ]
    system[-1] = [Fraction(1)] * n + [Fraction(1)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if system[r][col] != 0), None)
        if pivot is None:
            raise ValueError("transition matrix has no unique stationary vector")
        system[col], system[pivot] = system[pivot], system[col]
        lead = system[col][col]
        system[col] = [v / lead for v in system[col]]
        for r in range(n):
            if r != col and system[r][col] != 0:
                factor = system[r][col]
                system[r] = [a - factor * b for a, b in zip(system[r], system[col])]
    return tuple(system[i][n] for i in range(n))


@dataclass(frozen=True)
class MarkovMeasure:
    """μ([u]) = initial[u_1] · Π matrix[u_i][u_{i+1}]; Bernoulli measures have no matrix."""

    alphabet: Alphabet
    kind: MeasureKind
    initial: tuple[Fraction, ...]
    matrix: tuple[tuple[Fraction, ...], ...] | None = None

    def __post_init__(self) -> None:
        q = self.alphabet.size
        if len(self.initial) != q:
            raise ValueError(f"expected {q} probabilities, got {len(self.initial)}")
        if sum(self.initial) != 1:
            raise ValueError(f"probabilities sum to {sum(self.initial)}, not 1")
        if self.kind is MeasureKind.MARKOV:
            if self.matrix is None or len(self.matrix) != q or any(len(row) != q for row in self.matrix):
                raise ValueError(f"markov measure needs a {q}x{q} matrix")
            for i, row in enumerate(self.matrix):
                if sum(row) != 1:
                    raise ValueError(f"row {i} of the transition matrix sums to {sum(row)}, not 1")
            for j in range(q):
                flow = sum(self.initial[i] * self.matrix[i][j] for i in range(q))
                if flow != self.initial[j]:
                    raise ValueError("initial vector is not stationary for the matrix")
        elif self.matrix is not None:
            raise ValueError("bernoulli measures take no transition matrix")

    @property
    def is_bernoulli(self) -> bool:
        return self.kind is MeasureKind.BERNOULLI

    def transition(self, a: int, b: int) -> Fraction:
        if self.matrix is None:
            return self.initial[b]
        return self.matrix[a][b]

    def cylinder_prob(self, u: Word) -> Fraction:
        if not u:
            return Fraction(1)
        codes = self.alphabet.encode(u)
        prob = self.initial[codes[0]]
        for a, b in zip(codes, codes[1:]):
            if not prob:
                break
            prob *= self.transition(a, b)
        return prob

    def has_full_support(self) -> bool:
        if any(p == 0 for p in self.initial):
            return False
        return self.matrix is None or all(p > 0 for row in self.matrix for p in row)

    def to_text(self) -> str:
        if self.matrix is None:
            return "alphabet: " + " ".join(self.alphabet) + "\nbernoulli: " + " ".join(
                str(p) for p in self.initial
            ) + "\n"
        rows = "\n".join(" ".join(str(p) for p in row) for row in self.matrix)
        return "alphabet: " + " ".join(self.alphabet) + "\nmarkov:\n" + rows + "\n"

    def describe(self) -> str:
        if self.matrix is None:
            return f"Bernoulli({', '.join(str(p) for p in self.initial)})"
        return f"Markov(π=({', '.join(str(p) for p in self.initial)}))"


def bernoulli(
    alphabet: Alphabet, probabilities: Sequence[Fraction | int | str] | Mapping[str, Fraction | int | str]
) -> MarkovMeasure:
    if isinstance(probabilities, Mapping):
        probabilities = [probabilities.get(a, 0) for a in alphabet]
    return MarkovMeasure(alphabet, MeasureKind.BERNOULLI, tuple(_as_fraction(p) for p in probabilities))


def uniform(alphabet: Alphabet) -> MarkovMeasure:
    return bernoulli(alphabet, [Fraction(1, alphabet.size)] * alphabet.size)


def markov(alphabet: Alphabet, matrix: Sequence[Sequence[Fraction | int | str]]) -> MarkovMeasure:
    """Stationary Markov measure of an irreducible stochastic matrix.

    Irreducibility makes the stationary vector unique and the measure σ-ergodic.
    """
    rows = tuple(tuple(_as_fraction(p) for p in row) for row in matrix)
    q = alphabet.size
    if len(rows) != q or any(len(row) != q for row in rows):
        raise ValueError(f"markov measure needs a {q}x{q} matrix")
    graph = nx.DiGraph()
    graph.add_nodes_from(range(q))
    graph.add_edges_from((i, j) for i in range(q) for j in range(q) if rows[i][j] > 0)
    if not nx.is_strongly_connected(graph):
        raise ValueError("transition matrix is not irreducible, so the measure is not σ-ergodic")
    pi = _stationary(rows)
    logger.debug("stationary vector %s", pi)
    return MarkovMeasure(alphabet, MeasureKind.MARKOV, pi, rows)


def cylinder_prob(measure: MarkovMeasure, u: Word) -> Fraction:
    return measure.cylinder_prob(u)
