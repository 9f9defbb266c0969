"""Shift spaces presented by labeled graphs.

A presentation is a :class:`networkx.MultiDiGraph` whose edges carry a
``label`` attribute. Every presentation held by a :class:`ShiftSpace` is
essential: each vertex lies on a bi-infinite path. SFTs are always recoded as
1-step vertex shifts on memory words of length M = max(|e|) - 1, so all
downstream code sees the same edge-labeled interface.
"""

from __future__ import annotations

import enum
import logging
from collections import deque
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from cesaro_ca.caps import DEFAULT_CAPS, Caps
from cesaro_ca.errors import EmptyLanguageError
from cesaro_ca.symbolic import Alphabet, Word

logger = logging.getLogger(__name__)


class ShiftKind(enum.Enum):
    FULL = "full"
    SFT = "sft"
    SOFIC = "sofic"


@dataclass(frozen=True, eq=False)
class ShiftSpace:
    alphabet: Alphabet
    kind: ShiftKind
    graph: nx.MultiDiGraph = field(repr=False)
    forbidden: tuple[Word, ...] = ()
    memory: int = 0
    vertices: tuple[Hashable, ...] = field(init=False)
    _succ: dict = field(init=False, repr=False)
    _language: dict[int, tuple[Word, ...]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        order = tuple(sorted(self.graph.nodes))
        succ: dict[Hashable, dict[str, frozenset]] = {q: {} for q in order}
        for p, q, a in self.graph.edges(data="label"):
            succ[p][a] = succ[p].get(a, frozenset()) | {q}
        object.__setattr__(self, "vertices", order)
        object.__setattr__(self, "_succ", succ)
        object.__setattr__(self, "_language", {})

    @property
    def is_full(self) -> bool:
        return self.kind is ShiftKind.FULL

    def edges(self) -> list[tuple[Hashable, Hashable, str]]:
        return sorted(self.graph.edges(data="label"), key=lambda e: (e[0], e[2], e[1]))

    def successors(self, q: Hashable, a: str) -> frozenset:
        return self._succ[q].get(a, frozenset())

    def follow(self, sources: Iterable[Hashable], u: Word) -> frozenset:
        """Vertices reached from `sources` along paths labeled `u`."""
        current = frozenset(sources)
        for a in u:
            if not current:
                break
            current = frozenset(t for q in current for t in self.successors(q, a))
        return current

    def contains(self, u: Word) -> bool:
        if not self.alphabet.is_word(u):
            return False
        return bool(self.follow(self.vertices, u))

    def contains_periodic(self, generator: Word) -> bool:
        """True iff the σ-periodic point on `generator` lies in the space."""
        if not generator or not self.alphabet.is_word(generator):
            return False
        if self.is_full:
            return True
        for q in self.vertices:
            reached = frozenset([q])
            for _ in range(len(self.vertices)):
                reached = self.follow(reached, generator)
                if not reached:
                    break
                if q in reached:
                    return True
        return False

    def language_words(self, length: int) -> tuple[Word, ...]:
        if length < 0:
            raise ValueError(f"length must be >= 0, got {length}")
        if length in self._language:
            return self._language[length]
        if self.is_full:
            words = tuple(self.alphabet.words(length))
        else:
            frontier: dict[Word, frozenset] = {"": frozenset(self.vertices)}
            for _ in range(length):
                nxt: dict[Word, frozenset] = {}
                for u, states in frontier.items():
                    for a in self.alphabet:
                        targets = frozenset(t for q in states for t in self.successors(q, a))
                        if targets:
                            nxt[u + a] = targets
                frontier = nxt
            words = tuple(sorted(frontier))
        self._language[length] = words
        return words

    def transition_matrices(self) -> dict[str, np.ndarray]:
        """Edge-count matrix per label, rows/columns in `vertices` order."""
        position = {q: i for i, q in enumerate(self.vertices)}
        n = len(self.vertices)
        mats = {a: np.zeros((n, n)) for a in self.alphabet}
        for p, q, a in self.graph.edges(data="label"):
            mats[a][position[p], position[q]] += 1.0
        return mats

    def adjacency_matrix(self) -> np.ndarray:
        return sum(self.transition_matrices().values())

    def describe(self) -> str:
        extra = f", forbid={list(self.forbidden)}" if self.forbidden else ""
        return (
            f"{self.kind.value} shift over {{{', '.join(self.alphabet)}}}: "
            f"{self.graph.number_of_nodes()} vertices, {self.graph.number_of_edges()} edges{extra}"
        )


def make_essential(graph: nx.MultiDiGraph) -> None:
    """Remove, in place, the vertices that do not lie on bi-infinite paths."""
    nonextensible = [q for q in graph if graph.out_degree(q) == 0]
    while nonextensible:
        frontier = {p for (p, _) in graph.in_edges(nonextensible)}
        graph.remove_nodes_from(nonextensible)
        nonextensible = [q for q in frontier if q in graph and graph.out_degree(q) == 0]

    noncoextensible = [q for q in graph if graph.in_degree(q) == 0]
    while noncoextensible:
        frontier = {q for (_, q) in graph.out_edges(noncoextensible)}
        graph.remove_nodes_from(noncoextensible)
        noncoextensible = [q for q in frontier if q in graph and graph.in_degree(q) == 0]


def full_shift(alphabet: Alphabet) -> ShiftSpace:
    g = nx.MultiDiGraph()
    g.add_node("")
    for a in alphabet:
        g.add_edge("", "", label=a)
    return ShiftSpace(alphabet, ShiftKind.FULL, g)


def build_sft(alphabet: Alphabet, forbidden: Sequence[Word]) -> ShiftSpace:
    """Trimmed vertex-shift presentation of the SFT avoiding `forbidden`."""
    for e in forbidden:
        if not e:
            raise ValueError("forbidden words must be nonempty")
        alphabet.check_word(e)
    if not forbidden:
        return full_shift(alphabet)
    forbidden = tuple(dict.fromkeys(forbidden))
    memory = max(len(e) for e in forbidden) - 1

    def avoids(u: Word) -> bool:
        return not any(e in u for e in forbidden)

    g = nx.MultiDiGraph()
    for w in alphabet.words(memory):
        if not avoids(w):
            continue
        g.add_node(w)
        for a in alphabet:
            extended = w + a
            if avoids(extended):
                g.add_edge(w, extended[1:], label=a)
    make_essential(g)
    if g.number_of_nodes() == 0:
        raise EmptyLanguageError(
            f"forbidding {list(forbidden)} over {{{', '.join(alphabet)}}} leaves an empty language"
        )
    space = ShiftSpace(alphabet, ShiftKind.SFT, g, forbidden=forbidden, memory=memory)
    logger.debug("built %s", space.describe())
    return space


def sofic_from_graph(
    alphabet: Alphabet, graph: nx.MultiDiGraph, *, caps: Caps = DEFAULT_CAPS
) -> ShiftSpace:
    """Determinize (subset construction) and trim a labeled graph.

    Vertices of the result are integers numbered in breadth-first discovery
    order, symbols taken in canonical order, so the output is deterministic.
    """
    g = graph.copy()
    make_essential(g)
    if g.number_of_nodes() == 0:
        raise EmptyLanguageError("presentation has no bi-infinite path")

    succ: dict[Hashable, dict[str, set]] = {q: {} for q in g}
    for p, q, a in g.edges(data="label"):
        succ[p].setdefault(a, set()).add(q)

    start = frozenset(g.nodes)
    number = {start: 0}
    queue = deque([start])
    det = nx.MultiDiGraph()
    det.add_node(0)
    while queue:
        subset = queue.popleft()
        for a in alphabet:
            target = frozenset(t for q in subset for t in succ[q].get(a, ()))
            if not target:
                continue
            if target not in number:
                number[target] = len(number)
                caps.check("subset_states", len(number))
                queue.append(target)
                det.add_node(number[target])
            det.add_edge(number[subset], number[target], label=a)
    make_essential(det)
    if det.number_of_nodes() == 0:
        raise EmptyLanguageError("determinized presentation has no bi-infinite path")
    relabel = {q: i for i, q in enumerate(sorted(det.nodes))}
    det = nx.relabel_nodes(det, relabel)
    space = ShiftSpace(alphabet, ShiftKind.SOFIC, det)
    logger.debug("determinized presentation: %s", space.describe())
    return space


def is_transitive(space: ShiftSpace) -> bool:
    return nx.is_strongly_connected(space.graph)


def is_mixing(space: ShiftSpace) -> bool:
    """Transitive and the gcd of cycle lengths is 1."""
    return is_transitive(space) and nx.is_aperiodic(space.graph)


def components(space: ShiftSpace) -> list[tuple[Hashable, ...]]:
    """Strongly connected components, each sorted, ordered by least vertex."""
    comps = [tuple(sorted(c)) for c in nx.strongly_connected_components(space.graph)]
    return sorted(comps, key=lambda c: c[0])
