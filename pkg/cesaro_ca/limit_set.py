"""Sofic presentations of the forward images F^i(X)."""

from __future__ import annotations

import logging

import networkx as nx

from cesaro_ca.caps import DEFAULT_CAPS, Caps
from cesaro_ca.errors import RuleClosureError
from cesaro_ca.rule import LocalRule
from cesaro_ca.shift_space import ShiftSpace, sofic_from_graph

logger = logging.getLogger(__name__)

INCLUSION_CHECK_LENGTH = 6


def image_sofic(rule: LocalRule, space: ShiftSpace, *, caps: Caps = DEFAULT_CAPS) -> ShiftSpace:
    """Presentation of F(space).

    Vertices are pairs (vertex, last 2r labels) of the input presentation; each
    edge is relabeled by the rule applied to the 2r+1 labels it completes.
    """
    if space.alphabet != rule.alphabet:
        raise ValueError("rule and space alphabets differ")
    span = 2 * rule.radius
    caps.check("table_entries", len(space.vertices) * rule.alphabet.size**span)

    g = nx.MultiDiGraph()
    frontier = [(q, "") for q in space.vertices]
    for _ in range(span):
        frontier = [
            (t, w + a)
            for q, w in frontier
            for a in rule.alphabet
            for t in space.successors(q, a)
        ]
    states = set(frontier)
    for q, w in states:
        for a in rule.alphabet:
            for t in space.successors(q, a):
                nbhd = w + a
                g.add_edge((q, w), (t, nbhd[1:]), label=rule.output(nbhd))
    g.add_nodes_from(states)
    image = sofic_from_graph(rule.alphabet, g, caps=caps)
    logger.debug("image of %s: %s", space.describe(), image.describe())
    return image


def language_included(inner: ShiftSpace, outer: ShiftSpace, max_length: int) -> bool:
    return all(
        set(inner.language_words(n)) <= set(outer.language_words(n))
        for n in range(1, max_length + 1)
    )


def limit_set_approx(
    rule: LocalRule, space: ShiftSpace, n: int, *, caps: Caps = DEFAULT_CAPS
) -> list[ShiftSpace]:
    """[F(X), F²(X), ..., F^n(X)], each language checked to shrink."""
    if n < 1:
        raise ValueError(f"number of images must be >= 1, got {n}")
    images: list[ShiftSpace] = []
    current = space
    for i in range(1, n + 1):
        nxt = image_sofic(rule, current, caps=caps)
        if not language_included(nxt, current, INCLUSION_CHECK_LENGTH):
            raise RuleClosureError(
                f"L(F^{i}(X)) is not contained in L(F^{i - 1}(X)); "
                f"{space.describe()} is not invariant under {rule.describe()}"
            )
        images.append(nxt)
        current = nxt
    logger.info(
        "limit set approximation of %s: %d images, last has %d vertices",
        rule.describe(),
        n,
        len(current.vertices),
    )
    return images
