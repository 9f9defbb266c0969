"""F-periodic points through a prescribed word.

For a surjective rule on a transitive domain with a blocking word B, the
σ-periodic point built on u = B w v w' is F-periodic, where w and w' are
connecting words chosen so that u labels a closed path of the presentation.
"""

from __future__ import annotations

import logging
from collections.abc import Hashable

import networkx as nx

from cesaro_ca.blocking import BlockingCertificate, certify_block
from cesaro_ca.caps import DEFAULT_CAPS, Caps
from cesaro_ca.errors import HorizonExceededError, HypothesisNotMetError, InadmissibleWordError
from cesaro_ca.rule import LocalRule, apply_periodic, orbit_periodic
from cesaro_ca.shift_space import ShiftSpace, is_transitive
from cesaro_ca.surjectivity import is_surjective
from cesaro_ca.symbolic import PeriodicConfig, Word

logger = logging.getLogger(__name__)


def _path_labels(space: ShiftSpace, source: Hashable, target: Hashable) -> Word:
    path = nx.shortest_path(space.graph, source, target)
    labels = []
    for p, q in zip(path, path[1:]):
        labels.append(min(data["label"] for data in space.graph.get_edge_data(p, q).values()))
    return "".join(labels)


def connecting_word(space: ShiftSpace, block: Word, v: Word) -> Word:
    """u = block + w + v + w' labelling a closed path of the presentation."""
    for start in space.vertices:
        after_block = space.follow([start], block)
        if not after_block:
            continue
        for middle in space.vertices:
            after_v = space.follow([middle], v)
            if not after_v:
                continue
            mid_end = min(after_block)
            end = min(after_v)
            w = _path_labels(space, mid_end, middle)
            w_back = _path_labels(space, end, start)
            return block + w + v + w_back
    raise InadmissibleWordError(f"cannot place {block!r} and {v!r} on a common closed path")


def construct_f_periodic_point(
    rule: LocalRule,
    v: Word,
    block: BlockingCertificate | Word,
    max_period: int = 256,
    *,
    caps: Caps = DEFAULT_CAPS,
) -> tuple[PeriodicConfig, int]:
    """A σ-periodic point containing `v` with F^m(x) = x, and that m."""
    space = rule.domain
    if not space.contains(v):
        raise InadmissibleWordError(f"{v!r} is not admissible in the rule's domain")
    if not is_transitive(space):
        raise HypothesisNotMetError(f"domain {space.describe()} is not transitive")
    if not is_surjective(rule, caps=caps).surjective:
        raise HypothesisNotMetError(f"{rule.describe()} is not surjective")
    certificate = certify_block(rule, block, caps=caps)

    u = connecting_word(space, certificate.word, v)
    point = PeriodicConfig(u)
    summary = orbit_periodic(rule, point, max_period, caps=caps)
    if summary.preperiod > 0 or summary.period > max_period:
        raise HorizonExceededError(
            f"periodic point on {u!r} has preperiod {summary.preperiod} and period "
            f"{summary.period}; no F-period within {max_period}",
            preperiod=summary.preperiod,
        )
    image = point
    for _ in range(summary.period):
        image = apply_periodic(rule, image)
    if image != point:
        raise ArithmeticError(f"F^{summary.period} does not fix the point on {u!r}")
    logger.info("F-periodic point on %r through %r with period %d", u, v, summary.period)
    return point, summary.period
