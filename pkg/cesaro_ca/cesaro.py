"""Pushforwards μ∘F^{-n}, their Cesàro means and the equicontinuous limit."""

from __future__ import annotations

import enum
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from cesaro_ca.blocking import (
    ClassifyParams,
    EquicontinuityClass,
    EquicontinuityVerdict,
    classify_equicontinuity,
)
from cesaro_ca.caps import DEFAULT_CAPS, Caps
from cesaro_ca.errors import HypothesisNotMetError, UnsupportedDomainError
from cesaro_ca.measure import MarkovMeasure
from cesaro_ca.preimage import preimage_automata
from cesaro_ca.rule import LocalRule
from cesaro_ca.symbolic import Word

logger = logging.getLogger(__name__)


def _check_inputs(rule: LocalRule, measure: MarkovMeasure, u: Word) -> None:
    if not rule.domain.is_full:
        raise UnsupportedDomainError(
            f"pushforwards are computed on full shifts only, got {rule.domain.describe()}"
        )
    if measure.alphabet != rule.alphabet:
        raise ValueError("rule and measure alphabets differ")
    rule.alphabet.check_word(u)


def pushforward_series(
    rule: LocalRule, measure: MarkovMeasure, u: Word, count: int, *, caps: Caps = DEFAULT_CAPS
) -> list[Fraction]:
    """[μ(F^{-n}[u]_0) for n = 0, ..., count - 1]."""
    _check_inputs(rule, measure, u)
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    return [aut.measure(measure) for aut in preimage_automata(rule, u, count, caps=caps)]


def pushforward_cylinder(
    rule: LocalRule, measure: MarkovMeasure, u: Word, n: int, *, caps: Caps = DEFAULT_CAPS
) -> Fraction:
    if n < 0:
        raise ValueError(f"step must be >= 0, got {n}")
    return pushforward_series(rule, measure, u, n + 1, caps=caps)[-1]


@dataclass(frozen=True)
class PushforwardSnapshot:
    step: int
    depth: int
    table: dict[Word, Fraction] = field(repr=False)

    def __post_init__(self) -> None:
        total = sum(self.table.values(), Fraction(0))
        if total != 1:
            raise ArithmeticError(f"pushforward at step {self.step} has total mass {total}")

    def marginal(self) -> dict[Word, Fraction]:
        """Right-marginal Σ_a table(ua) at depth - 1."""
        out: dict[Word, Fraction] = {}
        for w, value in self.table.items():
            out[w[:-1]] = out.get(w[:-1], Fraction(0)) + value
        return out

    def left_marginal(self) -> dict[Word, Fraction]:
        out: dict[Word, Fraction] = {}
        for w, value in self.table.items():
            out[w[1:]] = out.get(w[1:], Fraction(0)) + value
        return out


def pushforward_snapshot(
    rule: LocalRule, measure: MarkovMeasure, n: int, depth: int, *, caps: Caps = DEFAULT_CAPS
) -> PushforwardSnapshot:
    """μ∘F^{-n} on every cylinder of length `depth`, checked for Kolmogorov consistency."""
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    table = {
        u: pushforward_cylinder(rule, measure, u, n, caps=caps) for u in rule.alphabet.words(depth)
    }
    snapshot = PushforwardSnapshot(n, depth, table)
    if depth > 1:
        shorter = {
            u: pushforward_cylinder(rule, measure, u, n, caps=caps)
            for u in rule.alphabet.words(depth - 1)
        }
        if snapshot.marginal() != shorter or snapshot.left_marginal() != shorter:
            raise ArithmeticError(f"pushforward at step {n} is not consistent at depth {depth}")
    return snapshot


@dataclass(frozen=True)
class CesaroSeries:
    """values[n-1] = μ_n([u]) = (1/n) Σ_{i<n} pushforward[i]."""

    word: Word
    values: tuple[Fraction, ...]
    pushforward: tuple[Fraction, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.values)

    def mean(self, n: int) -> Fraction:
        if not 1 <= n <= len(self.values):
            raise ValueError(f"order must be in [1, {len(self.values)}], got {n}")
        return self.values[n - 1]

    @property
    def last(self) -> Fraction:
        return self.values[-1]


def cesaro_mean(
    rule: LocalRule, measure: MarkovMeasure, u: Word, N: int, *, caps: Caps = DEFAULT_CAPS
) -> CesaroSeries:
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    terms = pushforward_series(rule, measure, u, N, caps=caps)
    values = []
    running = Fraction(0)
    for n, term in enumerate(terms, start=1):
        running += term
        values.append(running / n)
    logger.info("Cesàro series of [%s] under %s: %d terms, last %s", u, rule.describe(), N, values[-1])
    return CesaroSeries(u, tuple(values), tuple(terms))


def equicontinuous_cesaro_limit(
    rule: LocalRule,
    measure: MarkovMeasure,
    p: int,
    p_pre: int,
    u: Word,
    *,
    verdict: EquicontinuityVerdict | None = None,
    params: ClassifyParams | None = None,
    caps: Caps = DEFAULT_CAPS,
) -> Fraction:
    """(1/p) Σ_{i<p} μ(F^{-(i+p')}[u]), the limit of the Cesàro means for E1 rules."""
    if p < 1 or p_pre < 0:
        raise ValueError(f"need p >= 1 and p' >= 0, got p={p}, p'={p_pre}")
    if verdict is None:
        verdict = classify_equicontinuity(rule, params, caps=caps)
    if verdict.cls is not EquicontinuityClass.E1:
        raise HypothesisNotMetError(f"{rule.describe()} is not E1 (classified {verdict.cls.value})")
    if p % verdict.period or p_pre < verdict.preperiod:
        raise HypothesisNotMetError(
            f"(p, p')=({p}, {p_pre}) is incompatible with the global "
            f"period {verdict.period} and preperiod {verdict.preperiod}"
        )
    terms = pushforward_series(rule, measure, u, p_pre + p, caps=caps)
    return sum(terms[p_pre:], Fraction(0)) / p


class Convergence(enum.Enum):
    OSCILLATING = "oscillating"
    CAUCHY_LIKE = "cauchy-like"


def convergence_diagnostic(
    series: Sequence[Fraction | float], window: int, tol: float
) -> Convergence:
    """Finite-horizon heuristic: oscillating when at least half of the last
    `window` consecutive gaps exceed `tol`."""
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if len(series) < 2 * window:
        raise ValueError(f"series of length {len(series)} is shorter than 2*window={2 * window}")
    tail = list(series[-(window + 1) :])
    large = sum(1 for a, b in zip(tail, tail[1:]) if abs(b - a) > tol)
    return Convergence.OSCILLATING if 2 * large >= window else Convergence.CAUCHY_LIKE
