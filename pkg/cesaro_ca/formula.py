"""The explicit Cesàro limit μ_c([u]) = lim_m W_m(u) for equicontinuous measures.

R(k, m) is the set of words of length 2(k+m)+1 with an occurrence of a
blocking word inside each flank: positions [-m-k, -k] and [k, m+k] relative to
the centre, occurrences lying entirely inside the flank. For such a word W the
central (2k+1)-window of F^j(x), x ∈ [W], does not depend on the rest of x, so
it can be read off the σ-periodic point on W. With p = lcm and p' = max of the
per-word (period, preperiod) of that window,

    W_m(u) = (1/p) Σ_{i<p} Σ_W [window of F^{i+p'}(W̄) = u] μ([W]).

W_m(u) is non-decreasing in m and tends to μ_c([u]).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from cesaro_ca.blocking import (
    BlockingCertificate,
    ClassifyParams,
    EquicontinuityClass,
    certify_block,
    classify_equicontinuity,
    minimal_schedule,
    search_blocking_words,
)
from cesaro_ca.caps import DEFAULT_CAPS, Caps
from cesaro_ca.cesaro import CesaroSeries, cesaro_mean
from cesaro_ca.errors import HypothesisNotMetError, UnsupportedDomainError
from cesaro_ca.measure import MarkovMeasure
from cesaro_ca.rule import LocalRule, all_words_array, orbit_periodic
from cesaro_ca.surjectivity import is_surjective
from cesaro_ca.symbolic import Cylinder, PeriodicConfig, Word

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RkmSpec:
    blocks: tuple[Word, ...]
    k: int
    m: int
    qualifying_words: tuple[Word, ...] = field(repr=False)
    mass: Fraction

    @property
    def length(self) -> int:
        return 2 * (self.k + self.m) + 1

    def __len__(self) -> int:
        return len(self.qualifying_words)


def _normalise_blocks(blocks: Word | Iterable[Word]) -> tuple[Word, ...]:
    if isinstance(blocks, str):
        blocks = [blocks]
    out = tuple(sorted(set(blocks), key=lambda b: (len(b), b)))
    if not out or any(not b for b in out):
        raise ValueError("at least one nonempty blocking word is required")
    return out


def build_rkm(
    measure: MarkovMeasure,
    blocks: Word | Iterable[Word],
    k: int,
    m: int,
    *,
    caps: Caps = DEFAULT_CAPS,
) -> RkmSpec:
    """Words of length 2(k+m)+1 with a blocking occurrence in each flank, and their mass."""
    blocks = _normalise_blocks(blocks)
    for b in blocks:
        measure.alphabet.check_word(b)
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    longest = max(len(b) for b in blocks)
    if m < longest - 1:
        raise ValueError(f"flank of m+1={m + 1} symbols is too short for a blocking word of length {longest}")
    length = 2 * (k + m) + 1
    caps.check("rkm_length", length)
    q = measure.alphabet.size

    rows = all_words_array(q, length, dtype=np.uint8)
    flanks = ((0, m), (2 * k + m, 2 * k + 2 * m))
    qualifies = np.ones(len(rows), dtype=bool)
    for first, last in flanks:
        hit = np.zeros(len(rows), dtype=bool)
        for b in blocks:
            codes = np.asarray(measure.alphabet.encode(b), dtype=np.uint8)
            for j in range(first, last - len(b) + 2):
                hit |= (rows[:, j : j + len(b)] == codes).all(axis=1)
        qualifies &= hit
    words = tuple(measure.alphabet.decode(row) for row in rows[qualifies])
    mass = sum((measure.cylinder_prob(w) for w in words), Fraction(0))
    logger.debug("R(%d,%d) for %s: %d words, mass %s", k, m, blocks, len(words), mass)
    return RkmSpec(blocks, k, m, words, mass)


def _window_column(rule: LocalRule, W: Word, k: int, caps: Caps) -> tuple[tuple[Word, ...], int, int]:
    """Minimal ultimately-periodic column of central (2k+1)-windows of W̄ under F."""
    summary = orbit_periodic(rule, PeriodicConfig(W), caps.orbit_steps, caps=caps)
    centre = (len(W) - 1) // 2
    column = [
        summary.state(n).window(centre - k, 2 * k + 1)
        for n in range(summary.preperiod + summary.period)
    ]
    return minimal_schedule(column, summary.preperiod, summary.period)


def local_period(rule: LocalRule, W: Word, k: int, *, caps: Caps = DEFAULT_CAPS) -> tuple[int, int]:
    """(preperiod, period) of the central (2k+1)-window sequence of W̄."""
    if len(W) < 2 * k + 1:
        raise ValueError(f"word {W!r} is shorter than the central window 2k+1={2 * k + 1}")
    _, preperiod, period = _window_column(rule, W, k, caps)
    return preperiod, period


def pkm(rule: LocalRule, spec: RkmSpec, *, caps: Caps = DEFAULT_CAPS) -> tuple[int, int]:
    """(p(k,m), p'(k,m)): lcm of local periods, max of local preperiods."""
    if not spec.qualifying_words:
        raise ValueError(f"R({spec.k},{spec.m}) is empty")
    periods = [local_period(rule, W, spec.k, caps=caps) for W in spec.qualifying_words]
    return math.lcm(*(per for _, per in periods)), max(pre for pre, _ in periods)


@dataclass(frozen=True)
class FormulaEvaluation:
    """W_m on every central word of length 2k+1 (zero entries omitted)."""

    k: int
    m: int
    period: int
    preperiod: int
    rkm_mass: Fraction
    values: dict[Word, Fraction] = field(repr=False)
    local_periods: dict[Word, tuple[int, int]] = field(repr=False)

    def value(self, u: Word) -> Fraction:
        """W_m(u) for |u| = 2k+1, or Σ_a W_m(ua) for |u| = 2k."""
        if len(u) == 2 * self.k + 1:
            return self.values.get(u, Fraction(0))
        if len(u) == 2 * self.k:
            return sum(
                (v for w, v in self.values.items() if w.startswith(u)), Fraction(0)
            )
        raise ValueError(f"|u| must be {2 * self.k} or {2 * self.k + 1}, got {len(u)}")

    @property
    def total(self) -> Fraction:
        return sum(self.values.values(), Fraction(0))


def _check_measure(rule: LocalRule, measure: MarkovMeasure) -> None:
    if not rule.domain.is_full:
        raise UnsupportedDomainError("the limit formula is implemented on full shifts only")
    if measure.alphabet != rule.alphabet:
        raise ValueError("rule and measure alphabets differ")


def certify_blocks(
    rule: LocalRule, blocks: Word | Iterable[Word], caps: Caps = DEFAULT_CAPS
) -> tuple[Word, ...]:
    """The blocks, each certified at its canonical window, or HypothesisNotMetError."""
    words = _normalise_blocks(blocks)
    for block in words:
        certify_block(rule, block, caps=caps)
    return words


def _evaluate(
    rule: LocalRule,
    measure: MarkovMeasure,
    blocks: tuple[Word, ...],
    k: int,
    m: int,
    caps: Caps,
) -> FormulaEvaluation:
    spec = build_rkm(measure, blocks, k, m, caps=caps)
    if not spec.qualifying_words:
        raise ValueError(f"R({k},{m}) is empty")
    columns: dict[Word, tuple[tuple[Word, ...], int, int]] = {}
    for W in spec.qualifying_words:
        columns[W] = _window_column(rule, W, k, caps)
    period = math.lcm(*(per for _, _, per in columns.values()))
    preperiod = max(pre for _, pre, _ in columns.values())

    values: dict[Word, Fraction] = {}
    for W, (column, pre, per) in columns.items():
        weight = measure.cylinder_prob(W)
        if not weight:
            continue
        for i in range(period):
            n = i + preperiod
            centre = column[n] if n < len(column) else column[pre + (n - pre) % per]
            values[centre] = values.get(centre, Fraction(0)) + weight
    values = {u: v / period for u, v in sorted(values.items())}
    logger.debug("W_%d on R(%d,%d): p=%d, p'=%d", m, k, m, period, preperiod)
    return FormulaEvaluation(
        k=k,
        m=m,
        period=period,
        preperiod=preperiod,
        rkm_mass=spec.mass,
        values=values,
        local_periods={W: (pre, per) for W, (_, pre, per) in columns.items()},
    )


def evaluate_formula(
    rule: LocalRule,
    measure: MarkovMeasure,
    blocks: Word | Iterable[Word],
    k: int,
    m: int,
    *,
    caps: Caps = DEFAULT_CAPS,
) -> FormulaEvaluation:
    """W_m for every central (2k+1)-window; each block must certify as blocking."""
    _check_measure(rule, measure)
    return _evaluate(rule, measure, certify_blocks(rule, blocks, caps), k, m, caps)


def theorem_formula(
    rule: LocalRule,
    measure: MarkovMeasure,
    blocks: Word | Iterable[Word],
    u: Word | Cylinder,
    k: int,
    m: int,
    *,
    caps: Caps = DEFAULT_CAPS,
) -> Fraction:
    """W_m(u), exactly.

    A `Cylinder` is read at its centred position; μ_c is σ-invariant, so the
    value does not depend on where the cylinder sits.
    """
    if isinstance(u, Cylinder):
        u = u.recentred().word
    if len(u) not in (2 * k, 2 * k + 1):
        raise ValueError(f"|u| must be 2k or 2k+1 for k={k}, got {len(u)}")
    return evaluate_formula(rule, measure, blocks, k, m, caps=caps).value(u)


@dataclass(frozen=True)
class EquicontinuousMeasureVerdict:
    equicontinuous: bool
    certificate: BlockingCertificate | None = None
    mass: Fraction = Fraction(0)
    searched: int = 0

    @property
    def block(self) -> Word | None:
        return self.certificate.word if self.certificate else None


def is_equicontinuous_measure(
    rule: LocalRule,
    measure: MarkovMeasure,
    max_len: int,
    params: ClassifyParams | None = None,
    *,
    caps: Caps = DEFAULT_CAPS,
) -> EquicontinuousMeasureVerdict:
    """True (with evidence) when a certified blocking word has positive measure.

    False means none was found up to `max_len`; it is not a disproof.
    """
    _check_measure(rule, measure)
    params = params or ClassifyParams()
    certificates = search_blocking_words(
        rule,
        max_len,
        params.strip_width,
        params.horizon,
        seed=params.seed,
        caps=caps,
    )
    for cert in certificates:
        mass = measure.cylinder_prob(cert.word)
        if mass > 0:
            logger.info("%s is equicontinuous via %r (mass %s)", measure.describe(), cert.word, mass)
            return EquicontinuousMeasureVerdict(True, cert, mass, len(certificates))
    logger.warning(
        "no positive-measure blocking word up to length %d for %s", max_len, measure.describe()
    )
    return EquicontinuousMeasureVerdict(False, searched=len(certificates))


def default_blocks(
    rule: LocalRule,
    measure: MarkovMeasure,
    params: ClassifyParams | None = None,
    *,
    caps: Caps = DEFAULT_CAPS,
) -> tuple[Word, ...]:
    """Blocking words for R(k, m).

    E1 rules use every word of the certified length, so R(k, m) is the whole
    space; otherwise all positive-measure certified words of the shortest such
    length.
    """
    params = params or ClassifyParams()
    verdict = classify_equicontinuity(rule, params, caps=caps)
    if verdict.cls is EquicontinuityClass.E1:
        return tuple(c.word for c in verdict.certificates)
    positive = [c.word for c in verdict.certificates if measure.cylinder_prob(c.word) > 0]
    if not positive:
        raise HypothesisNotMetError("no positive-measure blocking word")
    shortest = min(len(b) for b in positive)
    return tuple(b for b in positive if len(b) == shortest)


@dataclass(frozen=True)
class MuCEstimate:
    word: Word
    k: int
    blocks: tuple[Word, ...]
    evaluations: tuple[FormulaEvaluation, ...] = field(repr=False)
    cesaro: CesaroSeries = field(repr=False)

    @property
    def formula_values(self) -> tuple[Fraction, ...]:
        return tuple(ev.value(self.word) for ev in self.evaluations)

    @property
    def monotone(self) -> bool:
        values = self.formula_values
        return all(a <= b for a, b in zip(values, values[1:]))

    @property
    def gap(self) -> Fraction:
        return abs(self.formula_values[-1] - self.cesaro.last)

    @property
    def slack(self) -> Fraction:
        """1 - μ(R(k, m_max)), the certified truncation slack of the last W_m."""
        return 1 - self.evaluations[-1].rkm_mass


def mu_c_estimate(
    rule: LocalRule,
    measure: MarkovMeasure,
    u: Word,
    m_schedule: Sequence[int],
    N: int,
    blocks: Word | Iterable[Word] | None = None,
    *,
    params: ClassifyParams | None = None,
    caps: Caps = DEFAULT_CAPS,
) -> MuCEstimate:
    """W_m(u) along `m_schedule` next to the direct Cesàro series up to N."""
    _check_measure(rule, measure)
    if not m_schedule or list(m_schedule) != sorted(set(m_schedule)):
        raise ValueError(f"m schedule must be nonempty and strictly increasing, got {list(m_schedule)}")
    if blocks is None:
        blocks = default_blocks(rule, measure, params, caps=caps)
    else:
        blocks = certify_blocks(rule, blocks, caps)
    if all(measure.cylinder_prob(b) == 0 for b in blocks):
        raise HypothesisNotMetError("no positive-measure blocking word")
    k = len(u) // 2
    evaluations = tuple(_evaluate(rule, measure, blocks, k, m, caps) for m in m_schedule)
    estimate = MuCEstimate(u, k, blocks, evaluations, cesaro_mean(rule, measure, u, N, caps=caps))
    if not estimate.monotone:
        raise ArithmeticError(f"W_m([{u}]) decreased along m={list(m_schedule)}: {estimate.formula_values}")
    logger.info(
        "μ_c([%s]) estimate: W=%s, Cesàro μ_%d=%s, gap %s, slack %s",
        u,
        estimate.formula_values[-1],
        N,
        estimate.cesaro.last,
        estimate.gap,
        estimate.slack,
    )
    return estimate


@dataclass(frozen=True)
class SupportReport:
    witnessed: dict[Word, int]
    missing: tuple[Word, ...]
    outside_support: tuple[Word, ...]
    independence: dict[Word, bool] | None = None

    @property
    def complete(self) -> bool:
        return not self.missing


def _late_windows(
    rule: LocalRule, measure: MarkovMeasure, blocks: tuple[Word, ...], k: int, m: int, caps: Caps
) -> set[Word]:
    ev = _evaluate(rule, measure, blocks, k, m, caps)
    return set(ev.values)


def support_tests(
    rule: LocalRule,
    measure: MarkovMeasure,
    blocks: Word | Iterable[Word],
    depth: int,
    *,
    alternate: Word | None = None,
    caps: Caps = DEFAULT_CAPS,
) -> SupportReport:
    """Finite witnesses that S(μ) ⊆ S(μ_c).

    Each word y with μ([y]) > 0 and |y| <= depth is witnessed by the least m
    with W_m(y) > 0. With `alternate`, the late central windows reachable from
    R(k, m) are compared for the two blocking words, word by word.

    The rule must be surjective and every block a certified blocking word, at
    least one of positive measure; otherwise HypothesisNotMetError.
    """
    _check_measure(rule, measure)
    if not is_surjective(rule, caps=caps).surjective:
        raise HypothesisNotMetError(f"{rule.describe()} is not surjective")
    blocks = certify_blocks(rule, blocks, caps)
    if all(measure.cylinder_prob(b) == 0 for b in blocks):
        raise HypothesisNotMetError(f"no positive-measure blocking word among {list(blocks)}")
    alternates = certify_blocks(rule, alternate, caps) if alternate is not None else ()
    first_m = max(len(b) for b in blocks) - 1
    witnessed: dict[Word, int] = {}
    missing: list[Word] = []
    outside: list[Word] = []
    cache: dict[tuple[int, int], FormulaEvaluation] = {}
    for length in range(1, depth + 1):
        k = length // 2
        for y in rule.alphabet.words(length):
            if measure.cylinder_prob(y) == 0:
                outside.append(y)
                continue
            m = first_m
            while 2 * (k + m) + 1 <= caps.rkm_length:
                key = (k, m)
                if key not in cache:
                    cache[key] = _evaluate(rule, measure, blocks, k, m, caps)
                if cache[key].value(y) > 0:
                    witnessed[y] = m
                    break
                m += 1
            else:
                missing.append(y)

    independence = None
    if alternate is not None:
        independence = {}
        m = max(first_m, len(alternate) - 1)
        for length in range(1, depth + 1, 2):
            k = length // 2
            if 2 * (k + m) + 1 > caps.rkm_length:
                break
            seen_a = _late_windows(rule, measure, blocks, k, m, caps)
            seen_b = _late_windows(rule, measure, alternates, k, m, caps)
            for y in rule.alphabet.words(length):
                independence[y] = (y in seen_a) == (y in seen_b)
    report = SupportReport(witnessed, tuple(missing), tuple(outside), independence)
    logger.info(
        "support tests for %s: %d witnessed, %d missing, %d outside S(μ)",
        rule.describe(),
        len(witnessed),
        len(missing),
        len(outside),
    )
    return report
