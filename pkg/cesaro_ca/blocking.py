"""Blocking words: certification, falsification, search and E1/E2 classification.

A word B is blocking when every configuration containing B at a fixed place
has the same column of window contents F^n(x)[d, d+w) for all n. Certification
tracks the set of possible contents of a strip of width W around the window,
re-extending the strip with every boundary symbol at each step. The
abstraction forgets correlations outside the strip, so a certificate is a
proof while a failure only means "unknown". Falsification simulates the light
cone of the window directly and looks for two extensions that disagree.
"""

from __future__ import annotations

import asyncio
import enum
import hashlib
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from cesaro_ca.caps import DEFAULT_CAPS, Caps
from cesaro_ca.errors import HypothesisNotMetError, InadmissibleWordError
from cesaro_ca.rule import LocalRule, all_words_array, apply_window_n
from cesaro_ca.symbolic import Word

logger = logging.getLogger(__name__)

DEFAULT_HORIZON = 8


@dataclass(frozen=True)
class BlockingCertificate:
    word: Word
    offset: int
    width: int
    strip_width: int
    column: tuple[Word, ...]
    preperiod: int
    period: int
    method: str = "strip-abstraction"
    trace: str = ""

    def expected_window(self, n: int) -> Word:
        """v_n, the window content after n steps (v_0 is the window of B itself)."""
        if n < 0:
            raise ValueError(f"step must be >= 0, got {n}")
        if n < len(self.column):
            return self.column[n]
        return self.column[self.preperiod + (n - self.preperiod) % self.period]

    def to_dict(self) -> dict:
        return {
            "word": self.word,
            "offset": self.offset,
            "width": self.width,
            "strip_width": self.strip_width,
            "preperiod": self.preperiod,
            "period": self.period,
            "column": list(self.column),
            "method": self.method,
            "trace": self.trace,
        }

    @classmethod
    def from_dict(cls, data: dict) -> BlockingCertificate:
        return cls(
            word=data["word"],
            offset=data["offset"],
            width=data["width"],
            strip_width=data["strip_width"],
            column=tuple(data["column"]),
            preperiod=data["preperiod"],
            period=data["period"],
            method=data.get("method", "strip-abstraction"),
            trace=data.get("trace", ""),
        )


@dataclass(frozen=True)
class FalsificationWitness:
    """Two configurations x = left + word + right that disagree on the window at `step`."""

    word: Word
    offset: int
    width: int
    left: tuple[Word, Word]
    right: tuple[Word, Word]
    step: int
    windows: tuple[Word, Word]

    @property
    def configurations(self) -> tuple[Word, Word]:
        return (
            self.left[0] + self.word + self.right[0],
            self.left[1] + self.word + self.right[1],
        )

    def replay(self, rule: LocalRule) -> tuple[Word, Word]:
        """Window contents of both configurations after `step` steps, by direct simulation."""
        start = len(self.left[0]) + self.offset - rule.radius * self.step
        out = []
        for x in self.configurations:
            image = apply_window_n(rule, x, self.step)
            out.append(image[start : start + self.width])
        return out[0], out[1]

    def to_dict(self) -> dict:
        return {
            "word": self.word,
            "offset": self.offset,
            "width": self.width,
            "left": list(self.left),
            "right": list(self.right),
            "step": self.step,
            "windows": list(self.windows),
        }


class EquicontinuityClass(enum.Enum):
    E1 = "E1"
    E2 = "E2"
    NO_BLOCKING_WORD_FOUND = "no-blocking-word-found"


@dataclass(frozen=True)
class ClassifyParams:
    max_len: int = 5
    strip_width: int | None = None
    horizon: int = 6
    seed: int = 0
    concurrency: int = 4


@dataclass(frozen=True)
class EquicontinuityVerdict:
    cls: EquicontinuityClass
    certificates: tuple[BlockingCertificate, ...] = ()
    period: int | None = None
    preperiod: int | None = None
    e1_length: int | None = None
    exhaustion: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "class": self.cls.value,
            "period": self.period,
            "preperiod": self.preperiod,
            "e1_length": self.e1_length,
            "certificates": [c.to_dict() for c in self.certificates],
            "exhaustion": dict(self.exhaustion),
        }


def canonical_window(radius: int, length: int) -> tuple[int, int] | None:
    """Centred window (d, w) of width max(r, 1) rounded to the parity of `length`."""
    width = max(radius, 1)
    if width % 2 != length % 2:
        width += 1
    if width > length:
        return None
    return (length - width) // 2, width


def default_strip_width(length: int, width: int) -> int:
    strip = max(length, width)
    if strip % 2 != width % 2:
        strip += 1
    return strip


def _check_window(rule: LocalRule, word: Word, offset: int, width: int) -> None:
    if width < max(rule.radius, 1):
        raise ValueError(f"window width {width} is below the radius {rule.radius}")
    if offset < 0 or offset + width > len(word):
        raise ValueError(f"window [{offset}, {offset + width}) does not lie inside {word!r}")
    if not rule.domain.contains(word):
        raise InadmissibleWordError(f"{word!r} is not admissible in the rule's domain")


def _admissible_rows(rule: LocalRule, rows: np.ndarray) -> np.ndarray:
    if rule.domain.is_full or len(rows) == 0:
        return rows
    keep = [rule.domain.contains(rule.alphabet.decode(row)) for row in rows]
    return rows[np.asarray(keep, dtype=bool)]


def _initial_strips(rule: LocalRule, word: Word, start: int, strip_width: int) -> np.ndarray:
    q = rule.alphabet.size
    lo = min(0, start)
    hi = max(len(word), start + strip_width)
    fixed = {i - lo: c for i, c in enumerate(rule.alphabet.encode(word))}
    free = [j for j in range(hi - lo) if j not in fixed]
    rows = np.empty((q ** len(free), hi - lo), dtype=np.int64)
    if free:
        rows[:, free] = all_words_array(q, len(free))
    for j, c in fixed.items():
        rows[:, j] = c
    rows = _admissible_rows(rule, rows)
    return np.unique(rows[:, start - lo : start - lo + strip_width], axis=0)


def _step_strips(rule: LocalRule, strips: np.ndarray, boundary: np.ndarray) -> np.ndarray:
    m, e = len(strips), len(boundary)
    i_strip, i_left, i_right = (ix.ravel() for ix in np.indices((m, e, e)))
    rows = np.hstack([boundary[i_left], strips[i_strip], boundary[i_right]])
    rows = _admissible_rows(rule, rows)
    return np.unique(rule.apply_batch(rows), axis=0)


def minimal_schedule(
    column: list[Word], pre: int, per: int
) -> tuple[tuple[Word, ...], int, int]:
    def at(n: int) -> Word:
        if n < len(column):
            return column[n]
        return column[pre + (n - pre) % per]

    period = next(
        p
        for p in range(1, per + 1)
        if per % p == 0 and all(at(pre + i) == at(pre + i + p) for i in range(per))
    )
    preperiod = pre
    while preperiod > 0 and at(preperiod - 1) == at(preperiod - 1 + period):
        preperiod -= 1
    return tuple(at(n) for n in range(preperiod + period)), preperiod, period


def certify_blocking(
    rule: LocalRule,
    word: Word,
    offset: int,
    width: int,
    strip_width: int | None = None,
    *,
    caps: Caps = DEFAULT_CAPS,
) -> BlockingCertificate | None:
    """Certificate for (word, window) at one strip width, or None when unknown."""
    _check_window(rule, word, offset, width)
    if strip_width is None:
        strip_width = default_strip_width(len(word), width)
    if strip_width < width:
        raise ValueError(f"strip width {strip_width} is narrower than the window {width}")
    caps.check("strip_width", strip_width)

    start = offset - (strip_width - width) // 2
    inner = offset - start
    boundary = all_words_array(rule.alphabet.size, rule.radius)

    strips = _initial_strips(rule, word, start, strip_width)
    digest = hashlib.sha256(f"{word}|{offset}|{width}|{strip_width}".encode())
    seen = {strips.tobytes(): 0}
    column = [word[offset : offset + width]]
    step = 0
    while True:
        step += 1
        caps.check("orbit_steps", step)
        strips = _step_strips(rule, strips, boundary)
        windows = np.unique(strips[:, inner : inner + width], axis=0)
        if len(windows) != 1:
            logger.debug(
                "%r (d=%d, w=%d, W=%d): %d window contents at step %d",
                word, offset, width, strip_width, len(windows), step,
            )
            return None
        key = strips.tobytes()
        digest.update(key)
        if key in seen:
            pre = seen[key]
            per = step - pre
            break
        seen[key] = step
        column.append(rule.alphabet.decode(windows[0]))

    schedule, preperiod, period = minimal_schedule(column, pre, per)
    certificate = BlockingCertificate(
        word=word,
        offset=offset,
        width=width,
        strip_width=strip_width,
        column=schedule,
        preperiod=preperiod,
        period=period,
        trace=digest.hexdigest()[:16],
    )
    logger.debug("certified %r: preperiod %d, period %d", word, preperiod, period)
    return certificate


def certify_with_ladder(
    rule: LocalRule,
    word: Word,
    offset: int,
    width: int,
    max_strip_width: int | None = None,
    *,
    caps: Caps = DEFAULT_CAPS,
) -> BlockingCertificate | None:
    """Retry certification on wider strips, +2 at a time, up to `max_strip_width`."""
    limit = caps.strip_width if max_strip_width is None else max_strip_width
    strip_width = default_strip_width(len(word), width)
    while strip_width <= limit:
        certificate = certify_blocking(rule, word, offset, width, strip_width, caps=caps)
        if certificate is not None:
            return certificate
        strip_width += 2
    return None


def falsify_blocking(
    rule: LocalRule,
    word: Word,
    offset: int,
    width: int,
    horizon: int = DEFAULT_HORIZON,
    *,
    seed: int = 0,
    caps: Caps = DEFAULT_CAPS,
) -> FalsificationWitness | None:
    """Search the light cone of the window for two disagreeing extensions.

    Exhaustive while |A|^(extension length) fits the `falsify_exhaustive` cap,
    otherwise a seeded sample of `falsify_samples` extensions.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    _check_window(rule, word, offset, width)
    q = rule.alphabet.size
    reach = rule.radius * horizon
    n_left = max(0, reach - offset)
    n_right = max(0, reach - (len(word) - offset - width))
    n_free = n_left + n_right

    if q**n_free <= caps.falsify_exhaustive:
        extensions = all_words_array(q, n_free, dtype=np.uint8)
    else:
        logger.warning(
            "falsifier for %r samples %d of %d extensions (seed %d)",
            word, caps.falsify_samples, q**n_free, seed,
        )
        rng = np.random.default_rng(seed)
        sampled = rng.integers(0, q, size=(caps.falsify_samples, n_free), dtype=np.uint8)
        extensions = np.unique(sampled, axis=0)

    middle = np.tile(np.asarray(rule.alphabet.encode(word), dtype=np.uint8), (len(extensions), 1))
    rows = np.hstack([extensions[:, :n_left], middle, extensions[:, n_left:]])
    if not rule.domain.is_full:
        admissible = np.asarray(
            [rule.domain.contains(rule.alphabet.decode(row)) for row in rows], dtype=bool
        )
        extensions, rows = extensions[admissible], rows[admissible]
    if len(rows) < 2:
        return None

    for step in range(1, horizon + 1):
        rows = rule.apply_batch(rows).astype(np.uint8)
        start = n_left + offset - rule.radius * step
        windows = rows[:, start : start + width]
        differs = np.flatnonzero((windows != windows[0]).any(axis=1))
        if len(differs):
            i = int(differs[0])
            ext0, ext1 = extensions[0], extensions[i]
            decode = rule.alphabet.decode
            witness = FalsificationWitness(
                word=word,
                offset=offset,
                width=width,
                left=(decode(ext0[:n_left]), decode(ext1[:n_left])),
                right=(decode(ext0[n_left:]), decode(ext1[n_left:])),
                step=step,
                windows=(decode(windows[0]), decode(windows[i])),
            )
            logger.debug("falsified %r at step %d", word, step)
            return witness
    return None


def certify_block(
    rule: LocalRule,
    block: BlockingCertificate | Word,
    strip_width: int | None = None,
    *,
    caps: Caps = DEFAULT_CAPS,
) -> BlockingCertificate:
    """Certificate for `block` at its canonical window, or HypothesisNotMetError."""
    if isinstance(block, BlockingCertificate):
        return block
    window = canonical_window(rule.radius, len(block))
    certificate = None
    if window is not None:
        certificate = certify_with_ladder(rule, block, *window, strip_width, caps=caps)
    if certificate is None:
        raise HypothesisNotMetError(f"{block!r} is not a certified blocking word for {rule.describe()}")
    return certificate


# ── Search ──


@dataclass(frozen=True)
class SearchOutcome:
    certificates: tuple[BlockingCertificate, ...]
    tested: dict[int, int]
    falsified: dict[int, int]
    unknown: dict[int, int]


def _falsify_candidates(
    rule: LocalRule, max_len: int, horizon: int, seed: int, caps: Caps
) -> tuple[dict[int, int], dict[int, int], list[tuple[Word, int, int]]]:
    if max_len < 1:
        raise ValueError(f"max_len must be >= 1, got {max_len}")
    tested: dict[int, int] = {}
    falsified: dict[int, int] = {}
    survivors: list[tuple[Word, int, int]] = []
    for length in range(1, max_len + 1):
        window = canonical_window(rule.radius, length)
        if window is None:
            continue
        offset, width = window
        for word in rule.domain.language_words(length):
            tested[length] = tested.get(length, 0) + 1
            if falsify_blocking(rule, word, offset, width, horizon, seed=seed, caps=caps) is not None:
                falsified[length] = falsified.get(length, 0) + 1
            else:
                survivors.append((word, offset, width))
    return tested, falsified, survivors


def _collect(
    rule: LocalRule,
    max_len: int,
    tested: dict[int, int],
    falsified: dict[int, int],
    survivors: list[tuple[Word, int, int]],
    results: list[BlockingCertificate | None],
) -> SearchOutcome:
    certificates = sorted(
        (c for c in results if c is not None), key=lambda c: (len(c.word), c.word)
    )
    unknown: dict[int, int] = {}
    for (word, _, _), cert in zip(survivors, results):
        if cert is None:
            unknown[len(word)] = unknown.get(len(word), 0) + 1
    logger.info(
        "blocking search on %s up to length %d: %d certified, %d falsified, %d unknown",
        rule.describe(),
        max_len,
        len(certificates),
        sum(falsified.values()),
        sum(unknown.values()),
    )
    return SearchOutcome(tuple(certificates), tested, falsified, unknown)


def search_blocking_outcome(
    rule: LocalRule,
    max_len: int,
    strip_width: int | None = None,
    horizon: int = DEFAULT_HORIZON,
    *,
    seed: int = 0,
    caps: Caps = DEFAULT_CAPS,
) -> SearchOutcome:
    """Falsify every admissible word up to `max_len`, then certify the survivors in turn."""
    tested, falsified, survivors = _falsify_candidates(rule, max_len, horizon, seed, caps)
    results = [
        certify_with_ladder(rule, word, offset, width, strip_width, caps=caps)
        for word, offset, width in survivors
    ]
    return _collect(rule, max_len, tested, falsified, survivors, results)


async def search_blocking_words_async(
    rule: LocalRule,
    max_len: int,
    strip_width: int | None = None,
    horizon: int = DEFAULT_HORIZON,
    *,
    seed: int = 0,
    concurrency: int = 4,
    caps: Caps = DEFAULT_CAPS,
) -> SearchOutcome:
    """As `search_blocking_outcome`, certifying up to `concurrency` survivors at once."""
    if concurrency < 1:
        raise ValueError(f"concurrency must be >= 1, got {concurrency}")
    tested, falsified, survivors = await asyncio.to_thread(
        _falsify_candidates, rule, max_len, horizon, seed, caps
    )
    sem = asyncio.Semaphore(concurrency)

    async def certify_bounded(word: Word, offset: int, width: int) -> BlockingCertificate | None:
        async with sem:
            return await asyncio.to_thread(
                certify_with_ladder, rule, word, offset, width, strip_width, caps=caps
            )

    results = await asyncio.gather(*(certify_bounded(*s) for s in survivors))
    return _collect(rule, max_len, tested, falsified, survivors, list(results))


def search_blocking_words(
    rule: LocalRule,
    max_len: int,
    strip_width: int | None = None,
    horizon: int = DEFAULT_HORIZON,
    *,
    seed: int = 0,
    caps: Caps = DEFAULT_CAPS,
) -> list[BlockingCertificate]:
    """Certified blocking words up to `max_len`, shortest first, then lexicographic."""
    outcome = search_blocking_outcome(rule, max_len, strip_width, horizon, seed=seed, caps=caps)
    return list(outcome.certificates)


# ── Classification ──


def verdict_from_outcome(
    rule: LocalRule, outcome: SearchOutcome, params: ClassifyParams, caps: Caps = DEFAULT_CAPS
) -> EquicontinuityVerdict:
    exhaustion = {
        "max_len": params.max_len,
        "horizon": params.horizon,
        "strip_width": params.strip_width or caps.strip_width,
        "tested": sum(outcome.tested.values()),
        "falsified": sum(outcome.falsified.values()),
        "unknown": sum(outcome.unknown.values()),
    }

    for length in range(1, params.max_len + 1, 2):
        if length not in outcome.tested:
            continue
        certs = tuple(c for c in outcome.certificates if len(c.word) == length)
        if len(certs) == outcome.tested[length]:
            period = math.lcm(*(c.period for c in certs))
            preperiod = max(c.preperiod for c in certs)
            logger.info("%s is E1 (length %d, p=%d, p'=%d)", rule.describe(), length, period, preperiod)
            return EquicontinuityVerdict(
                cls=EquicontinuityClass.E1,
                certificates=certs,
                period=period,
                preperiod=preperiod,
                e1_length=length,
                exhaustion=exhaustion,
            )

    if outcome.certificates:
        logger.info("%s is E2 (%d blocking words)", rule.describe(), len(outcome.certificates))
        return EquicontinuityVerdict(
            cls=EquicontinuityClass.E2, certificates=outcome.certificates, exhaustion=exhaustion
        )
    logger.info("no blocking word found for %s up to length %d", rule.describe(), params.max_len)
    return EquicontinuityVerdict(cls=EquicontinuityClass.NO_BLOCKING_WORD_FOUND, exhaustion=exhaustion)


def classify_equicontinuity(
    rule: LocalRule, params: ClassifyParams | None = None, *, caps: Caps = DEFAULT_CAPS
) -> EquicontinuityVerdict:
    params = params or ClassifyParams()
    outcome = search_blocking_outcome(
        rule, params.max_len, params.strip_width, params.horizon, seed=params.seed, caps=caps
    )
    return verdict_from_outcome(rule, outcome, params, caps)


async def classify_equicontinuity_async(
    rule: LocalRule, params: ClassifyParams | None = None, *, caps: Caps = DEFAULT_CAPS
) -> EquicontinuityVerdict:
    params = params or ClassifyParams()
    outcome = await search_blocking_words_async(
        rule,
        params.max_len,
        params.strip_width,
        params.horizon,
        seed=params.seed,
        concurrency=params.concurrency,
        caps=caps,
    )
    return verdict_from_outcome(rule, outcome, params, caps)
