"""Local rules of cellular automata and their iteration.

A rule is stored as a dense table indexed by the mixed-radix code of the
neighbourhood (first symbol most significant), so F(x)_i = f(x_{i-r}..x_{i+r})
is one table lookup.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from cesaro_ca.caps import DEFAULT_CAPS, Caps
from cesaro_ca.errors import (
    HorizonExceededError,
    InadmissibleWordError,
    RuleClosureError,
    WindowTooShortError,
)
from cesaro_ca.shift_space import ShiftSpace, full_shift
from cesaro_ca.symbolic import Alphabet, PeriodicConfig, Word

logger = logging.getLogger(__name__)


def all_words_array(q: int, length: int, dtype: type = np.int64) -> np.ndarray:
    """Every word of `length` over range(q) as rows, in lexicographic order."""
    count = q**length
    rows = np.empty((count, length), dtype=dtype)
    index = np.arange(count, dtype=np.int64)
    for j in range(length):
        rows[:, j] = (index // q ** (length - 1 - j)) % q
    return rows


@dataclass(frozen=True)
class LocalRule:
    alphabet: Alphabet
    radius: int
    table: tuple[int, ...] = field(repr=False)
    domain: ShiftSpace | None = field(default=None, compare=False, repr=False)
    name: str = field(default="", compare=False)
    _array: np.ndarray = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise ValueError(f"radius must be >= 0, got {self.radius}")
        expected = self.alphabet.size ** self.width
        if len(self.table) != expected:
            raise ValueError(f"rule table has {len(self.table)} entries, expected {expected}")
        table = tuple(int(v) for v in self.table)
        if any(v < 0 or v >= self.alphabet.size for v in table):
            raise ValueError("rule table contains a symbol index outside the alphabet")
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_array", np.asarray(table, dtype=np.int64))
        if self.domain is None:
            object.__setattr__(self, "domain", full_shift(self.alphabet))
        elif self.domain.alphabet != self.alphabet:
            raise ValueError("rule alphabet and domain alphabet differ")
        else:
            self._check_closure()

    @classmethod
    def from_function(
        cls,
        alphabet: Alphabet,
        radius: int,
        fn: Callable[..., str],
        *,
        domain: ShiftSpace | None = None,
        name: str = "",
        caps: Caps = DEFAULT_CAPS,
    ) -> LocalRule:
        """Tabulate `fn(x_{-r}, ..., x_r) -> symbol` over every neighbourhood."""
        caps.check("table_entries", alphabet.size ** (2 * radius + 1))
        table = [alphabet.index(fn(*nbhd)) for nbhd in alphabet.words(2 * radius + 1)]
        return cls(alphabet, radius, tuple(table), domain=domain, name=name)

    @property
    def width(self) -> int:
        return 2 * self.radius + 1

    def code(self, codes: Sequence[int]) -> int:
        q = self.alphabet.size
        c = 0
        for s in codes:
            c = c * q + s
        return c

    def output(self, neighbourhood: Word) -> str:
        if len(neighbourhood) != self.width:
            raise ValueError(f"neighbourhood {neighbourhood!r} must have length {self.width}")
        return self.alphabet.symbols[self.table[self.code(self.alphabet.encode(neighbourhood))]]

    def apply_codes(self, codes: Sequence[int]) -> list[int]:
        w = self.width
        if len(codes) < w:
            raise WindowTooShortError(f"need at least {w} symbols, got {len(codes)}")
        q = self.alphabet.size
        top = q ** (w - 1)
        table = self.table
        c = self.code(codes[: w - 1])
        out = []
        for s in codes[w - 1 :]:
            c = c * q + s
            out.append(table[c])
            c %= top
        return out

    def apply_batch(self, rows: np.ndarray) -> np.ndarray:
        """One step on every row of an integer array; rows shrink by 2r."""
        w = self.width
        n = rows.shape[1] - w + 1
        if n < 1:
            raise WindowTooShortError(f"need at least {w} columns, got {rows.shape[1]}")
        q = self.alphabet.size
        codes = np.zeros((rows.shape[0], n), dtype=np.int64)
        for j in range(w):
            codes = codes * q + rows[:, j : j + n]
        return self._array[codes]

    def support(self) -> tuple[int, int]:
        """Offsets [lo, hi] ⊆ [-r, r] on which the table actually depends."""
        q = self.alphabet.size
        cube = self._array.reshape((q,) * self.width)
        used = [
            j - self.radius
            for j in range(self.width)
            if (cube != np.take(cube, [0], axis=j)).any()
        ]
        if not used:
            return (0, 0)
        return (min(used), max(used))

    def describe(self) -> str:
        label = self.name or "rule"
        return f"{label} (radius {self.radius} over {{{', '.join(self.alphabet)}}})"

    def _check_closure(self) -> None:
        domain = self.domain
        length = 2 * self.radius + max(3, domain.memory + 1)
        for u in domain.language_words(length):
            image = apply_window(self, u)
            if not domain.contains(image):
                raise RuleClosureError(
                    f"{self.describe()} maps admissible {u!r} to {image!r}, "
                    f"which is not admissible in the domain"
                )


@dataclass(frozen=True)
class OrbitSummary:
    preperiod: int
    period: int
    cycle: tuple[PeriodicConfig, ...]
    transient: tuple[PeriodicConfig, ...] = ()

    def state(self, n: int) -> PeriodicConfig:
        """F^n(x)."""
        if n < self.preperiod:
            return self.transient[n]
        return self.cycle[(n - self.preperiod) % self.period]


def apply_window(rule: LocalRule, u: Word) -> Word:
    if len(u) < rule.width:
        raise WindowTooShortError(
            f"window {u!r} has length {len(u)}, radius {rule.radius} needs at least {rule.width}"
        )
    return rule.alphabet.decode(rule.apply_codes(rule.alphabet.encode(u)))


def apply_window_n(rule: LocalRule, u: Word, n: int) -> Word:
    for _ in range(n):
        u = apply_window(rule, u)
    return u


def compose_power(rule: LocalRule, n: int, *, caps: Caps = DEFAULT_CAPS) -> LocalRule:
    """F^n as a block map of radius n·r."""
    if n < 1:
        raise ValueError(f"power must be >= 1, got {n}")
    if n == 1:
        return rule
    q = rule.alphabet.size
    width = 2 * rule.radius * n + 1
    caps.check("table_entries", q**width)
    rows = all_words_array(q, width)
    for _ in range(n):
        rows = rule.apply_batch(rows)
    name = f"{rule.name}^{n}" if rule.name else ""
    return LocalRule(rule.alphabet, rule.radius * n, tuple(rows[:, 0].tolist()), domain=rule.domain, name=name)


def shift_compose(rule: LocalRule, k: int, *, caps: Caps = DEFAULT_CAPS) -> LocalRule:
    """F∘σ^{-k} as a block map of radius r + |k|."""
    r = rule.radius
    big = r + abs(k)
    q = rule.alphabet.size
    caps.check("table_entries", q ** (2 * big + 1))
    rows = all_words_array(q, 2 * big + 1)
    start = big - k - r
    out = rule.apply_batch(rows[:, start : start + rule.width])
    name = f"{rule.name}∘σ^{-k}" if rule.name else ""
    return LocalRule(rule.alphabet, big, tuple(out[:, 0].tolist()), domain=rule.domain, name=name)


def _step_periodic(rule: LocalRule, codes: tuple[int, ...]) -> tuple[int, ...]:
    n = len(codes)
    r = rule.radius
    extended = [codes[i % n] for i in range(-r, n + r)]
    return tuple(rule.apply_codes(extended))


def apply_periodic(rule: LocalRule, x: PeriodicConfig) -> PeriodicConfig:
    if not rule.domain.contains_periodic(x.generator):
        raise InadmissibleWordError(
            f"periodic point on {x.generator!r} does not lie in the rule's domain"
        )
    codes = _step_periodic(rule, rule.alphabet.encode(x.generator))
    return x.with_generator(rule.alphabet.decode(codes))


def orbit_periodic(
    rule: LocalRule, x: PeriodicConfig, max_steps: int, *, caps: Caps = DEFAULT_CAPS
) -> OrbitSummary:
    """Exact (preperiod, period) of the F-orbit of a σ-periodic point."""
    if max_steps < 1:
        raise ValueError(f"max_steps must be >= 1, got {max_steps}")
    caps.check("orbit_steps", max_steps)
    if not rule.domain.contains_periodic(x.generator):
        raise InadmissibleWordError(
            f"periodic point on {x.generator!r} does not lie in the rule's domain"
        )
    current = rule.alphabet.encode(x.generator)
    seen: dict[tuple[int, ...], int] = {current: 0}
    history = [current]
    for step in range(1, max_steps + 1):
        current = _step_periodic(rule, current)
        if current in seen:
            first = seen[current]
            configs = [x.with_generator(rule.alphabet.decode(c)) for c in history]
            cycle = tuple(configs[first:])
            logger.debug("orbit of %s: preperiod %d, period %d", x, first, step - first)
            return OrbitSummary(
                preperiod=first, period=step - first, cycle=cycle, transient=tuple(configs[:first])
            )
        seen[current] = step
        history.append(current)
    raise HorizonExceededError(
        f"no cycle within {max_steps} steps for generator {x.generator!r} "
        f"(state space has at most {rule.alphabet.size ** x.period} points)"
    )
