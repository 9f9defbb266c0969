"""Alphabets, words, cylinders and σ-periodic configurations.

Symbols are single characters, so a word is a plain `str`. Every enumeration
goes through `Alphabet.words`, which yields words in lexicographic order of the
canonical symbol ordering.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

Word = str


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        symbols = tuple(self.symbols)
        if not symbols:
            raise ValueError("alphabet must be nonempty")
        for s in symbols:
            if not isinstance(s, str) or len(s) != 1:
                raise ValueError(f"alphabet symbols must be single characters, got {s!r}")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"alphabet symbols must be distinct, got {symbols!r}")
        ordered = tuple(sorted(symbols))
        object.__setattr__(self, "symbols", ordered)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(ordered)})

    @classmethod
    def of(cls, symbols: Iterable[str]) -> Alphabet:
        """`Alphabet.of("012")` or `Alphabet.of(["0", "1"])`."""
        return cls(tuple(symbols))

    @property
    def size(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __contains__(self, symbol: object) -> bool:
        return symbol in self._index

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise ValueError(f"symbol {symbol!r} is not in alphabet {''.join(self.symbols)}") from None

    def is_word(self, u: str) -> bool:
        return all(s in self._index for s in u)

    def check_word(self, u: str) -> Word:
        for i, s in enumerate(u):
            if s not in self._index:
                raise ValueError(
                    f"word {u!r} has symbol {s!r} at position {i}, "
                    f"not in alphabet {''.join(self.symbols)}"
                )
        return u

    def encode(self, u: str) -> tuple[int, ...]:
        return tuple(self.index(s) for s in u)

    def decode(self, codes: Iterable[int]) -> Word:
        return "".join(self.symbols[c] for c in codes)

    def words(self, length: int) -> Iterator[Word]:
        if length < 0:
            raise ValueError(f"word length must be >= 0, got {length}")
        for t in itertools.product(self.symbols, repeat=length):
            yield "".join(t)

    def __str__(self) -> str:
        return " ".join(self.symbols)


@dataclass(frozen=True)
class Cylinder:
    """[u]_t = {x : x(t, t+|u|-1) = u}."""

    word: Word
    position: int = 0

    def __len__(self) -> int:
        return len(self.word)

    def recentred(self) -> Cylinder:
        """The same word placed so that its centre symbol sits at 0."""
        return Cylinder(self.word, -((len(self.word) - 1) // 2))


@dataclass(frozen=True)
class PeriodicConfig:
    """σ-periodic point built on `generator`; x_i = generator[(i - phase) mod |generator|].

    `phase` is the coordinate where an occurrence of the generator starts.
    """

    generator: Word
    phase: int = 0

    def __post_init__(self) -> None:
        if not self.generator:
            raise ValueError("periodic generator must be nonempty")
        object.__setattr__(self, "phase", self.phase % len(self.generator))

    @property
    def period(self) -> int:
        return len(self.generator)

    def at(self, i: int) -> str:
        return self.generator[(i - self.phase) % len(self.generator)]

    def window(self, start: int, length: int) -> Word:
        return "".join(self.at(i) for i in range(start, start + length))

    def with_generator(self, generator: Word) -> PeriodicConfig:
        return PeriodicConfig(generator, self.phase)

    def contains_word(self, u: Word) -> bool:
        if not u:
            return True
        reps = len(u) // self.period + 2
        return u in self.generator * reps

    def __str__(self) -> str:
        return f"…{self.generator}…@{self.phase}"
