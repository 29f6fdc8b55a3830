"""Immutable words over small integer alphabets, plus basic combinatorial tests.

Letters are small integer ids stored as bytes (ids 0..255).  The display
mapping is fixed: id 0 is 'a', id 1 is 'b', and so on through the lowercase
ASCII letters.  Internally everything is 0-based; the public position
convention (factor references, reported occurrence positions) is 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DomainError, ParseError

MAX_ALPHABET = 256


class Word:
    """A finite immutable sequence of letter ids over a bounded alphabet."""

    __slots__ = ("_data", "_alphabet_size")

    def __init__(self, symbols: bytes | Iterable[int], alphabet_size: int | None = None):
        data = bytes(symbols)
        if alphabet_size is None:
            alphabet_size = (max(data) + 1) if data else 1
        if not 1 <= alphabet_size <= MAX_ALPHABET:
            raise DomainError(f"alphabet_size must be in [1..{MAX_ALPHABET}], got {alphabet_size}")
        if data and max(data) >= alphabet_size:
            raise DomainError(
                f"symbol id {max(data)} is not below alphabet_size {alphabet_size}"
            )
        self._data = data
        self._alphabet_size = alphabet_size

    @classmethod
    def from_text(cls, text: str) -> "Word":
        """Parse a lowercase-ASCII string with the fixed map a->0, b->1, ...

        Any other character is rejected with a ParseError naming the 1-based
        offending position.
        """
        ids = bytearray()
        for pos, ch in enumerate(text, start=1):
            if not ("a" <= ch <= "z"):
                raise ParseError(f"invalid character {ch!r} at position {pos}: expected a..z")
            ids.append(ord(ch) - ord("a"))
        return cls(bytes(ids))

    def to_text(self) -> str:
        if self._data and max(self._data) >= 26:
            raise DomainError("word uses letter ids beyond 'z'; no text form")
        return "".join(chr(ord("a") + s) for s in self._data)

    @property
    def symbols(self) -> bytes:
        return self._data

    @property
    def alphabet_size(self) -> int:
        return self._alphabet_size

    def __len__(self) -> int:
        return len(self._data)

    def __iter__(self) -> Iterator[int]:
        return iter(self._data)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word(self._data[index], self._alphabet_size)
        return self._data[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self._data == other._data

    def __hash__(self) -> int:
        return hash(self._data)

    def __add__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self._data + other._data, max(self._alphabet_size, other._alphabet_size))

    def __mul__(self, times: int) -> "Word":
        return Word(self._data * times, self._alphabet_size)

    def __repr__(self) -> str:
        try:
            return f"Word({self.to_text()!r})"
        except DomainError:
            return f"Word({list(self._data)!r})"

    def factor(self, ref: "FactorRef") -> "Word":
        ref.check_within(self)
        return Word(self._data[ref.start - 1 : ref.end], self._alphabet_size)

    def occurrences_of(self, pattern: "Word") -> tuple[int, ...]:
        """All 1-based start positions of `pattern` in this word (overlaps allowed)."""
        if len(pattern) == 0:
            raise DomainError("occurrences of the empty word are not defined")
        hits = []
        at = self._data.find(pattern._data)
        while at != -1:
            hits.append(at + 1)
            at = self._data.find(pattern._data, at + 1)
        return tuple(hits)


@dataclass(frozen=True)
class FactorRef:
    """A 1-based inclusive range [start..end] into some word."""

    start: int
    end: int

    def __post_init__(self):
        if not 1 <= self.start <= self.end:
            raise DomainError(f"factor range [{self.start}..{self.end}] is not valid")

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    def check_within(self, word: Word) -> None:
        if self.end > len(word):
            raise DomainError(
                f"factor range [{self.start}..{self.end}] exceeds word length {len(word)}"
            )


def is_primitive(w: Word) -> bool:
    """True iff w is not a non-trivial power, i.e. w is no interior factor of ww."""
    n = len(w)
    if n == 0:
        raise DomainError("primitivity is undefined for the empty word")
    doubled = w.symbols * 2
    return doubled.find(w.symbols, 1, 2 * n - 1) == -1


def primitive_root(w: Word) -> tuple[Word, int]:
    """The unique (root, exponent) with w = root**exponent and root primitive."""
    n = len(w)
    if n == 0:
        raise DomainError("the empty word has no primitive root")
    data = w.symbols
    for period in range(1, n + 1):
        if n % period:
            continue
        if data[:period] * (n // period) == data:
            return Word(data[:period], w.alphabet_size), n // period
    raise AssertionError("unreachable: every non-empty word tiles itself")


def can_cyclic_shift_right(w: Word, f: FactorRef, k: int) -> bool:
    """Whether the factor occurrence can be cyclically shifted right k positions.

    A shift by one is possible exactly when the letter entering on the right
    equals the letter leaving on the left, i.e. w[start] == w[end+1]; a shift
    by k requires k chained single shifts.  k == 0 is always possible.
    """
    if k < 0:
        raise DomainError("shift count must be non-negative")
    f.check_within(w)
    if f.end + k > len(w):
        raise DomainError(
            f"shifting [{f.start}..{f.end}] right {k} times exceeds word length {len(w)}"
        )
    data = w.symbols
    start, end = f.start, f.end
    for _ in range(k):
        if data[start - 1] != data[end]:
            return False
        start += 1
        end += 1
    return True
