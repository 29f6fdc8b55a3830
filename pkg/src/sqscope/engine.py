"""Distinct-square enumeration engines and double-square factorization.

Two interchangeable engines compute the same observable results:

* ``oracle`` — definition-driven: every root length, every start, half
  equality tested by direct symbol comparison.  No shortcuts, no fingerprints;
  this is the ground truth everything else is checked against.
* ``fast`` — quadratic worst case, using exact O(1) substring equality from a
  suffix-array LCE index plus vectorized per-length scans.  Output is
  identical to the oracle's, element for element.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import DomainError, InternalInvariantError
from .suffixes import LceIndex
from .words import Word, is_primitive

ENGINES = ("oracle", "fast")


@dataclass(frozen=True)
class SquareOccurrence:
    """One occurrence of a square: 1-based start plus root length."""

    position: int
    root_length: int


@dataclass(frozen=True)
class DistinctSquareRecord:
    """A distinct square content along with the start of its rightmost occurrence."""

    root: Word
    last_position: int


@dataclass(frozen=True)
class SquareSequence:
    """The digit string s_1..s_n counting last square occurrences per position."""

    digits: str

    def __post_init__(self):
        if self.digits.strip("012"):
            raise DomainError("square sequence digits must be 0, 1 or 2")

    def __str__(self) -> str:
        return self.digits

    def __len__(self) -> int:
        return len(self.digits)

    def digit(self, position: int) -> int:
        """Digit at a 1-based position."""
        return int(self.digits[position - 1])

    @property
    def total(self) -> int:
        return sum(int(d) for d in self.digits)


@dataclass(frozen=True)
class DoubleSquare:
    """Two squares u^2 and U^2 beginning at the same 1-based position, |u| < |U|."""

    u: Word
    U: Word
    position: int

    def __post_init__(self):
        if not len(self.u) < len(self.U):
            raise DomainError("double square requires |u| < |U|")
        if self.U.symbols[: len(self.u)] != self.u.symbols:
            raise DomainError("double square requires u to be a prefix of U")


@dataclass(frozen=True)
class FsFactorization:
    """Canonical form (v1, v2, e1, e2): u = v1^e1 v2 and U = v1^e1 v2 v1^e2."""

    v1: Word
    v2: Word
    e1: int
    e2: int

    @property
    def u(self) -> Word:
        return self.v1 * self.e1 + self.v2

    @property
    def U(self) -> Word:
        return self.v1 * self.e1 + self.v2 + self.v1 * self.e2


@dataclass(frozen=True)
class DensityReport:
    distinct_count: int
    length: int
    density_exact: Fraction
    density_3dp: Decimal


def _require_nonempty(w: Word) -> None:
    if len(w) == 0:
        raise DomainError("operation requires a non-empty word")


def _check_engine(engine: str) -> None:
    if engine not in ENGINES:
        raise DomainError(f"unknown engine {engine!r}; expected one of {ENGINES}")


def iter_square_occurrences(w: Word) -> Iterator[SquareOccurrence]:
    """Every square occurrence in w, found by direct symbol comparison."""
    _require_nonempty(w)
    sym = w.symbols
    n = len(sym)
    for root_len in range(1, n // 2 + 1):
        for i in range(n - 2 * root_len + 1):
            if sym[i] == sym[i + root_len] and sym[i : i + root_len] == sym[i + root_len : i + 2 * root_len]:
                yield SquareOccurrence(i + 1, root_len)


def _oracle_last_table(w: Word) -> dict[bytes, int]:
    """Root content -> 0-based start of its last occurrence (definition-driven)."""
    sym = w.symbols
    n = len(sym)
    last: dict[bytes, int] = {}
    for root_len in range(1, n // 2 + 1):
        two = 2 * root_len
        for i in range(n - two + 1):
            if sym[i] == sym[i + root_len] and sym[i : i + root_len] == sym[i + root_len : i + two]:
                last[sym[i : i + root_len]] = i
    return last


def _fast_last_table(w: Word) -> dict[bytes, int]:
    """Same mapping as the oracle, via LCE grouping; exact comparisons only."""
    sym_bytes = w.symbols
    n = len(sym_bytes)
    last: dict[bytes, int] = {}
    if n < 2:
        return last
    sym = np.frombuffer(sym_bytes, dtype=np.uint8)
    index = LceIndex(sym_bytes)
    rank = index.rank
    for root_len in range(1, n // 2 + 1):
        matches = sym[:-root_len] == sym[root_len:]
        sums = np.concatenate(([0], np.cumsum(matches)))
        starts = np.nonzero(sums[root_len:] - sums[: -root_len] == root_len)[0]
        if starts.size == 0:
            continue
        if starts.size == 1:
            i = int(starts[0])
            last[sym_bytes[i : i + root_len]] = i
            continue
        by_rank = starts[np.argsort(rank[starts])]
        same_content = index.lce_sorted_pairs(by_rank[:-1], by_rank[1:]) >= root_len
        heads = np.nonzero(np.concatenate(([True], ~same_content)))[0]
        for i in np.maximum.reduceat(by_rank, heads).tolist():
            last[sym_bytes[i : i + root_len]] = i
    return last


def enumerate_distinct_squares(w: Word, engine: str = "fast") -> list[DistinctSquareRecord]:
    """One record per distinct square content, carrying its rightmost start.

    The result is sorted by (last_position, root length) and is identical for
    both engines.
    """
    _require_nonempty(w)
    _check_engine(engine)
    table = _oracle_last_table(w) if engine == "oracle" else _fast_last_table(w)
    records = [
        DistinctSquareRecord(Word(root, w.alphabet_size), i + 1) for root, i in table.items()
    ]
    records.sort(key=lambda r: (r.last_position, len(r.root)))
    return records


def distinct_square_sequence(w: Word, engine: str = "fast") -> SquareSequence:
    _require_nonempty(w)
    counts = [0] * len(w)
    for record in enumerate_distinct_squares(w, engine):
        counts[record.last_position - 1] += 1
    if counts and max(counts) > 2:
        raise InternalInvariantError(
            f"position {counts.index(max(counts)) + 1} hosts {max(counts)} last occurrences; "
            "the two-per-position bound is violated, which signals an engine bug"
        )
    return SquareSequence("".join(str(c) for c in counts))


def fs_positions(w: Word, engine: str = "fast") -> list[DoubleSquare]:
    """Ascending double-square positions: everywhere two last occurrences begin."""
    _require_nonempty(w)
    at: dict[int, list[Word]] = {}
    for record in enumerate_distinct_squares(w, engine):
        at.setdefault(record.last_position, []).append(record.root)
    out = []
    for position in sorted(at):
        roots = at[position]
        if len(roots) < 2:
            continue
        if len(roots) > 2:
            raise InternalInvariantError(f"position {position} hosts {len(roots)} last occurrences")
        u, U = sorted(roots, key=len)
        if not len(u) < len(U) < 2 * len(u):
            raise InternalInvariantError(
                f"double square at {position} has root lengths {len(u)}, {len(U)} "
                "outside |u| < |U| < 2|u|"
            )
        out.append(DoubleSquare(u, U, position))
    return out


def _round_half_up_3dp(count: int, length: int) -> Decimal:
    thousandths = (2000 * count + length) // (2 * length)
    return Decimal(thousandths).scaleb(-3)


def density(w: Word, engine: str = "fast") -> DensityReport:
    _require_nonempty(w)
    count = len(enumerate_distinct_squares(w, engine))
    return DensityReport(
        distinct_count=count,
        length=len(w),
        density_exact=Fraction(count, len(w)),
        density_3dp=_round_half_up_3dp(count, len(w)),
    )


def expand_fs(f: FsFactorization) -> Word:
    """The square (v1^e1 v2 v1^e2)^2; the shorter square occurs in it only at position 1."""
    if not is_primitive(f.v1):
        raise DomainError("invalid factorization: v1 must be primitive")
    if len(f.v2) == 0 or len(f.v2) >= len(f.v1) or f.v1.symbols[: len(f.v2)] != f.v2.symbols:
        raise DomainError("invalid factorization: v2 must be a non-empty proper prefix of v1")
    if not 1 <= f.e2 <= f.e1:
        raise DomainError("invalid factorization: exponents must satisfy 1 <= e2 <= e1")
    return f.U * 2


def fs_factorize(u: Word, U: Word) -> FsFactorization:
    """Recover the unique (v1, v2, e1, e2) behind a double square (u, U).

    Candidate root lengths |v1| = (|U|-|u|)/e2 are tried for e2 = 1, 2, ...;
    exactly one must succeed, otherwise the engine itself is at fault.
    """
    if len(u) == 0:
        raise DomainError("u must be non-empty")
    if U.symbols[: len(u)] != u.symbols or len(u) >= len(U):
        raise DomainError("u must be a proper prefix of U")
    if not len(U) < 2 * len(u):
        raise DomainError("double square must satisfy |U| < 2|u|")
    if len((U * 2).occurrences_of(u * 2)) != 1:
        raise DomainError("u^2 must have no occurrence in U^2 beyond position 1")

    gap = len(U) - len(u)
    found: list[FsFactorization] = []
    for e2 in range(1, gap + 1):
        if gap % e2:
            continue
        period = gap // e2
        v1 = U[len(u) : len(u) + period]
        if U[len(u) :] != v1 * e2 or not is_primitive(v1):
            continue
        e1 = 0
        while (e1 + 1) * period < len(u) and u[: (e1 + 1) * period] == v1 * (e1 + 1):
            e1 += 1
        v2 = u[e1 * period :]
        if len(v2) == 0 or len(v2) >= period or v1[: len(v2)] != v2:
            continue
        if not 1 <= e2 <= e1:
            continue
        found.append(FsFactorization(v1, v2, e1, e2))
    if len(found) != 1:
        raise InternalInvariantError(
            f"expected exactly one factorization of ({u!r}, {U!r}), found {len(found)}"
        )
    return found[0]


def record_as_dict(record: DistinctSquareRecord) -> dict:
    """Stable serialization shape: {root: string, lastPosition: int}."""
    return {"root": record.root.to_text(), "lastPosition": record.last_position}
