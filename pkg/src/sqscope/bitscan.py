"""Bitmask scanning of binary words for exhaustive searches.

A binary word of length n is an int whose bit i (counting from 0) holds the
letter at position i.  These routines answer last-occurrence questions orders
of magnitude faster than materializing Word objects, which matters when a
search visits hundreds of thousands of words.  They are cross-validated
against the definition-driven engine in the test suite.
"""

from __future__ import annotations

from .words import Word


def word_from_bits(x: int, n: int) -> Word:
    return Word(bytes((x >> i) & 1 for i in range(n)), 2)


def bits_from_word(w: Word) -> int:
    x = 0
    for i, s in enumerate(w.symbols):
        if s:
            x |= 1 << i
    return x


def _windows(mask: int, width: int) -> int:
    """Bit i of the result is the AND of mask bits i..i+width-1."""
    have = 1
    while have < width and mask:
        step = min(have, width - have)
        mask &= mask >> step
        have += step
    return mask


def square_starts(x: int, n: int, root_len: int) -> int:
    """Bitmask of 0-based starts of squares with the given root length."""
    if 2 * root_len > n:
        return 0
    eq = ~(x ^ (x >> root_len)) & ((1 << (n - root_len)) - 1)
    return _windows(eq, root_len) & ((1 << (n - 2 * root_len + 1)) - 1)


def has_square_at(x: int, n: int, pos: int, root_len: int) -> bool:
    """Square with the given root length starting at 0-based pos."""
    if pos + 2 * root_len > n:
        return False
    return ((x >> pos) ^ (x >> (pos + root_len))) & ((1 << root_len) - 1) == 0


def last_occurrence_profile(x: int, n: int) -> dict[int, list[int]]:
    """Map 0-based position -> sorted root lengths of squares last occurring there."""
    profile: dict[int, list[int]] = {}
    for root_len in range(1, n // 2 + 1):
        starts = square_starts(x, n, root_len)
        if not starts:
            continue
        seen: dict[int, int] = {}
        content_mask = (1 << root_len) - 1
        while starts:
            low = starts & -starts
            i = low.bit_length() - 1
            starts ^= low
            seen[(x >> i) & content_mask] = i
        for i in seen.values():
            profile.setdefault(i, []).append(root_len)
    for lengths in profile.values():
        lengths.sort()
    return profile


def max_digit(x: int, n: int) -> int:
    """Largest per-position count of last square occurrences in the word."""
    profile = last_occurrence_profile(x, n)
    return max((len(v) for v in profile.values()), default=0)


def has_fs_prefix(x: int, n: int, m: int, len_u: int, len_big: int) -> bool:
    """Positions 0..m-1 each host exactly the last occurrences of a len_u-root
    and a len_big-root square."""
    for i in range(m):
        if not (has_square_at(x, n, i, len_u) and has_square_at(x, n, i, len_big)):
            return False
    profile = last_occurrence_profile(x, n)
    return all(profile.get(i) == [len_u, len_big] for i in range(m))


def preserved_fs_prefix_lengths(x: int, n: int, m: int) -> tuple[int, int] | None:
    """If positions 0..m-1 all host two last occurrences with one common root
    pair, return that (shorter, longer) pair; else None."""
    candidates = None
    for i in range(m):
        lengths = [
            L
            for L in range(1, (n - i) // 2 + 1)
            if has_square_at(x, n, i, L)
        ]
        pairs = {
            (lu, lb)
            for lu in lengths
            for lb in lengths
            if lu < lb < 2 * lu
        }
        candidates = pairs if candidates is None else candidates & pairs
        if not candidates:
            return None
    profile = last_occurrence_profile(x, n)
    for lu, lb in sorted(candidates):
        if all(profile.get(i) == [lu, lb] for i in range(m)):
            return lu, lb
    return None
