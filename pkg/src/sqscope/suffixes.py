"""Suffix-array machinery backing the fast engine.

Construction is prefix-doubling over numpy lexsort; LCE queries answer exact
longest-common-extension questions in O(1) via a sparse table over the LCP
array, so substring equality checks are deterministic (no fingerprints).
"""

from __future__ import annotations

import numpy as np


def suffix_array(data: bytes) -> np.ndarray:
    n = len(data)
    if n == 0:
        return np.empty(0, dtype=np.intp)
    rank = np.frombuffer(data, dtype=np.uint8).astype(np.int64)
    if n == 1:
        return np.zeros(1, dtype=np.intp)
    step = 1
    while True:
        key2 = np.full(n, -1, dtype=np.int64)
        key2[: n - step] = rank[step:]
        order = np.lexsort((key2, rank))
        r_sorted = rank[order]
        k_sorted = key2[order]
        bumps = (r_sorted[1:] != r_sorted[:-1]) | (k_sorted[1:] != k_sorted[:-1])
        new_sorted = np.concatenate(([0], np.cumsum(bumps)))
        if new_sorted[-1] == n - 1:
            return order.astype(np.intp)
        rank = np.empty(n, dtype=np.int64)
        rank[order] = new_sorted
        step *= 2


def lcp_array(data: bytes, sa: np.ndarray) -> np.ndarray:
    """Kasai LCP: lcp[t] = common-prefix length of suffixes sa[t-1] and sa[t]."""
    n = len(sa)
    lcp = [0] * n
    rank = [0] * n
    sa_list = sa.tolist()
    for t, s in enumerate(sa_list):
        rank[s] = t
    h = 0
    for i in range(n):
        t = rank[i]
        if t == 0:
            h = 0
            continue
        j = sa_list[t - 1]
        while i + h < n and j + h < n and data[i + h] == data[j + h]:
            h += 1
        lcp[t] = h
        if h:
            h -= 1
    return np.array(lcp, dtype=np.int64)


class LceIndex:
    """O(1) longest-common-extension queries between suffixes of one word."""

    def __init__(self, data: bytes):
        self.n = len(data)
        self.sa = suffix_array(data)
        self.rank = np.empty(self.n, dtype=np.int64)
        self.rank[self.sa] = np.arange(self.n)
        lcp = lcp_array(data, self.sa)
        levels = max(1, self.n.bit_length())
        table = np.full((levels, max(self.n, 1)), np.iinfo(np.int64).max, dtype=np.int64)
        if self.n:
            table[0, : self.n] = lcp
        for lev in range(1, levels):
            half = 1 << (lev - 1)
            upto = self.n - (1 << lev) + 1
            if upto <= 0:
                break
            table[lev, :upto] = np.minimum(table[lev - 1, :upto], table[lev - 1, half : half + upto])
        self._table = table
        logs = np.zeros(self.n + 2, dtype=np.int64)
        for v in range(2, self.n + 2):
            logs[v] = logs[v >> 1] + 1
        self._logs = logs

    def _range_min(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        """Min of lcp[lo..hi] inclusive, vectorized; requires lo <= hi."""
        span = hi - lo + 1
        lev = self._logs[span]
        left = self._table[lev, lo]
        right = self._table[lev, hi - (1 << lev) + 1]
        return np.minimum(left, right)

    def lce_sorted_pairs(self, starts_lo: np.ndarray, starts_hi: np.ndarray) -> np.ndarray:
        """LCE for suffix pairs already ordered so rank[starts_lo] < rank[starts_hi]."""
        return self._range_min(self.rank[starts_lo] + 1, self.rank[starts_hi])

    def lce(self, i: int, j: int) -> int:
        if i == j:
            return self.n - i
        ri, rj = int(self.rank[i]), int(self.rank[j])
        if ri > rj:
            ri, rj = rj, ri
        return int(self._range_min(np.array([ri + 1]), np.array([rj]))[0])
