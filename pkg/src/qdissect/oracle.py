"""Overpartition counts straight from the combinatorics.

Nothing here touches eta quotients or series multiplication: each part size
``s`` is folded into a count array by in-place sweeps, an overlined copy as
the factor ``(1 + q^s)`` and unlimited non-overlined copies as
``1 / (1 - q^s)``.  This is the independent ground truth for every
congruence check.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CountTable:
    l: int  # 0: no restriction on non-overlined parts
    nmax: int
    counts: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        return self.counts[n]

    def __len__(self):
        return len(self.counts)


def _sweep(l: int, nmax: int) -> list[int]:
    c = np.empty(nmax + 1, dtype=object)
    c[:] = 0
    c[0] = 1
    for s in range(1, nmax + 1):
        # overlined s: at most one copy; right side is read before the write
        c[s:] = c[s:] + c[: nmax + 1 - s]
        if l and s % l == 0:
            continue
        # non-overlined s: any multiplicity.  c[j] += c[j - s] in increasing
        # j, done a block of s entries at a time
        for j in range(s, nmax + 1, s):
            end = min(j + s, nmax + 1)
            c[j:end] += c[j - s : end - s]
    return [int(v) for v in c]


_cache: dict[int, list[int]] = {}
_lock = threading.Lock()


def _counts(l: int, nmax: int) -> list[int]:
    with _lock:
        have = _cache.get(l)
        if have is None or len(have) <= nmax:
            have = _sweep(l, nmax)
            _cache[l] = have
        return have[: nmax + 1]


def count_restricted(l: int, nmax: int) -> CountTable:
    """Overpartitions of ``0..nmax`` whose non-overlined parts avoid
    multiples of ``l``."""
    if l < 1:
        raise ValueError("l must be >= 1; use count_overpartitions for l = 0")
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    return CountTable(l, nmax, tuple(_counts(l, nmax)))


def count_overpartitions(nmax: int) -> CountTable:
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    return CountTable(0, nmax, tuple(_counts(0, nmax)))


def enumerate_overpartitions(n: int, l: int = 0):
    """Yield every overpartition of ``n`` as a tuple of ``(part, overlined)``
    pairs, largest part first.  Exponential; meant for ``n <= 12``."""

    def rec(remaining, max_part):
        if remaining == 0:
            yield ()
            return
        for s in range(min(remaining, max_part), 0, -1):
            # overlined copy (at most one) followed by j plain copies
            for over in (True, False):
                for j in range(0, remaining // s + 1):
                    used = j * s + (s if over else 0)
                    if used == 0 or used > remaining:
                        continue
                    if j and l and s % l == 0:
                        continue
                    head = ((s, True),) if over else ()
                    head += ((s, False),) * j
                    for tail in rec(remaining - used, s - 1):
                        yield head + tail

    yield from rec(n, n)


def count_by_enumeration(l: int, nmax: int) -> list[int]:
    return [sum(1 for _ in enumerate_overpartitions(n, l)) for n in range(nmax + 1)]
