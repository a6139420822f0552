"""
Reverse lexicographic enumeration of the exponent tuples of one total degree.

alpha < alpha' when, at the last coordinate where they differ, alpha is
smaller.  The enumeration starts at (d, 0, ..., 0) and ends at
(0, ..., 0, d); indices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import DegreeMismatch, IndexOutOfRange


def slice_count(k: int, d: int) -> int:
    """Number of k-tuples of nonnegative integers summing to d, i.e. C(d+k-1, d)."""
    if k < 1 or d < 0:
        raise ValueError("need k >= 1 and d >= 0")
    count = 1
    for u in range(1, d + 1):
        count = count * (u + k - 1) // u
    return count


def _slice_counts(k: int, d: int) -> list:
    """[slice_count(k, u) for u in 0..d], each from its predecessor."""
    counts = [1]
    for u in range(1, d + 1):
        counts.append(counts[-1] * (u + k - 1) // u)
    return counts


def unrank(n: int, d: int, idx: int) -> tuple:
    """The idx-th (0-based) degree-d exponent tuple of length n."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    if not 0 <= idx < slice_count(n, d):
        raise IndexOutOfRange(f"index {idx} outside [0, {slice_count(n, d)})")
    alpha = [0] * n
    for k in range(n, 1, -1):
        # tuples with last coordinate v form a block of size |A_{d-v}^{k-1}|
        counts = _slice_counts(k - 1, d)
        v = 0
        while idx >= counts[d - v]:
            idx -= counts[d - v]
            v += 1
        alpha[k - 1] = v
        d -= v
    alpha[0] = d
    return tuple(alpha)


def rank(n: int, d: int, alpha: Sequence[int]) -> int:
    """Inverse of ``unrank``."""
    alpha = tuple(alpha)
    if len(alpha) != n:
        raise DegreeMismatch(f"tuple of length {len(alpha)}, expected {n}")
    if sum(alpha) != d or any(a < 0 for a in alpha):
        raise DegreeMismatch(f"{alpha} does not have total degree {d}")
    idx = 0
    for k in range(n, 1, -1):
        v = alpha[k - 1]
        if v:
            counts = _slice_counts(k - 1, d)
            idx += sum(counts[d - u] for u in range(v))
        d -= v
    return idx


@lru_cache(maxsize=32)
def slice_table(n: int, d: int) -> tuple:
    """(all tuples in order, tuple -> index map) for repeated lookups at one (n, d)."""
    tuples = []
    for idx in range(slice_count(n, d)):
        tuples.append(unrank(n, d, idx))
    return tuple(tuples), {a: i for i, a in enumerate(tuples)}


@dataclass(frozen=True)
class DegreeSlice:
    """All exponent tuples of length n and total degree d, in reverse lex order."""

    n: int
    d: int

    @property
    def size(self) -> int:
        return slice_count(self.n, self.d)

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[tuple]:
        for i in range(self.size):
            yield unrank(self.n, self.d, i)

    def rank(self, alpha) -> int:
        return rank(self.n, self.d, alpha)

    def unrank(self, idx: int) -> tuple:
        return unrank(self.n, self.d, idx)
