"""Integer partitions: enumeration, hook-length dimensions, branching, and
the census of low-dimensional even shapes.

A partition doubles as a Ferrers shape, a cycle type, and an index for the
even Specht modules S^{2*lambda}.  All arithmetic is exact (Python ints).
"""

from __future__ import annotations

from functools import cache
from math import factorial, prod
from typing import Iterable, Iterator


class Partition:
    """A weakly decreasing sequence of positive integers.

    Canonical and immutable: two partitions are equal iff their part
    sequences are equal, so instances are usable as dict keys.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for i, p in enumerate(parts):
            if p < 1:
                raise ValueError(f"parts must be positive, got {p}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts must be weakly decreasing, got {parts}")
        self.parts = parts

    @property
    def n(self) -> int:
        """Sum of the parts."""
        return sum(self.parts)

    @property
    def length(self) -> int:
        """Number of parts, often written l(lambda)."""
        return len(self.parts)

    def multiplicity(self, i: int) -> int:
        """Number of parts equal to i."""
        return self.parts.count(i)

    def conjugate(self) -> "Partition":
        """Transpose of the Ferrers diagram."""
        if not self.parts:
            return Partition()
        cols = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                cols[j] += 1
        return Partition(cols)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"Partition{self.parts}"

    def to_text(self) -> str:
        """Dash-joined parts, e.g. "2-1"; empty partition is ""."""
        return "-".join(str(p) for p in self.parts)

    @staticmethod
    def from_text(text: str) -> "Partition":
        if not text:
            return Partition()
        return Partition(int(p) for p in text.split("-"))


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Yield all partitions of n in reverse-lexicographic order.

    The order starts at (n) and ends at (1^n); n = 0 yields the single
    empty partition.  The count equals the partition number p(n).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        yield Partition()
        return
    parts = [n]
    while True:
        yield Partition(parts)
        # find the last part > 1, decrement it, redistribute the tail greedily
        i = len(parts) - 1
        while i >= 0 and parts[i] == 1:
            i -= 1
        if i < 0:
            return
        rem = len(parts) - i  # units freed by the tail plus the decrement
        parts[i] -= 1
        del parts[i + 1:]
        while rem > 0:
            take = min(parts[-1], rem)
            parts.append(take)
            rem -= take


def partition_count(n: int) -> int:
    """p(n), by the Euler pentagonal-number recurrence."""
    return _partition_count(n)


@cache
def _partition_count(n: int) -> int:
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = n - k * (3 * k - 1) // 2
        g2 = n - k * (3 * k + 1) // 2
        if g1 < 0 and g2 < 0:
            break
        sign = -1 if k % 2 == 0 else 1
        total += sign * (_partition_count(g1) + _partition_count(g2))
        k += 1
    return total


def double(lam: Partition) -> Partition:
    """The partition (2*lam_1, 2*lam_2, ...) of 2n; all parts even."""
    return Partition(2 * p for p in lam.parts)


def z_factor(lam: Partition) -> int:
    """z_lambda = prod_i i^{m_i} m_i! over distinct part sizes i."""
    z = 1
    for i in set(lam.parts):
        m = lam.parts.count(i)
        z *= i**m * factorial(m)
    return z


def hook_lengths(lam: Partition) -> list[list[int]]:
    """Hook length of each cell: arm to the right plus leg below plus one."""
    conj = lam.conjugate().parts
    return [
        [lam.parts[i] - j + conj[j] - i - 1 for j in range(lam.parts[i])]
        for i in range(len(lam.parts))
    ]


def dimension(lam: Partition) -> int:
    """Dimension of the irreducible S_n module of shape lambda (hook rule)."""
    return _dimension(lam.parts)


@cache
def _dimension(parts: tuple[int, ...]) -> int:
    lam = Partition(parts)
    num = factorial(lam.n)
    den = prod(h for row in hook_lengths(lam) for h in row)
    d, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"hook product does not divide {lam.n}! for {parts}")
    return d


def fixed_point_count(lam: Partition) -> int:
    """Number of parts equal to 1, written fp(lambda)."""
    return lam.parts.count(1)


def branch_down(lam: Partition) -> set[Partition]:
    """All shapes obtained by removing one corner cell (hook length 1).

    The result has one shape per distinct part size.
    """
    if not lam.parts:
        raise ValueError("cannot remove a cell from the empty partition")
    out = set()
    parts = lam.parts
    for i in range(len(parts)):
        below = parts[i + 1] if i + 1 < len(parts) else 0
        if parts[i] > below:
            child = list(parts)
            child[i] -= 1
            if child[i] == 0:
                child.pop()
            out.add(Partition(child))
    return out


def even_census_below(n: int, threshold: int) -> list[tuple[Partition, int]]:
    """All even partitions of 2n with hook-rule dimension below threshold.

    Scans every shape 2*lambda for lambda a partition of n and returns the
    pairs (shape, dimension) with dimension < threshold, sorted by
    dimension (ties broken reverse-lexicographically).
    """
    if n < 1:
        raise ValueError("n must be positive")
    hits = [
        (shape, dim)
        for shape in (double(lam) for lam in enumerate_partitions(n))
        if (dim := dimension(shape)) < threshold
    ]
    hits.sort(key=lambda t: (t[1], tuple(-p for p in t[0].parts)))
    return hits
