"""Perfect matchings of K_2n: canonical enumeration with O(n) rank/unrank,
the symmetric-group action, cycle types, derangement counts, and spheres.

Vertices are labeled 1..2n.  A matching is stored as a partner array;
the canonical printable form is the sorted edge list, e.g. "1-2|3-4|5-6".
"""

from __future__ import annotations

from functools import cache, lru_cache
from math import comb, factorial
from typing import Iterable, Iterator

from .partitions import Partition, enumerate_partitions, z_factor


def double_factorial(m: int) -> int:
    """m!! = m(m-2)(m-4)..., with (-1)!! = 0!! = 1."""
    if m < -1:
        raise ValueError("m!! needs m >= -1")
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def count_matchings(n: int) -> int:
    """|M_2n| = (2n-1)!!."""
    return double_factorial(2 * n - 1)


class PerfectMatching:
    """A fixed-point-free involution of {1..2n}, stored as a partner array."""

    __slots__ = ("partner",)

    def __init__(self, partner: Iterable[int]):
        partner = tuple(int(v) for v in partner)
        size = len(partner)
        if size == 0 or size % 2:
            raise ValueError("partner array must have positive even length")
        for v in range(1, size + 1):
            w = partner[v - 1]
            if not 1 <= w <= size or w == v or partner[w - 1] != v:
                raise ValueError(f"not a fixed-point-free involution: {partner}")
        self.partner = partner

    @property
    def n(self) -> int:
        return len(self.partner) // 2

    def partner_of(self, v: int) -> int:
        return self.partner[v - 1]

    def edges(self) -> list[tuple[int, int]]:
        """Edges {v, partner(v)} with v < partner(v), sorted by v."""
        return [(v, w) for v, w in enumerate(self.partner, start=1) if v < w]

    @staticmethod
    def from_edges(edges: Iterable[tuple[int, int]]) -> "PerfectMatching":
        edges = list(edges)
        partner = [0] * (2 * len(edges))
        for u, v in edges:
            partner[u - 1] = v
            partner[v - 1] = u
        return PerfectMatching(partner)

    @staticmethod
    def from_string(text: str) -> "PerfectMatching":
        """Parse "1-2|3-4|5-6"; edge and endpoint order are arbitrary."""
        edges = []
        for chunk in text.strip().split("|"):
            u, v = chunk.split("-")
            edges.append((int(u), int(v)))
        return PerfectMatching.from_edges(edges)

    def __str__(self) -> str:
        return "|".join(f"{u}-{v}" for u, v in self.edges())

    def __repr__(self) -> str:
        return f"PerfectMatching({self})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PerfectMatching) and self.partner == other.partner

    def __hash__(self) -> int:
        return hash(self.partner)


class Permutation:
    """A bijection of {1..size}, stored as the image tuple."""

    __slots__ = ("image",)

    def __init__(self, image: Iterable[int]):
        image = tuple(int(v) for v in image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise ValueError(f"not a permutation of 1..{len(image)}: {image}")
        self.image = image

    @staticmethod
    def identity(size: int) -> "Permutation":
        return Permutation(range(1, size + 1))

    @staticmethod
    def transposition(size: int, a: int, b: int) -> "Permutation":
        image = list(range(1, size + 1))
        image[a - 1], image[b - 1] = b, a
        return Permutation(image)

    def __call__(self, v: int) -> int:
        return self.image[v - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (self * other)(v) = self(other(v))."""
        img = self.image
        return Permutation(img[w - 1] for w in other.image)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for v, w in enumerate(self.image, start=1):
            inv[w - 1] = v
        return Permutation(inv)

    def cycle_type(self) -> Partition:
        """Cycle type of the permutation itself, a partition of size."""
        img = self.image
        seen = bytearray(len(img))
        lens = []
        for s in range(len(img)):
            if seen[s]:
                continue
            length = 0
            v = s
            while not seen[v]:
                seen[v] = 1
                length += 1
                v = img[v] - 1
            lens.append(length)
        lens.sort(reverse=True)
        return Partition(lens)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.image == other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def __repr__(self) -> str:
        return f"Permutation{self.image}"


def identity_matching(n: int) -> PerfectMatching:
    """The base point 1-2|3-4|...|(2n-1)-2n."""
    if n < 1:
        raise ValueError("n must be positive")
    partner = []
    for i in range(1, n + 1):
        partner += [2 * i, 2 * i - 1]
    return PerfectMatching(partner)


def apply_permutation(sigma: Permutation, m: PerfectMatching) -> PerfectMatching:
    """The action: edges {u, v} become {sigma(u), sigma(v)}."""
    img = sigma.image
    if len(img) != len(m.partner):
        raise ValueError("permutation and matching sizes differ")
    partner = [0] * len(img)
    for v, w in enumerate(m.partner, start=1):
        partner[img[v - 1] - 1] = img[w - 1]
    return PerfectMatching(partner)


def enumerate_matchings(n: int) -> Iterator[PerfectMatching]:
    """Yield all (2n-1)!! matchings in canonical (rank) order.

    Order: the lowest unmatched vertex is paired with each larger available
    vertex in increasing order, recursively.  Index 0 is the identity
    matching.  This streams; use all_matchings() for a cached list.
    """
    for partner in _enumerate_partner_tuples(n):
        yield PerfectMatching(partner)


def _enumerate_partner_tuples(n: int) -> Iterator[tuple[int, ...]]:
    if n < 1:
        raise ValueError("n must be positive")
    partner = [0] * (2 * n)

    def rec(avail: list[int]) -> Iterator[tuple[int, ...]]:
        if not avail:
            yield tuple(partner)
            return
        v = avail[0]
        for i in range(1, len(avail)):
            w = avail[i]
            partner[v - 1] = w
            partner[w - 1] = v
            yield from rec(avail[1:i] + avail[i + 1:])

    yield from rec(list(range(1, 2 * n + 1)))


@lru_cache(maxsize=4)
def all_matchings(n: int) -> tuple[tuple[int, ...], ...]:
    """Materialized partner tuples in canonical order (memory: ~2n ints per
    matching; intended for n <= 7, streams beyond that via
    enumerate_matchings)."""
    return tuple(_enumerate_partner_tuples(n))


def unrank_matching(n: int, index: int) -> PerfectMatching:
    """Matching at position index of the canonical order, in O(n^2)."""
    if not 0 <= index < count_matchings(n):
        raise ValueError(f"index {index} out of range for n={n}")
    avail = list(range(1, 2 * n + 1))
    partner = [0] * (2 * n)
    for r in range(n, 0, -1):
        block = double_factorial(2 * r - 3)
        digit, index = divmod(index, block)
        v = avail.pop(0)
        w = avail.pop(digit)
        partner[v - 1] = w
        partner[w - 1] = v
    return PerfectMatching(partner)


def rank_matching(m: PerfectMatching) -> int:
    """Position of m in the canonical order; inverse of unrank_matching."""
    avail = list(range(1, 2 * m.n + 1))
    index = 0
    for r in range(m.n, 0, -1):
        v = avail.pop(0)
        w = m.partner[v - 1]
        digit = avail.index(w)
        avail.pop(digit)
        index += digit * double_factorial(2 * r - 3)
    return index


def cycle_type(m1: PerfectMatching, m2: PerfectMatching) -> Partition:
    """Half cycle lengths of the multiset union m1 + m2, a partition of n.

    Shared edges count as doubled 2-cycles, i.e. parts of size 1; the
    function is symmetric in its arguments.
    """
    p, q = m1.partner, m2.partner
    if len(p) != len(q):
        raise ValueError("matchings have different sizes")
    return _cycle_type_partners(p, q)


def _cycle_type_partners(p: tuple[int, ...], q: tuple[int, ...]) -> Partition:
    size = len(p)
    seen = bytearray(size)
    lens = []
    for s in range(1, size + 1):
        if seen[s - 1]:
            continue
        length = 0
        v = s
        while not seen[v - 1]:
            seen[v - 1] = 1
            u = p[v - 1]
            seen[u - 1] = 1
            length += 1
            v = q[u - 1]
        lens.append(length)
    lens.sort(reverse=True)
    return Partition(lens)


def derangement_count_recurrence(n: int) -> int:
    """D_2n via D_2n = 2(n-1)(D_{2(n-1)} + D_{2(n-2)}), D_0 = 1, D_2 = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    prev2, prev1 = 1, 0
    for k in range(2, n + 1):
        prev2, prev1 = prev1, 2 * (k - 1) * (prev1 + prev2)
    return prev1


def derangement_count_sieve(n: int) -> int:
    """D_2n by inclusion-exclusion over forced shared edges."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum(
        (-1) ** k * comb(n, k) * double_factorial(2 * (n - k) - 1)
        for k in range(n + 1)
    )


def sphere_size(lam: Partition) -> int:
    """|Omega_lambda| = 2^n n! / (2^{l(lambda)} z_lambda)."""
    n = lam.n
    num = 2**n * factorial(n)
    den = 2**lam.length * z_factor(lam)
    size, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"sphere size formula not integral at {lam}")
    return size


def sphere_members(lam: Partition, m0: PerfectMatching) -> list[PerfectMatching]:
    """All matchings at cycle type lambda from m0 (desk scale n <= 7)."""
    n = m0.n
    if lam.n != n:
        raise ValueError("partition size and matching size differ")
    p0 = m0.partner
    return [
        PerfectMatching(p)
        for p in all_matchings(n)
        if _cycle_type_partners(p0, p) == lam
    ]


@cache
def sphere_sizes_by_type(n: int) -> dict[Partition, int]:
    """sphere_size for every cycle type at one n, from the formula."""
    return {lam: sphere_size(lam) for lam in enumerate_partitions(n)}
