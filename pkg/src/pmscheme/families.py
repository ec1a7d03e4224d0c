"""Families of perfect matchings: canonical and near-extremal constructions,
intersection predicates, restrictions, exact projections onto the even
modules, distance to the top-plus-bottom eigenspace, and the best-edge scan.

A family is a bitset over the canonical matching enumeration, so set algebra
is cheap up to n = 6 (10395 bits).
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .matchings import (
    PerfectMatching,
    Permutation,
    _cycle_type_partners,
    all_matchings,
    apply_permutation,
    count_matchings,
    cycle_type,
    double_factorial,
    identity_matching,
    rank_matching,
)
from .partitions import Partition, dimension, double, enumerate_partitions
from .spherical import SchemeTable, scheme_table


@lru_cache(maxsize=4)
def edge_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """All edges of K_2n as (i, j) with i < j, in lexicographic order."""
    return tuple(
        (i, j) for i in range(1, 2 * n + 1) for j in range(i + 1, 2 * n + 1)
    )


@lru_cache(maxsize=4)
def edge_ids(n: int) -> dict[tuple[int, int], int]:
    return {e: k for k, e in enumerate(edge_pairs(n))}


@lru_cache(maxsize=4)
def matching_edge_masks(n: int) -> tuple[int, ...]:
    """Per canonical matching, the bitmask of its edges over edge_pairs(n)."""
    ids = edge_ids(n)
    masks = []
    for p in all_matchings(n):
        mask = 0
        for v, w in enumerate(p, start=1):
            if v < w:
                mask |= 1 << ids[(v, w)]
        masks.append(mask)
    return tuple(masks)


class Family:
    """An immutable set of matchings at fixed n, stored as an index bitset."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        if bits < 0 or bits >> count_matchings(n):
            raise ValueError("bitset has members beyond (2n-1)!!")
        self.n = n
        self.bits = bits

    @staticmethod
    def from_indices(n: int, indices: Iterable[int]) -> "Family":
        bits = 0
        top = count_matchings(n)
        for i in indices:
            if not 0 <= i < top:
                raise ValueError(f"index {i} out of range")
            bits |= 1 << i
        return Family(n, bits)

    @staticmethod
    def from_matchings(mats: Iterable[PerfectMatching]) -> "Family":
        mats = list(mats)
        if not mats:
            raise ValueError("cannot infer n from an empty iterable; use Family(n)")
        n = mats[0].n
        return Family.from_indices(n, (rank_matching(m) for m in mats))

    @staticmethod
    def from_strings(n: int, texts: Iterable[str]) -> "Family":
        return Family.from_indices(
            n, (rank_matching(PerfectMatching.from_string(t)) for t in texts)
        )

    @staticmethod
    def full(n: int) -> "Family":
        return Family(n, (1 << count_matchings(n)) - 1)

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def members(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def to_indices(self) -> list[int]:
        return list(self.members())

    def to_strings(self) -> list[str]:
        mats = all_matchings(self.n)
        return sorted(str(PerfectMatching(mats[i])) for i in self.members())

    def __len__(self) -> int:
        return self.size

    def __contains__(self, index: int) -> bool:
        return bool(self.bits >> index & 1)

    def __iter__(self) -> Iterator[int]:
        return self.members()

    def _check_same_n(self, other: "Family") -> None:
        if self.n != other.n:
            raise ValueError("families live at different n")

    def __and__(self, other: "Family") -> "Family":
        self._check_same_n(other)
        return Family(self.n, self.bits & other.bits)

    def __or__(self, other: "Family") -> "Family":
        self._check_same_n(other)
        return Family(self.n, self.bits | other.bits)

    def __sub__(self, other: "Family") -> "Family":
        self._check_same_n(other)
        return Family(self.n, self.bits & ~other.bits)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Family) and self.n == other.n and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def __repr__(self) -> str:
        return f"Family(n={self.n}, size={self.size})"


def canonical_family(i: int, j: int, n: int) -> Family:
    """F_ij: every matching containing the edge {i, j}; size (2n-3)!!."""
    if i == j:
        raise ValueError("an edge needs two distinct endpoints")
    if not (1 <= i <= 2 * n and 1 <= j <= 2 * n):
        raise ValueError(f"vertices must lie in 1..{2 * n}")
    bits = 0
    for idx, p in enumerate(all_matchings(n)):
        if p[i - 1] == j:
            bits |= 1 << idx
    return Family(n, bits)


def h_family(n: int) -> Family:
    """The near-extremal intersecting family built over the edge {1, 2}:
    members of F_12 that meet (1 3)m*, plus (1 3)m* and (1 4)m* themselves.

    Not contained in any canonical family once n >= 4; its size satisfies
    |H| - 2 = (2n-3)!! - D_{2(n-1)} - D_{2(n-2)}.
    """
    if n < 3:
        raise ValueError("the construction needs n >= 3")
    m_star = identity_matching(n)
    swapped_13 = apply_permutation(Permutation.transposition(2 * n, 1, 3), m_star)
    swapped_14 = apply_permutation(Permutation.transposition(2 * n, 1, 4), m_star)
    masks = matching_edge_masks(n)
    target = masks[rank_matching(swapped_13)]
    bits = 0
    for idx in canonical_family(1, 2, n).members():
        if masks[idx] & target:
            bits |= 1 << idx
    bits |= 1 << rank_matching(swapped_13)
    bits |= 1 << rank_matching(swapped_14)
    return Family(n, bits)


def is_intersecting(family: Family) -> bool:
    """True iff every two members share an edge (equivalently, the family is
    independent in the derangement graph)."""
    masks = matching_edge_masks(family.n)
    chosen = [masks[i] for i in family.members()]
    for a in range(len(chosen)):
        ma = chosen[a]
        for b in range(a + 1, len(chosen)):
            if not ma & chosen[b]:
                return False
    return True


def is_t_intersecting(family: Family, t: int) -> bool:
    """True iff every two members share at least t edges."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    masks = matching_edge_masks(family.n)
    chosen = [masks[i] for i in family.members()]
    for a in range(len(chosen)):
        ma = chosen[a]
        for b in range(a + 1, len(chosen)):
            if (ma & chosen[b]).bit_count() < t:
                return False
    return True


def restriction(family: Family, i: int, j: int) -> Family:
    """The subfamily whose members contain the edge {i, j}."""
    if i == j:
        raise ValueError("an edge needs two distinct endpoints")
    mats = all_matchings(family.n)
    bits = 0
    for idx in family.members():
        if mats[idx][i - 1] == j:
            bits |= 1 << idx
    return Family(family.n, bits)


def restriction_sizes(family: Family) -> dict[tuple[int, int], int]:
    """|F restricted to e| for every edge e with a nonzero restriction."""
    mats = all_matchings(family.n)
    sizes: dict[tuple[int, int], int] = {}
    for idx in family.members():
        p = mats[idx]
        for v, w in enumerate(p, start=1):
            if v < w:
                sizes[(v, w)] = sizes.get((v, w), 0) + 1
    return sizes


def restriction_product_check(family: Family) -> dict:
    """Scan all vertex-sharing edge pairs {i,j}, {i,k} for the bound
    |F|_ij| * |F|_ik| <= ((2n-5)!!)^2; reports the maximum and a witness."""
    n = family.n
    if n < 3:
        raise ValueError("the bound needs n >= 3")
    limit = double_factorial(2 * n - 5) ** 2
    sizes = restriction_sizes(family)
    at_vertex: dict[int, list[tuple[int, tuple[int, int]]]] = {}
    for (i, j), c in sizes.items():
        at_vertex.setdefault(i, []).append((c, (i, j)))
        at_vertex.setdefault(j, []).append((c, (i, j)))
    best = 0
    witness = None
    for v, entries in sorted(at_vertex.items()):
        if len(entries) < 2:
            continue
        entries = sorted(entries, reverse=True)
        (c1, e1), (c2, e2) = entries[0], entries[1]
        if c1 * c2 > best:
            best = c1 * c2
            witness = (e1, e2)
    return {
        "n": n,
        "family_size": family.size,
        "max_product": best,
        "limit": limit,
        "witness": witness,
        "ok": best <= limit,
    }


@lru_cache(maxsize=8)
def _scheme(n: int) -> SchemeTable:
    return scheme_table(n)


def type_histogram(family: Family, m: PerfectMatching) -> dict[Partition, int]:
    """Count members at each cycle type from m."""
    mats = all_matchings(family.n)
    hist: dict[Partition, int] = {}
    for idx in family.members():
        lam = cycle_type(m, PerfectMatching(mats[idx]))
        hist[lam] = hist.get(lam, 0) + 1
    return hist


def project(
    family: Family, mu: Partition, m: PerfectMatching, table: SchemeTable | None = None
) -> Fraction:
    """[E_mu 1_F](m): the orthogonal projection of the indicator of F onto
    the even module indexed by mu, evaluated at m.  Exact; n <= 6."""
    n = family.n
    if mu.n != n or m.n != n:
        raise ValueError("family, mu, and m must share the same n")
    table = table or _scheme(n)
    hist = type_histogram(family, m)
    total = sum(
        count * table.phi[(mu, lam)] for lam, count in hist.items()
    )
    return Fraction(dimension(double(mu)), count_matchings(n)) * total


def project_function(
    values: Sequence, mu: Partition, m: PerfectMatching, table: SchemeTable | None = None
) -> Fraction:
    """[E_mu f](m) for an arbitrary function f given by values over the
    canonical enumeration."""
    n = m.n
    table = table or _scheme(n)
    mats = all_matchings(n)
    if len(values) != len(mats):
        raise ValueError("values must cover the full enumeration")
    by_type: dict[Partition, Fraction] = {}
    for idx, val in enumerate(values):
        if not val:
            continue
        lam = cycle_type(m, PerfectMatching(mats[idx]))
        by_type[lam] = by_type.get(lam, Fraction(0)) + Fraction(val)
    total = sum(s * table.phi[(mu, lam)] for lam, s in by_type.items())
    return Fraction(dimension(double(mu)), count_matchings(n)) * total


@lru_cache(maxsize=2)
def pair_type_ids(n: int) -> tuple[list[Partition], list[bytearray]]:
    """Cycle-type index of every ordered pair of canonical matchings.

    Returns (types, rows) with rows[u][v] indexing into types; quadratic in
    (2n-1)!!, so intended for n <= 5.
    """
    if n > 5:
        raise ValueError("pairwise type table is desk scale: n <= 5")
    mats = all_matchings(n)
    types = list(enumerate_partitions(n))
    tindex = {t.parts: k for k, t in enumerate(types)}
    diag = tindex[(1,) * n]
    rows = [bytearray(len(mats)) for _ in mats]
    for u in range(len(mats)):
        pu = mats[u]
        rows[u][u] = diag
        for v in range(u + 1, len(mats)):
            k = tindex[_cycle_type_partners(pu, mats[v]).parts]
            rows[u][v] = k
            rows[v][u] = k
    return types, rows


def family_projection_vector(
    family: Family, mu: Partition, table: SchemeTable | None = None
) -> list[Fraction]:
    """[E_mu 1_F](m) at every canonical m, via the pairwise type table."""
    n = family.n
    types, rows = pair_type_ids(n)
    table = table or _scheme(n)
    phis = [table.phi[(mu, lam)] for lam in types]
    coef = Fraction(dimension(double(mu)), count_matchings(n))
    members = list(family.members())
    out = []
    for row in rows:
        counts = [0] * len(types)
        for j in members:
            counts[row[j]] += 1
        out.append(coef * sum(c * p for c, p in zip(counts, phis) if c))
    return out


def function_projection_vector(
    n: int, values: Sequence, mu: Partition, table: SchemeTable | None = None
) -> list[Fraction]:
    """[E_mu f](m) at every canonical m for arbitrary rational values f."""
    types, rows = pair_type_ids(n)
    table = table or _scheme(n)
    phis = [table.phi[(mu, lam)] for lam in types]
    coef = Fraction(dimension(double(mu)), count_matchings(n))
    vals = [Fraction(v) for v in values]
    if len(vals) != len(rows):
        raise ValueError("values must cover the full enumeration")
    out = []
    for row in rows:
        sums = [Fraction(0)] * len(types)
        for j, v in enumerate(vals):
            if v:
                sums[row[j]] += v
        out.append(coef * sum(s * p for s, p in zip(sums, phis) if s))
    return out


def restriction_form_coefficients(n: int) -> tuple[Fraction, Fraction]:
    """Constants (a, b) with [E_{(n-1,1)} 1_F](m) = a sum_{ij in m} |F|_ij| + b |F|.

    Derived from the projection formula and the closed form of the zonal
    values: a = 1/(2(n-1)(2n-5)!!) and b = -n/(2(n-1)(2n-1)(2n-5)!!).
    """
    if n < 2:
        raise ValueError("needs n >= 2")
    df = double_factorial(2 * n - 5)
    a = Fraction(1, 2 * (n - 1) * df)
    b = Fraction(-n, 2 * (n - 1) * (2 * n - 1) * df)
    return a, b


def project_restriction_form(family: Family, m: PerfectMatching) -> Fraction:
    """The restriction-sum form of the projection onto the (n-1,1) module;
    agrees exactly with project(F, (n-1,1), m)."""
    n = family.n
    if m.n != n:
        raise ValueError("family and m must share the same n")
    a, b = restriction_form_coefficients(n)
    sizes = restriction_sizes(family)
    s = sum(sizes.get(e, 0) for e in _matching_edges(m))
    return a * s + b * family.size


def _matching_edges(m: PerfectMatching) -> list[tuple[int, int]]:
    return m.edges()


def _projection_sums(family: Family) -> tuple[Fraction, Fraction, list[int]]:
    """base and slope of P_m = base + a * S_m, plus S_m per canonical index,
    where S_m is the restriction sum over the edges of m."""
    n = family.n
    a, b = restriction_form_coefficients(n)
    base = Fraction(family.size, count_matchings(n)) + b * family.size
    sizes = restriction_sizes(family)
    s_values = []
    for p in all_matchings(n):
        s = 0
        for v, w in enumerate(p, start=1):
            if v < w:
                s += sizes.get((v, w), 0)
        s_values.append(s)
    return base, a, s_values


def projection_onto_U(family: Family) -> list[Fraction]:
    """P_m = [E_{(n)} + E_{(n-1,1)}] 1_F at every canonical m (exact)."""
    base, a, s_values = _projection_sums(family)
    return [base + a * s for s in s_values]


def distance_to_U(family: Family) -> Fraction:
    """Squared distance from 1_F to the top-plus-bottom eigenspace U under
    the normalized inner product (1/(2n-1)!!) sum over matchings."""
    n = family.n
    base, a, s_values = _projection_sums(family)
    inside: dict[int, int] = {}
    outside: dict[int, int] = {}
    bits = family.bits
    for idx, s in enumerate(s_values):
        bucket = inside if bits >> idx & 1 else outside
        bucket[s] = bucket.get(s, 0) + 1
    total = Fraction(0)
    for s, count in inside.items():
        total += count * (1 - base - a * s) ** 2
    for s, count in outside.items():
        total += count * (base + a * s) ** 2
    return total / count_matchings(n)


def key_lemma_scan(
    family: Family,
    table: SchemeTable | None = None,
    delta: Fraction | None = None,
    big_c: int = 10,
) -> dict:
    """Best-edge scan of an intersecting family with stability diagnostics.

    Returns the edge maximizing the restriction, the residue left outside it,
    the measure alpha, the exact squared distance to U against its spectral
    bound, and the sizes of the near-1 and near-0 projection sets
    F1 = {m in F : (1-P_m)^2 < delta (1 + C/n)} and
    F0 = {m not in F : P_m^2 < 2 delta/(2n-1)}.
    """
    if family.size == 0:
        raise ValueError("the scan needs a nonempty family")
    n = family.n
    extremal = double_factorial(2 * n - 3)
    if delta is None:
        delta = 1 - Fraction(family.size, extremal)
    sizes = restriction_sizes(family)
    best_count = max(sizes.values())
    best_edge = min(e for e, c in sizes.items() if c == best_count)
    residue = family.size - best_count

    table = table or _scheme(n)
    from .bounds import stability_distance_bound, summary_from_scheme

    alpha = Fraction(family.size, count_matchings(n))
    summary = summary_from_scheme(table)
    try:
        bound = stability_distance_bound(summary, alpha, 0)
    except ValueError:
        bound = None

    base, a, s_values = _projection_sums(family)
    t1 = delta * (1 + Fraction(big_c, n))
    t0 = Fraction(2, 2 * n - 1) * delta
    dist = Fraction(0)
    f1 = f0 = 0
    bits = family.bits
    for idx, s in enumerate(s_values):
        p_m = base + a * s
        if bits >> idx & 1:
            err = (1 - p_m) ** 2
            dist += err
            if err < t1:
                f1 += 1
        else:
            err = p_m**2
            dist += err
            if err < t0:
                f0 += 1
    dist /= count_matchings(n)
    return {
        "n": n,
        "family_size": family.size,
        "edge": best_edge,
        "restriction_size": best_count,
        "residue": residue,
        "alpha": alpha,
        "delta": delta,
        "C": big_c,
        "distance_sq": dist,
        "stability_bound": bound,
        "f1_size": f1,
        "f0_size": f0,
    }


def containment_check(family: Family) -> tuple[int, int] | None:
    """The common edge of all members, if any (then F is inside that
    canonical family).  An empty family has no common edge and returns None.
    """
    if family.size == 0:
        return None
    masks = matching_edge_masks(family.n)
    common = -1
    for idx in family.members():
        common &= masks[idx]
        if common == 0:
            return None
    low = (common & -common).bit_length() - 1
    return edge_pairs(family.n)[low]


def greedy_maximal_intersecting(n: int, rng: random.Random) -> Family:
    """A random maximal intersecting family: scan a shuffled enumeration and
    keep everything compatible with what is already kept."""
    masks = matching_edge_masks(n)
    order = list(range(count_matchings(n)))
    rng.shuffle(order)
    kept: list[int] = []
    bits = 0
    for idx in order:
        mask = masks[idx]
        if all(mask & masks[k] for k in kept):
            kept.append(idx)
            bits |= 1 << idx
    return Family(n, bits)


def double_counting_identity(family: Family, m: PerfectMatching) -> tuple[int, int]:
    """Both sides of sum_{ij in m} |F|_ij| = sum_{m' in F} fp(d(m, m'))."""
    sizes = restriction_sizes(family)
    lhs = sum(sizes.get(e, 0) for e in m.edges())
    mats = all_matchings(family.n)
    rhs = sum(
        cycle_type(m, PerfectMatching(mats[idx])).parts.count(1)
        for idx in family.members()
    )
    return lhs, rhs
