"""Spherical functions of the pair (S_2n, hyperoctahedral stabilizer) and
the exact eigenvalues of the perfect-matching derangement graph.

Ground truth is the direct average of chi^{2mu} over the stabilizer coset,
feasible to n = 6 (|H_6| = 46080).  The closed form for the shape (n-1,1)
is available at any n and is checked against the average where both exist.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator

from .characters import character
from .matchings import (
    PerfectMatching,
    Permutation,
    count_matchings,
    cycle_type,
    derangement_count_recurrence,
    identity_matching,
    sphere_size,
)
from .partitions import Partition, dimension, double, enumerate_partitions, fixed_point_count


def hyperoctahedral_order(n: int) -> int:
    """(2n)!! = 2^n n!, the order of the stabilizer of the base matching."""
    return 2**n * factorial(n)


def enumerate_hyperoctahedral(n: int) -> Iterator[Permutation]:
    """All permutations fixing the identity matching: pair permutations
    composed with within-pair flips."""
    for image in _hyperoctahedral_images(n):
        yield Permutation(image)


@lru_cache(maxsize=2)
def _hyperoctahedral_images(n: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for pi in itertools.permutations(range(n)):
        base = [0] * (2 * n)
        for i in range(n):
            base[2 * i] = 2 * pi[i] + 1
            base[2 * i + 1] = 2 * pi[i] + 2
        for flips in itertools.product((0, 1), repeat=n):
            image = list(base)
            for i, s in enumerate(flips):
                if s:
                    image[2 * i], image[2 * i + 1] = image[2 * i + 1], image[2 * i]
            out.append(tuple(image))
    return tuple(out)


def coset_representative(lam: Partition) -> Permutation:
    """A deterministic sigma with d(m*, sigma m*) = lambda.

    Builds the target matching part by part on consecutive vertex blocks
    (each part k contributes one 2k-cycle against the base matching) and
    reads sigma off the edge lists.
    """
    n = lam.n
    edges: list[tuple[int, int]] = []
    base = 1
    for k in lam.parts:
        if k == 1:
            edges.append((base, base + 1))
        else:
            for j in range(k - 1):
                edges.append((base + 2 * j + 1, base + 2 * j + 2))
            edges.append((base, base + 2 * k - 1))
        base += 2 * k
    image = [0] * (2 * n)
    for i, (a, b) in enumerate(edges):
        image[2 * i] = a
        image[2 * i + 1] = b
    return Permutation(image)


_histogram_cache: dict[tuple[int, tuple[int, ...]], dict[tuple[int, ...], int]] = {}


def _coset_type_histogram(n: int, lam_parts: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    key = (n, lam_parts)
    hit = _histogram_cache.get(key)
    if hit is None:
        hit = _histogram_cache[key] = _compute_coset_type_histogram(n, lam_parts)
    return hit


def _compute_coset_type_histogram(
    n: int, lam_parts: tuple[int, ...]
) -> dict[tuple[int, ...], int]:
    """Cycle-type distribution of sigma_lambda^{-1} k over k in H_n.

    Conjugation invariance of cycle types makes the composition order
    irrelevant, so one fixed order is used throughout.
    """
    sigma_inv = coset_representative(Partition(lam_parts)).inverse().image
    size = 2 * n
    counts: dict[tuple[int, ...], int] = {}
    for k in _hyperoctahedral_images(n):
        prod = [sigma_inv[x - 1] for x in k]
        seen = bytearray(size)
        lens = []
        for s in range(size):
            if seen[s]:
                continue
            length = 0
            v = s
            while not seen[v]:
                seen[v] = 1
                length += 1
                v = prod[v] - 1
            lens.append(length)
        lens.sort(reverse=True)
        t = tuple(lens)
        counts[t] = counts.get(t, 0) + 1
    return counts


def spherical_value(mu: Partition, lam: Partition) -> Fraction:
    """phi_mu at the lambda double coset: the H_n-average of chi^{2mu}.

    Exact; independent of the coset representative.  Desk scale n <= 6.
    """
    n = mu.n
    if lam.n != n:
        raise ValueError("mu and lambda must partition the same n")
    shape = double(mu)
    hist = _coset_type_histogram(n, lam.parts)
    total = sum(
        count * character(shape, Partition(t)) for t, count in hist.items()
    )
    return Fraction(total, hyperoctahedral_order(n))


def zonal_closed_form(lam: Partition) -> Fraction:
    """phi_{(n-1,1)} at lambda: ((2n-1) fp(lambda) - n) / (2n(n-1))."""
    n = lam.n
    if n < 2:
        raise ValueError("shape (n-1,1) needs n >= 2")
    return Fraction((2 * n - 1) * fixed_point_count(lam) - n, 2 * n * (n - 1))


def derangement_eigenvalue(mu: Partition) -> int:
    """eta_mu = sum over fixed-point-free lambda of |Omega_lambda| phi_mu^lambda.

    The rational sum must collapse to an integer; a remainder signals a
    character or spherical bug.
    """
    n = mu.n
    total = Fraction(0)
    for lam in enumerate_partitions(n):
        if fixed_point_count(lam):
            continue
        total += sphere_size(lam) * spherical_value(mu, lam)
    if total.denominator != 1:
        raise ArithmeticError(f"eigenvalue for {mu} is not integral: {total}")
    return int(total)


def zonal_eigenvalue(n: int) -> int:
    """eta_{(n-1,1)} via the closed form only; available beyond desk scale."""
    total = Fraction(0)
    for lam in enumerate_partitions(n):
        if fixed_point_count(lam):
            continue
        total += sphere_size(lam) * zonal_closed_form(lam)
    if total.denominator != 1:
        raise ArithmeticError(f"zonal eigenvalue at n={n} is not integral: {total}")
    return int(total)


class SchemeTable:
    """Exact spherical values phi_mu^lambda and eigenvalues eta_mu for one n."""

    def __init__(
        self,
        n: int,
        phi: dict[tuple[Partition, Partition], Fraction],
        eta: dict[Partition, int],
    ):
        self.n = n
        self.phi = phi
        self.eta = eta
        self.mus = list(enumerate_partitions(n))

    def multiplicity(self, mu: Partition) -> int:
        """Dimension of the eigenspace of eta_mu, namely f^{2mu}."""
        return dimension(double(mu))

    def check_identity_value(self) -> bool:
        one = Partition([1] * self.n)
        return all(self.phi[(mu, one)] == 1 for mu in self.mus)

    def check_orthogonality(self) -> bool:
        """sum_lam |Omega_lam| phi_mu phi_nu = delta (2n-1)!!/f^{2mu}, exactly."""
        total = count_matchings(self.n)
        sizes = {lam: sphere_size(lam) for lam in self.mus}
        for i, mu in enumerate(self.mus):
            for nu in self.mus[i:]:
                s = sum(
                    sizes[lam] * self.phi[(mu, lam)] * self.phi[(nu, lam)]
                    for lam in self.mus
                )
                want = Fraction(total, self.multiplicity(mu)) if mu == nu else 0
                if s != want:
                    return False
        return True

    def eigenvalue_rows(self) -> list[tuple[Partition, int, int]]:
        """(mu, f^{2mu}, eta_mu) rows in enumeration order."""
        return [(mu, self.multiplicity(mu), self.eta[mu]) for mu in self.mus]


def _build_scheme_table(n: int, parallelism: int = 1) -> SchemeTable:
    lams = list(enumerate_partitions(n))
    if parallelism > 1:
        import concurrent.futures

        todo = [(n, lam.parts) for lam in lams if (n, lam.parts) not in _histogram_cache]
        with concurrent.futures.ProcessPoolExecutor(max_workers=parallelism) as ex:
            for key, hist in zip(todo, ex.map(_histogram_worker, todo)):
                _histogram_cache[key] = hist
    order = hyperoctahedral_order(n)
    phi: dict[tuple[Partition, Partition], Fraction] = {}
    for mu in lams:
        shape = double(mu)
        for lam in lams:
            hist = _coset_type_histogram(n, lam.parts)
            total = sum(c * character(shape, Partition(t)) for t, c in hist.items())
            phi[(mu, lam)] = Fraction(total, order)
    one = Partition([1] * n)
    eta: dict[Partition, int] = {}
    for mu in lams:
        if phi[(mu, one)] != 1:
            raise ArithmeticError(f"spherical value at identity is not 1 for {mu}")
        total = Fraction(0)
        for lam in lams:
            if fixed_point_count(lam) == 0:
                total += sphere_size(lam) * phi[(mu, lam)]
        if total.denominator != 1:
            raise ArithmeticError(f"eigenvalue for {mu} is not integral: {total}")
        eta[mu] = int(total)
    if eta[Partition([n])] != derangement_count_recurrence(n):
        raise ArithmeticError("degree eigenvalue does not match the derangement count")
    return SchemeTable(n, phi, eta)


def _histogram_worker(args: tuple[int, tuple[int, ...]]) -> dict[tuple[int, ...], int]:
    n, parts = args
    return _compute_coset_type_histogram(n, parts)


def scheme_table(n: int, cache_dir: str | None = None, parallelism: int = 1) -> SchemeTable:
    """Full exact table for one n (<= 6), optionally persisted to cache_dir.

    A corrupt or stale cache file is recomputed and overwritten.
    """
    if cache_dir is not None:
        from . import cache as cache_io

        table = cache_io.load_scheme_table(cache_dir, n)
        if table is not None:
            return table
    table = _build_scheme_table(n, parallelism=parallelism)
    if cache_dir is not None:
        from . import cache as cache_io

        cache_io.store_scheme_table(cache_dir, table)
    return table


def eigenvector_on_matchings(table: SchemeTable, mu: Partition) -> list[Fraction]:
    """The vector m -> phi_mu^{d(m*, m)} over the canonical enumeration."""
    from .matchings import all_matchings

    m_star = identity_matching(table.n)
    values = []
    for p in all_matchings(table.n):
        lam = cycle_type(m_star, PerfectMatching(p))
        values.append(table.phi[(mu, lam)])
    return values
