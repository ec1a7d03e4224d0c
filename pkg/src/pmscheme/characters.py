"""Exact symmetric-group characters by border-strip (Murnaghan-Nakayama)
recursion, plus complete memoized character tables with orthogonality checks.
"""

from __future__ import annotations

from functools import cache
from math import factorial

from .partitions import Partition, enumerate_partitions, z_factor


def character(lam: Partition, rho: Partition) -> int:
    """chi^lambda(rho), the character of shape lambda at cycle type rho."""
    if lam.n != rho.n:
        raise ValueError(f"shape and cycle type have different sizes: {lam} vs {rho}")
    return _mn(lam.parts, rho.parts)


@cache
def _mn(lam: tuple[int, ...], rho: tuple[int, ...]) -> int:
    """Border-strip recursion on beta numbers (first-column hook lengths).

    Removing a strip of length k from lam corresponds to replacing a beta
    number b by b - k when b - k is fresh; the strip height is the number
    of beta numbers strictly between the two.
    """
    if not rho:
        return 1
    k, rest = rho[0], rho[1:]
    ell = len(lam)
    beta = [lam[i] + ell - 1 - i for i in range(ell)]
    beta_set = set(beta)
    total = 0
    for b in beta:
        nb = b - k
        if nb < 0 or nb in beta_set:
            continue
        height = sum(1 for c in beta if nb < c < b)
        new_beta = sorted((beta_set - {b}) | {nb}, reverse=True)
        new_lam = _beta_to_parts(new_beta)
        total += (-1) ** height * _mn(new_lam, rest)
    return total


def _beta_to_parts(beta_desc: list[int]) -> tuple[int, ...]:
    ell = len(beta_desc)
    parts = [beta_desc[i] - (ell - 1 - i) for i in range(ell)]
    while parts and parts[-1] == 0:
        parts.pop()
    return tuple(parts)


def conjugacy_class_size(rho: Partition) -> int:
    """Size of the S_m conjugacy class of cycle type rho: m!/z_rho."""
    return factorial(rho.n) // z_factor(rho)


class CharacterTable:
    """Full character table of S_m, keyed by (shape, cycle type)."""

    def __init__(self, m: int, values: dict[tuple[Partition, Partition], int]):
        self.m = m
        self.values = values
        self.shapes = list(enumerate_partitions(m))

    def __call__(self, lam: Partition, rho: Partition) -> int:
        return self.values[(lam, rho)]

    def dimension_column(self) -> dict[Partition, int]:
        one_type = Partition([1] * self.m) if self.m else Partition()
        return {lam: self.values[(lam, one_type)] for lam in self.shapes}

    def check_row_orthogonality(self) -> bool:
        """sum_rho |class(rho)| chi^lam(rho) chi^mu(rho) = delta * m!, exactly."""
        fact = factorial(self.m)
        for i, lam in enumerate(self.shapes):
            for mu in self.shapes[i:]:
                s = sum(
                    conjugacy_class_size(rho)
                    * self.values[(lam, rho)]
                    * self.values[(mu, rho)]
                    for rho in self.shapes
                )
                if s != (fact if lam == mu else 0):
                    return False
        return True

    def check_column_orthogonality(self) -> bool:
        """sum_lam chi^lam(rho) chi^lam(tau) = delta * z_rho, exactly."""
        for i, rho in enumerate(self.shapes):
            for tau in self.shapes[i:]:
                s = sum(
                    self.values[(lam, rho)] * self.values[(lam, tau)]
                    for lam in self.shapes
                )
                if s != (z_factor(rho) if rho == tau else 0):
                    return False
        return True


def character_table(m: int) -> CharacterTable:
    """Complete table for S_m; desk scale is m <= 16."""
    if m < 1:
        raise ValueError("m must be positive")
    shapes = list(enumerate_partitions(m))
    values = {
        (lam, rho): _mn(lam.parts, rho.parts) for lam in shapes for rho in shapes
    }
    return CharacterTable(m, values)
