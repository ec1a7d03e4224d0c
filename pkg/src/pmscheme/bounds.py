"""Spectral certificates: the ratio bound on independent sets, the
cross-ratio bound on cross-independent pairs, the stability version of the
ratio bound, and the trace identity.  All evaluations are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .matchings import count_matchings, derangement_count_recurrence
from .spherical import SchemeTable


@dataclass(frozen=True)
class SpectralSummary:
    """The eigenvalue data the bounds consume.

    eta_second is the largest magnitude among eigenvalues distinct from both
    the degree and the minimum; it is None when no such eigenvalue exists
    (e.g. a complete graph).  mu_gap is the least eigenvalue above eta_min.
    """

    N: int
    d: Fraction
    eta_min: Fraction
    eta_second: Fraction | None
    mu_gap: Fraction

    def __post_init__(self):
        if not self.eta_min <= self.mu_gap <= self.d:
            raise ValueError("need eta_min <= mu_gap <= d")
        if self.eta_second is not None and abs(self.eta_second) > self.d:
            raise ValueError("need |eta_second| <= d")


def summary_from_eigenvalues(N: int, eigenvalues: Iterable) -> SpectralSummary:
    """Summary from an exact eigenvalue list (multiplicities irrelevant)."""
    vals = sorted({Fraction(v) for v in eigenvalues})
    if len(vals) < 2:
        raise ValueError("need at least two distinct eigenvalues")
    d = vals[-1]
    eta_min = vals[0]
    mu_gap = vals[1]
    middle = [abs(v) for v in vals if v != d and v != eta_min]
    eta_second = max(middle) if middle else None
    return SpectralSummary(N, d, eta_min, eta_second, mu_gap)


def summary_from_scheme(table: SchemeTable) -> SpectralSummary:
    """Exact summary of the derangement graph from its eigenvalue table."""
    return summary_from_eigenvalues(
        count_matchings(table.n), [Fraction(e) for e in table.eta.values()]
    )


def rationalize_spectrum(values, tol: float = 1e-6) -> list[int]:
    """Round a float spectrum to integers, insisting each is within tol.

    The graphs here have integer spectra, so any larger deviation signals a
    bug rather than numerical noise.
    """
    out = []
    for v in values:
        r = round(float(v))
        if abs(v - r) > tol:
            raise ValueError(f"eigenvalue {v} is not within {tol} of an integer")
        out.append(r)
    return out


def ratio_bound(s: SpectralSummary) -> Fraction:
    """Hoffman-Delsarte bound N(-eta_min)/(d - eta_min) on independent sets."""
    if s.eta_min >= 0:
        raise ValueError("ratio bound needs a negative least eigenvalue")
    return Fraction(s.N) * (-s.eta_min) / (s.d - s.eta_min)


def cross_ratio_bound(s: SpectralSummary) -> Fraction:
    """Bound |eta_2|/(d + |eta_2|) on sqrt(|S||T|)/|V| for cross-independent
    S, T, where eta_2 is the second-largest eigenvalue magnitude."""
    if s.d <= 0:
        raise ValueError("cross-ratio bound needs positive degree")
    eta2 = abs(s.eta_min)
    if s.eta_second is not None:
        eta2 = max(eta2, abs(s.eta_second))
    return eta2 / (s.d + eta2)


def stability_distance_bound(s: SpectralSummary, alpha: Fraction, ell: int) -> Fraction:
    """Upper bound on the squared distance from the indicator of a vertex set
    of measure alpha with ell induced edges to the top-plus-bottom eigenspace:

        alpha ((1 - alpha)|eta_min| - d alpha) / (|eta_min| - |mu|) + 2 ell
    """
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    gap = abs(s.eta_min) - abs(s.mu_gap)
    if gap <= 0:
        raise ValueError("bound needs |eta_min| > |mu|")
    return alpha * ((1 - alpha) * abs(s.eta_min) - s.d * alpha) / gap + 2 * ell


def trace_identity_check(g, table: SchemeTable | None = None) -> dict:
    """Verify sum_mu f^{2mu} eta_mu^2 = N * degree for the derangement graph
    (both sides count twice the edges).

    Accepts the graph (exact spectrum is then taken from its scheme table,
    so n <= 6) or a SchemeTable directly.
    """
    if isinstance(g, SchemeTable):
        table = g
    elif table is None:
        from .graphs import MatchingGraph
        from .spherical import scheme_table

        if not isinstance(g, MatchingGraph) or g.kind != "derangement":
            raise ValueError("exact spectrum is only available for the derangement graph")
        table = scheme_table(g.n)
    lhs = sum(table.multiplicity(mu) * table.eta[mu] ** 2 for mu in table.mus)
    rhs = count_matchings(table.n) * derangement_count_recurrence(table.n)
    return {"n": table.n, "sum_f2mu_eta_sq": lhs, "N_times_degree": rhs, "ok": lhs == rhs}
