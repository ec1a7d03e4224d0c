"""Partition sequences of the transposition graph, h-neighborhoods, and the
McDiarmid concentration bound with randomized plus structured verification.

The nice partition sequence comes from the recursive block structure: level i
fixes the partner of the largest still-free vertex, and sibling blocks are
matched by a single partner swap, so every level has cost 1.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

from .families import Family, canonical_family, matching_edge_masks
from .graphs import MatchingGraph, bfs_distances, matching_graph
from .matchings import (
    PerfectMatching,
    all_matchings,
    count_matchings,
    cycle_type,
    identity_matching,
    sphere_size,
)
from .partitions import Partition, enumerate_partitions


@dataclass
class PartitionSequence:
    """Nested partitions of the vertex set with per-level displacement costs.

    levels[0] is the trivial partition, levels[-1] the singletons; each block
    is a sorted tuple of canonical matching indices.
    """

    n: int
    levels: list[list[tuple[int, ...]]]
    costs: list[int] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.levels) - 1

    def cost_square_sum(self) -> int:
        return sum(c * c for c in self.costs)


def _key_sequence(p: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    """Deterministic pair-removal trace: repeatedly record (largest free
    vertex, its partner) until one pair remains."""
    size = len(p)
    removed = set()
    keys = []
    while len(removed) < size - 2:
        v = max(x for x in range(size, 0, -1) if x not in removed)
        w = p[v - 1]
        keys.append((v, w))
        removed.add(v)
        removed.add(w)
    return tuple(keys)


@lru_cache(maxsize=4)
def _key_sequences(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    return tuple(_key_sequence(p) for p in all_matchings(n))


def nice_partition_sequence(n: int) -> PartitionSequence:
    """The unit-cost sequence of length n-1 (the diameter) for the
    transposition graph, grouping by successive top-vertex partners."""
    if not 2 <= n <= 6:
        raise ValueError("desk scale is 2 <= n <= 6")
    keys = _key_sequences(n)
    levels = []
    for i in range(n):
        groups: dict[tuple, list[int]] = {}
        for idx, ks in enumerate(keys):
            groups.setdefault(ks[:i], []).append(idx)
        levels.append([tuple(sorted(g)) for _, g in sorted(groups.items())])
    return PartitionSequence(n=n, levels=levels, costs=[0] + [1] * (n - 1))


def verify_partition_sequence(
    seq: PartitionSequence, sample: int | None = None, seed: int = 0
) -> dict:
    """Check refinement, the unit-cost sibling bijections (single partner
    swaps), and niceness (length equals the graph diameter).

    With sample=None every sibling pair and member is checked; otherwise at
    most `sample` members per sibling pair, chosen by a seeded generator.
    """
    n = seq.n
    rng = random.Random(seed)
    mats = all_matchings(n)
    keys = _key_sequences(n)
    report: dict = {"n": n, "ok": True, "failures": []}

    def fail(msg: str) -> None:
        report["ok"] = False
        report["failures"].append(msg)

    if len(seq.levels[0]) != 1 or any(len(b) != 1 for b in seq.levels[-1]):
        fail("levels do not run from trivial to discrete")
    if max(seq.costs, default=0) > 1 or seq.length != n - 1:
        fail("sequence is not nice (unit costs, length n-1)")

    swap_type = (2,) + (1,) * (n - 2)
    for i in range(1, len(seq.levels)):
        parents: dict[tuple, dict[tuple, list[int]]] = {}
        for block in seq.levels[i]:
            k = keys[block[0]][:i]
            parents.setdefault(k[: i - 1], {})[k] = list(block)
        # refinement: each block sits inside one parent block
        parent_blocks = {b: set(b) for b in seq.levels[i - 1]}
        for block in seq.levels[i]:
            if not any(set(block) <= s for s in parent_blocks.values()):
                fail(f"level {i}: block not nested in level {i - 1}")
        for parent_key, siblings in parents.items():
            names = sorted(siblings)
            for ka in names:
                for kb in names:
                    if ka == kb:
                        continue
                    a_members = siblings[ka]
                    if sample is not None and len(a_members) > sample:
                        a_members = rng.sample(a_members, sample)
                    v, a = ka[-1]
                    _, b = kb[-1]
                    target = set(siblings[kb])
                    for idx in a_members:
                        image = _partner_swap(mats[idx], a, b)
                        jdx = _rank_partner(n, image)
                        if jdx not in target:
                            fail(f"level {i}: swap image leaves sibling {kb}")
                            break
                        t = cycle_type(
                            PerfectMatching(mats[idx]), PerfectMatching(image)
                        ).parts
                        if t != swap_type:
                            fail(f"level {i}: swap is not one transposition step")
                            break
    return report


def _partner_swap(p: tuple[int, ...], a: int, b: int) -> tuple[int, ...]:
    """Apply the label transposition (a b) to a partner tuple."""
    q = list(p)
    pa, pb = q[a - 1], q[b - 1]
    if pa == b:
        return p  # a and b are matched to each other; the swap fixes m
    q[a - 1], q[b - 1] = pb, pa
    q[pa - 1], q[pb - 1] = b, a
    return tuple(q)


def _rank_partner(n: int, p: tuple[int, ...]) -> int:
    from .matchings import rank_matching

    return rank_matching(PerfectMatching(p))


def neighborhood(x: Family, h: int) -> Family:
    """All matchings within transposition distance h of the set x."""
    if x.size == 0:
        raise ValueError("neighborhood of an empty set is undefined")
    if h < 0:
        raise ValueError("h must be nonnegative")
    g = matching_graph("transposition", x.n)
    dist = bfs_distances(g, list(x.members()))
    bits = 0
    for idx, d in enumerate(dist):
        if 0 <= d <= h:
            bits |= 1 << idx
    return Family(x.n, bits)


def mcdiarmid_threshold(a: float, n: int) -> float:
    """h_0 = sqrt((n/2) ln(1/a)), the radius above which the concentration
    bound applies on the transposition graph (stated cost sum n)."""
    if not 0 < a < 1:
        raise ValueError("a must lie in (0, 1)")
    return math.sqrt(0.5 * n * math.log(1 / a))


def mcdiarmid_lower_bound(a: float, h: float, n: int) -> float:
    """Guaranteed neighborhood fraction 1 - exp(-2(h - h_0)^2 / n)."""
    h0 = mcdiarmid_threshold(a, n)
    if h <= h0:
        raise ValueError(f"bound needs h > h_0 = {h0}")
    return 1.0 - math.exp(-2.0 * (h - h0) ** 2 / n)


def _h0(a: float, cost_square_sum: float) -> float:
    return math.sqrt(0.5 * cost_square_sum * math.log(1 / a))


def _bound_fraction(a: float, h: float, cost_square_sum: float) -> float:
    h0 = _h0(a, cost_square_sum)
    return 1.0 - math.exp(-2.0 * (h - h0) ** 2 / cost_square_sum)


_GENERATORS = ("uniform", "sphere", "canonical", "ball")
_A_GRID = (0.5, 0.368, 0.25, 0.1, 0.05)


def _trial_set(n: int, kind: str, rng: random.Random, a: float) -> Family:
    big_n = count_matchings(n)
    if kind == "uniform":
        k = max(1, math.ceil(a * big_n))
        return Family.from_indices(n, rng.sample(range(big_n), k))
    if kind == "sphere":
        lam = rng.choice(list(enumerate_partitions(n)))
        m_star = identity_matching(n)
        bits = 0
        for idx, p in enumerate(all_matchings(n)):
            if cycle_type(m_star, PerfectMatching(p)).parts == lam.parts:
                bits |= 1 << idx
        return Family(n, bits)
    if kind == "canonical":
        i = rng.randrange(1, 2 * n + 1)
        j = rng.randrange(1, 2 * n + 1)
        while j == i:
            j = rng.randrange(1, 2 * n + 1)
        return canonical_family(min(i, j), max(i, j), n)
    if kind == "ball":
        center = rng.randrange(big_n)
        return neighborhood(Family.from_indices(n, [center]), 1)
    raise ValueError(f"unknown generator {kind!r}")


def verify_mcdiarmid(n: int, trials: int, seed: int) -> dict:
    """Exhaustive-BFS verification of the concentration bound.

    Random and structured sets are drawn; for each, every integer radius h
    with h_0 < h <= n-1 is checked against the guaranteed fraction, under
    both the constructed cost sum (n-1) and the stated one (n).  Float
    comparisons get 1e-12 slack in the bound's favor so rounding cannot
    produce a spurious failure.
    """
    if not 2 <= n <= 6:
        raise ValueError("desk scale is 2 <= n <= 6")
    rng = random.Random(seed)
    big_n = count_matchings(n)
    g = matching_graph("transposition", n)
    records: list[dict] = []
    all_pass = True
    for t in range(trials):
        kind = _GENERATORS[t % len(_GENERATORS)]
        a_seed = _A_GRID[(t // len(_GENERATORS)) % len(_A_GRID)]
        x = _trial_set(n, kind, rng, a_seed)
        a = x.size / big_n
        if not 0 < a < 1:
            continue  # the full vertex set makes the bound vacuous
        dist = bfs_distances(g, list(x.members()))
        counts = [0] * n
        for d in dist:
            counts[d] += 1
        cumulative = []
        running = 0
        for c in counts:
            running += c
            cumulative.append(running)
        for cost_model, c2 in (("constructed", n - 1), ("stated", n)):
            h0 = _h0(a, c2)
            h = math.floor(h0) + 1
            while h <= n - 1:
                observed = cumulative[h] / big_n
                bound = _bound_fraction(a, h, c2)
                ok = observed >= bound - 1e-12
                all_pass = all_pass and ok
                records.append(
                    {
                        "trial": t,
                        "generator": kind,
                        "set_size": x.size,
                        "a": a,
                        "h": h,
                        "h0": h0,
                        "observed_fraction": observed,
                        "bound_fraction": bound,
                        "cost_model": cost_model,
                        "pass": ok,
                    }
                )
                h += 1
    return {
        "n": n,
        "trials": trials,
        "seed": seed,
        "checks": len(records),
        "all_pass": all_pass,
        "records": records,
    }
