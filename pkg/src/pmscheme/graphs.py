"""Graphs on perfect matchings: derangement, transposition, Hamiltonian-cycle,
and the Hamiltonian-path graph on near-perfect matchings of K_{2n-1}.

Vertices are canonical matching indices.  Graphs are virtual (neighbors are
generated on demand); only dense_spectrum materializes a matrix.  Near-perfect
matchings of K_{2n-1} are represented through the extension bijection: the
unmatched vertex is paired with the extra label 2n, so all four graphs share
the vertex set M_2n.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterator

import numpy as np

from .matchings import (
    PerfectMatching,
    all_matchings,
    count_matchings,
    cycle_type,
    derangement_count_recurrence,
    rank_matching,
    sphere_size,
)
from .partitions import Partition

KINDS = ("derangement", "transposition", "hamiltonian_cycle", "hamiltonian_path")


def _no_shared_edge(p: tuple[int, ...], q: tuple[int, ...]) -> bool:
    return all(a != b for a, b in zip(p, q))


def _single_cycle(p: tuple[int, ...], q: tuple[int, ...]) -> bool:
    """True iff the union of the two matchings is one cycle through all 2n
    vertices, i.e. the cycle type is (n)."""
    size = len(p)
    length = 0
    v = 1
    while True:
        u = p[v - 1]
        v = q[u - 1]
        length += 2
        if v == 1:
            break
    return length == size


def _hamiltonian_path(p: tuple[int, ...], q: tuple[int, ...]) -> bool:
    """True iff the near-perfect matchings obtained by dropping the edges at
    the top label 2n unite into a Hamiltonian path of K_{2n-1}.

    The union component of the unmatched vertex p(2n) is an open alternating
    path; it is Hamiltonian iff it reaches all 2n-1 remaining vertices.
    """
    size = len(p)
    start = p[size - 1]
    if start == q[size - 1]:
        return False
    count = 1
    v = start
    use_q = True
    while True:
        w = q[v - 1] if use_q else p[v - 1]
        if w == size:  # next edge is a dropped one: the open path ends at v
            return count == size - 1
        count += 1
        v = w
        use_q = not use_q


class MatchingGraph:
    """A regular graph over the canonical enumeration of M_2n."""

    def __init__(self, kind: str, n: int):
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        if n < 2:
            raise ValueError("graphs need n >= 2")
        self.kind = kind
        self.n = n
        self.N = count_matchings(n)

    @property
    def degree(self) -> int:
        n = self.n
        if self.kind == "derangement":
            return derangement_count_recurrence(n)
        if self.kind == "transposition":
            return n * (n - 1)
        return sphere_size(Partition([n]))  # both Hamiltonian kinds

    def _pair_predicate(self) -> Callable[[tuple, tuple], bool]:
        if self.kind == "derangement":
            return _no_shared_edge
        if self.kind == "hamiltonian_cycle":
            return _single_cycle
        if self.kind == "hamiltonian_path":
            return _hamiltonian_path
        raise ValueError("transposition adjacency is generated, not tested")

    def adjacent(self, v: int, u: int) -> bool:
        if v == u:
            return False
        mats = all_matchings(self.n)
        if self.kind == "transposition":
            return cycle_type(
                PerfectMatching(mats[v]), PerfectMatching(mats[u])
            ).parts == (2,) + (1,) * (self.n - 2)
        return self._pair_predicate()(mats[v], mats[u])

    def neighbors(self, v: int) -> list[int]:
        if not 0 <= v < self.N:
            raise ValueError(f"vertex {v} out of range")
        mats = all_matchings(self.n)
        if self.kind == "transposition":
            return sorted(self._transposition_neighbors(mats[v]))
        pred = self._pair_predicate()
        p = mats[v]
        return [u for u, q in enumerate(mats) if u != v and pred(p, q)]

    def _transposition_neighbors(self, p: tuple[int, ...]) -> Iterator[int]:
        edges = [(v, w) for v, w in enumerate(p, start=1) if v < w]
        for i in range(len(edges)):
            a, b = edges[i]
            for j in range(i + 1, len(edges)):
                c, d = edges[j]
                for x, y in (((a, c), (b, d)), ((a, d), (b, c))):
                    partner = list(p)
                    partner[x[0] - 1], partner[x[1] - 1] = x[1], x[0]
                    partner[y[0] - 1], partner[y[1] - 1] = y[1], y[0]
                    yield rank_matching(PerfectMatching(partner))

    def edge_list(self) -> Iterator[tuple[int, int]]:
        """Edges as index pairs u < v, for export to external tools."""
        for v in range(self.N):
            for u in self.neighbors(v):
                if v < u:
                    yield (v, u)

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.N, self.N), dtype=np.uint8)
        for v in range(self.N):
            for u in self.neighbors(v):
                a[v, u] = 1
        return a


def matching_graph(kind: str, n: int) -> MatchingGraph:
    return MatchingGraph(kind, n)


def near_perfect_graph(n: int) -> MatchingGraph:
    """Hamiltonian-path graph on near-perfect matchings of K_{2n-1}, in the
    extension representation."""
    return MatchingGraph("hamiltonian_path", n)


@lru_cache(maxsize=4)
def _adjacency_lists(kind: str, n: int) -> tuple[tuple[int, ...], ...]:
    g = MatchingGraph(kind, n)
    return tuple(tuple(g.neighbors(v)) for v in range(g.N))


def adjacency_lists(g: MatchingGraph) -> tuple[tuple[int, ...], ...]:
    """Materialized neighbor lists, cached per (kind, n) for repeated BFS."""
    return _adjacency_lists(g.kind, g.n)


def bfs_distances(g: MatchingGraph, sources: Iterator[int] | list[int]) -> list[int]:
    """Distance from the source set to every vertex; -1 when unreachable."""
    adj = adjacency_lists(g)
    dist = [-1] * g.N
    frontier = []
    for s in sources:
        if dist[s] == -1:
            dist[s] = 0
            frontier.append(s)
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for u in adj[v]:
                if dist[u] == -1:
                    dist[u] = d
                    nxt.append(u)
        frontier = nxt
    return dist


def diameter(g: MatchingGraph) -> int:
    """Eccentricity of the base vertex; the graphs here are vertex-transitive
    so this equals the diameter (transitivity itself is checked in tests)."""
    dist = bfs_distances(g, [0])
    if min(dist) < 0:
        sizes = component_sizes(g)
        raise ValueError(f"graph is disconnected; component sizes {sizes}")
    return max(dist)


def component_sizes(g: MatchingGraph) -> list[int]:
    seen = [False] * g.N
    sizes = []
    for s in range(g.N):
        if seen[s]:
            continue
        count = 0
        stack = [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            count += 1
            for u in g.neighbors(v):
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        sizes.append(count)
    return sorted(sizes, reverse=True)


def dense_spectrum(g: MatchingGraph) -> np.ndarray:
    """All adjacency eigenvalues, descending (float).  Feasible to N ~ 11000;
    the matrix is symmetrized before solving."""
    a = g.adjacency_matrix().astype(np.float64)
    a = (a + a.T) / 2.0
    vals = np.linalg.eigvalsh(a)
    return vals[::-1]


def block_structure_check(n: int) -> dict:
    """Check the recursive block form of the transposition graph.

    Vertices are grouped by the partner of the top label 2n.  Each diagonal
    block must induce a copy of the one-size-down transposition graph (via
    the drop-and-relabel bijection), and between any two blocks the edges
    that move the top label's partner must form a permutation matrix.
    """
    if not 3 <= n <= 6:
        raise ValueError("block structure check is desk scale: 3 <= n <= 6")
    g = MatchingGraph("transposition", n)
    mats = all_matchings(n)
    size = 2 * n
    blocks: dict[int, list[int]] = {}
    for v, p in enumerate(mats):
        blocks.setdefault(p[size - 1], []).append(v)
    report: dict = {
        "n": n,
        "block_count": len(blocks),
        "block_sizes": sorted({len(b) for b in blocks.values()}),
        "ok": True,
        "failures": [],
    }
    expected = count_matchings(n - 1)
    if len(blocks) != 2 * n - 1 or any(len(b) != expected for b in blocks.values()):
        report["ok"] = False
        report["failures"].append("block sizes are not (2n-3)!!")
        return report

    def drop_and_relabel(p: tuple[int, ...]) -> int:
        partner_top = p[size - 1]
        keep = [v for v in range(1, size + 1) if v not in (partner_top, size)]
        relabel = {v: i + 1 for i, v in enumerate(keep)}
        sub = [0] * (size - 2)
        for v in keep:
            sub[relabel[v] - 1] = relabel[p[v - 1]]
        return rank_matching(PerfectMatching(sub))

    tiny = (2,) + (1,) * (n - 3) if n >= 3 else (2,)
    for partner_top, members in blocks.items():
        images = [drop_and_relabel(mats[v]) for v in members]
        if sorted(images) != list(range(expected)):
            report["ok"] = False
            report["failures"].append(f"block {partner_top}: bijection not onto")
            continue
        for i, v in enumerate(members):
            for j in range(i + 1, len(members)):
                u = members[j]
                inner = cycle_type(
                    PerfectMatching(mats[v]), PerfectMatching(mats[u])
                ).parts == (2,) + (1,) * (n - 2)
                sub_adj = cycle_type(
                    PerfectMatching(all_matchings(n - 1)[images[i]]),
                    PerfectMatching(all_matchings(n - 1)[images[j]]),
                ).parts == tiny
                if inner != sub_adj:
                    report["ok"] = False
                    report["failures"].append(
                        f"block {partner_top}: edge mismatch at {v},{u}"
                    )
    # off-diagonal permutation-matrix property
    for v, p in enumerate(mats):
        partner_top = p[size - 1]
        seen: dict[int, int] = {}
        for u in g.neighbors(v):
            other = mats[u][size - 1]
            if other != partner_top:
                seen[other] = seen.get(other, 0) + 1
        others = set(range(1, size)) - {partner_top}
        if set(seen) != others or any(c != 1 for c in seen.values()):
            report["ok"] = False
            report["failures"].append(f"vertex {v}: off-diagonal row sums {seen}")
            break
    return report


@lru_cache(maxsize=2)
def derangement_neighbor_masks(n: int) -> tuple[int, ...]:
    """Neighbor bitmask per vertex of the derangement graph (n <= 5)."""
    mats = all_matchings(n)
    masks = [0] * len(mats)
    for v in range(len(mats)):
        p = mats[v]
        for u in range(v + 1, len(mats)):
            if _no_shared_edge(p, mats[u]):
                masks[v] |= 1 << u
                masks[u] |= 1 << v
    return tuple(masks)


def maximum_independent_sets(masks: tuple[int, ...], target: int) -> list[tuple[int, ...]]:
    """All independent sets of exactly `target` vertices, by branch and bound.

    Intended for targets equal to the independence number certified by the
    ratio bound, so the enumeration is exactly the maximum independent sets.
    """
    n_vertices = len(masks)
    out: list[tuple[int, ...]] = []

    def rec(allowed: int, chosen: list[int]) -> None:
        need = target - len(chosen)
        if need == 0:
            out.append(tuple(chosen))
            return
        if allowed.bit_count() < need:
            return
        v = (allowed & -allowed).bit_length() - 1
        bit = 1 << v
        # include v
        chosen.append(v)
        rec(allowed & ~(masks[v] | bit), chosen)
        chosen.pop()
        # exclude v
        rec(allowed & ~bit, chosen)

    rec((1 << n_vertices) - 1, [])
    return sorted(out)
