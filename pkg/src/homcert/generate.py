"""Exhaustive enumeration of small regular graphs and constraint graphs,
one representative per isomorphism class.

Regular graphs are generated by completing the lowest-index unfinished
vertex, restricted so the chosen neighbors form a prefix of every class of
interchangeable vertices (equal adjacency to all finished vertices).  That
restriction only ever removes relabelings, so every isomorphism class
survives; residual duplicates are rejected by canonical form.  Degree one
and two are built directly from matchings and cycle partitions.
"""

from __future__ import annotations

from itertools import combinations

from .canon import constraint_canonical_key, graph_canonical_key
from .errors import FeasibilityError
from .graphs import ConstraintGraph, Graph, cycle, disjoint_union

MAX_BUILTIN_ORDER = 12


def enumerate_regular(n: int, d: int, connected: bool = False) -> list[Graph]:
    """All d-regular graphs on n vertices up to isomorphism, deterministic
    order.  Built-in generation handles n <= 12; feed larger graphs in
    through graph6 instead."""
    if n < 1 or n > MAX_BUILTIN_ORDER:
        raise FeasibilityError(
            f"built-in generation supports 1 <= n <= {MAX_BUILTIN_ORDER}, got {n}"
        )
    if d < 1:
        raise ValueError("need degree d >= 1")
    if (n * d) % 2 == 1:
        raise ValueError(f"no {d}-regular graph on {n} vertices: odd degree sum")
    if d >= n:
        raise ValueError(f"degree {d} needs at least {d + 1} vertices")
    if d == 1:
        graphs = [_perfect_matching(n)]
    elif d == 2:
        graphs = [_cycle_union(parts) for parts in _partitions_min3(n)]
    else:
        graphs = _enumerate_general(n, d)
    if connected:
        graphs = [g for g in graphs if g.is_connected()]
    return graphs


def _perfect_matching(n: int) -> Graph:
    return Graph.from_edges(n, [(2 * i, 2 * i + 1) for i in range(n // 2)])


def _partitions_min3(n: int) -> list[tuple[int, ...]]:
    """Partitions of n into parts >= 3, parts nonincreasing."""
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, cap: int, acc: list[int]):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for part in range(min(cap, remaining), 2, -1):
            if remaining - part in (1, 2):
                continue
            acc.append(part)
            rec(remaining - part, part, acc)
            acc.pop()

    rec(n, n, [])
    return out


def _cycle_union(parts: tuple[int, ...]) -> Graph:
    return disjoint_union(*(cycle(p) for p in parts))


def _enumerate_general(n: int, d: int) -> list[Graph]:
    rows = [0] * n
    deg = [0] * n
    seen: set[tuple] = set()
    out: list[Graph] = []

    def feasible(u: int) -> bool:
        unfinished = [v for v in range(u, n) if deg[v] < d]
        total = sum(d - deg[v] for v in unfinished)
        if total % 2:
            return False
        for v in unfinished:
            if d - deg[v] > len(unfinished) - 1:
                return False
        return True

    def rec(u: int):
        while u < n and deg[u] == d:
            u += 1
        if u == n:
            key = graph_canonical_key(Graph(n, tuple(rows)))
            if key not in seen:
                seen.add(key)
                out.append(Graph(n, tuple(rows)))
            return
        need = d - deg[u]
        eligible = [v for v in range(u + 1, n) if deg[v] < d]
        if len(eligible) < need:
            return
        # interchangeable vertices share an adjacency pattern to finished ones
        groups: list[list[int]] = []
        by_pattern: dict[int, list[int]] = {}
        for v in eligible:
            bucket = by_pattern.get(rows[v])
            if bucket is None:
                bucket = []
                by_pattern[rows[v]] = bucket
                groups.append(bucket)
            bucket.append(v)

        def choose(gi: int, left: int, chosen: list[int]):
            if left == 0:
                for v in chosen:
                    rows[u] |= 1 << v
                    rows[v] |= 1 << u
                    deg[v] += 1
                deg[u] = d
                if feasible(u + 1):
                    rec(u + 1)
                deg[u] = d - need
                for v in chosen:
                    rows[u] &= ~(1 << v)
                    rows[v] &= ~(1 << u)
                    deg[v] -= 1
                return
            if gi == len(groups):
                return
            max_take = min(left, len(groups[gi]))
            for take in range(max_take, -1, -1):
                choose(gi + 1, left - take, chosen + groups[gi][:take])

        choose(0, need, [])

    rec(0)
    return out


def enumerate_constraint_graphs(max_k: int) -> list[ConstraintGraph]:
    """All constraint graphs with 1..max_k vertices up to isomorphism, loops
    allowed, no isolated vertices; brute force over symmetric 0/1 matrices
    with canonical rejection."""
    if max_k > 6:
        raise FeasibilityError("brute-force constraint enumeration capped at 6 vertices")
    out: list[ConstraintGraph] = []
    seen: set[tuple] = set()
    for k in range(1, max_k + 1):
        slots = [(i, j) for i in range(k) for j in range(i, k)]
        for mask in range(1 << len(slots)):
            rows = [0] * k
            for bit, (i, j) in enumerate(slots):
                if mask >> bit & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
            if any(r == 0 for r in rows):
                continue
            h = ConstraintGraph(k, tuple(rows))
            key = constraint_canonical_key(h)
            if key not in seen:
                seen.add(key)
                out.append(h)
    return out


def all_labeled_regular(n: int, d: int) -> int:
    """Count labeled d-regular graphs by brute force over edge masks; only
    for cross-checking the orderly generator at tiny orders."""
    if n > 6:
        raise FeasibilityError("labeled brute force capped at 6 vertices")
    pairs = list(combinations(range(n), 2))
    count = 0
    for mask in range(1 << len(pairs)):
        deg = [0] * n
        for bit, (i, j) in enumerate(pairs):
            if mask >> bit & 1:
                deg[i] += 1
                deg[j] += 1
        if all(x == d for x in deg):
            count += 1
    return count
