"""Exact homomorphism counters and independent-set machinery.

Three independent routes to hom(G, H) live here: exhaustive assignment,
boundary dynamic programming, and the complement inclusion-exclusion
identity.  Their mutual agreement is the core correctness oracle of the
whole package, so they deliberately share no counting logic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import ResourceGuardError, resolve_guard
from .graphs import BigCount, ConstraintGraph, Graph, bits_of

BRUTEFORCE_STATE_GUARD = 10**9
DP_STATE_GUARD = 2_000_000
SUBSET_GUARD = 1 << 26


# ---------------------------------------------------------------------------
# Engine 1: exhaustive assignment with early pruning
# ---------------------------------------------------------------------------


def hom_bruteforce(g: Graph, h: ConstraintGraph, guard: int | None = None) -> BigCount:
    """Count homomorphisms by enumerating all vertex maps, pruning as soon
    as a partial assignment violates an edge."""
    limit = resolve_guard(guard, BRUTEFORCE_STATE_GUARD)
    if h.k ** g.n > limit:
        raise ResourceGuardError(
            f"{h.k}^{g.n} assignment states exceed the guard of {limit}"
        )
    # BFS order per component so each new vertex sees an assigned neighbor
    order: list[int] = []
    seen = 0
    for comp in g.components():
        start = (comp & -comp).bit_length() - 1
        queue = [start]
        seen |= 1 << start
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in bits_of(g.rows[v] & ~seen):
                seen |= 1 << u
                queue.append(u)
    pos = {v: i for i, v in enumerate(order)}
    earlier = [[pos[u] for u in bits_of(g.rows[v]) if pos[u] < pos[v]] for v in order]
    hrows = h.rows
    full = (1 << h.k) - 1
    colors = [0] * g.n

    def rec(i: int) -> int:
        if i == g.n:
            return 1
        allowed = full
        for j in earlier[i]:
            allowed &= hrows[colors[j]]
        total = 0
        for c in bits_of(allowed):
            colors[i] = c
            total += rec(i + 1)
        return total

    return rec(0)


# ---------------------------------------------------------------------------
# Engine 2: dynamic programming over boundary colorings
# ---------------------------------------------------------------------------


def _min_fill_order(g: Graph) -> list[int]:
    """Greedy minimum-fill elimination order; ties broken by vertex index."""
    adj = {v: set(bits_of(g.rows[v])) for v in range(g.n)}
    remaining = set(range(g.n))
    order = []
    while remaining:
        best_v, best_fill = -1, None
        for v in sorted(remaining):
            nbrs = adj[v] & remaining
            fill = 0
            nl = sorted(nbrs)
            for i, a in enumerate(nl):
                for b in nl[i + 1:]:
                    if b not in adj[a]:
                        fill += 1
            if best_fill is None or fill < best_fill:
                best_v, best_fill = v, fill
        nbrs = sorted(adj[best_v] & remaining)
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1:]:
                adj[a].add(b)
                adj[b].add(a)
        remaining.discard(best_v)
        order.append(best_v)
    return order


def hom_dp(g: Graph, h: ConstraintGraph, state_cap: int | None = None) -> BigCount:
    """Count homomorphisms by dynamic programming over partial assignments,
    keyed by the colors of boundary vertices.

    Vertices are introduced in reverse minimum-fill order; a vertex leaves
    the boundary once all its neighbors have been introduced.
    """
    cap = resolve_guard(state_cap, DP_STATE_GUARD)
    order = list(reversed(_min_fill_order(g)))
    pos = {v: i for i, v in enumerate(order)}
    last_needed = [0] * g.n
    for v in range(g.n):
        last_needed[v] = max([pos[v]] + [pos[u] for u in bits_of(g.rows[v])])
    hrows = h.rows
    full = (1 << h.k) - 1
    boundary: list[int] = []
    states: dict[tuple[int, ...], int] = {(): 1}
    for idx, v in enumerate(order):
        nbr_slots = [i for i, u in enumerate(boundary) if g.has_edge(u, v)]
        new_states: dict[tuple[int, ...], int] = {}
        for key, cnt in states.items():
            allowed = full
            for i in nbr_slots:
                allowed &= hrows[key[i]]
            for c in bits_of(allowed):
                nk = key + (c,)
                new_states[nk] = new_states.get(nk, 0) + cnt
        boundary.append(v)
        keep = [i for i, u in enumerate(boundary) if last_needed[u] > idx]
        if len(keep) < len(boundary):
            boundary = [boundary[i] for i in keep]
            merged: dict[tuple[int, ...], int] = {}
            for key, cnt in new_states.items():
                nk = tuple(key[i] for i in keep)
                merged[nk] = merged.get(nk, 0) + cnt
            new_states = merged
        if len(new_states) > cap:
            raise ResourceGuardError(
                f"{len(new_states)} boundary states exceed the cap of {cap}"
            )
        states = new_states
    # every branch dying leaves no surviving state at all
    return states.get((), 0)


# ---------------------------------------------------------------------------
# Engine 3: inclusion-exclusion over edge subsets against the complement
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _component_hom(nv: int, edges: tuple[tuple[int, int], ...],
                   k: int, hrows: tuple[int, ...]) -> int:
    """Homomorphisms from a small connected edge-spanned graph into the
    complement target, by direct assignment."""
    earlier: list[list[int]] = [[] for _ in range(nv)]
    for u, v in edges:
        lo, hi = (u, v) if u < v else (v, u)
        earlier[hi].append(lo)
    full = (1 << k) - 1
    colors = [0] * nv

    def rec(i: int) -> int:
        if i == nv:
            return 1
        allowed = full
        for j in earlier[i]:
            allowed &= hrows[colors[j]]
        total = 0
        for c in bits_of(allowed):
            colors[i] = c
            total += rec(i + 1)
        return total

    return rec(0)


def _split_components(edges: list[tuple[int, int]]) -> list[list[tuple[int, int]]]:
    pool = list(edges)
    comps = []
    while pool:
        comp = [pool.pop(0)]
        verts = {comp[0][0], comp[0][1]}
        grew = True
        while grew:
            grew = False
            rest = []
            for e in pool:
                if e[0] in verts or e[1] in verts:
                    comp.append(e)
                    verts.update(e)
                    grew = True
                else:
                    rest.append(e)
            pool = rest
        comps.append(comp)
    return comps


def _relabel_component(edges: list[tuple[int, int]]) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Consistent relabeling by first appearance in the sorted edge list, so
    equal shapes on different vertex sets share one cache entry."""
    edges = sorted(edges)
    idx: dict[int, int] = {}
    out = []
    for u, v in edges:
        for w in (u, v):
            if w not in idx:
                idx[w] = len(idx)
        a, b = idx[u], idx[v]
        out.append((a, b) if a < b else (b, a))
    return len(idx), tuple(sorted(out))


def hom_inclusion_exclusion(g: Graph, h: ConstraintGraph,
                            guard: int | None = None) -> BigCount:
    """Count homomorphisms through the complement identity: alternating sum
    over edge subsets S of hom(G(S), H^c) * |V(H)|^(n - v(S)), where G(S) is
    the subgraph spanned by S and H^c the complement with isolated vertices
    removed.  The empty subset contributes |V(H)|^n."""
    edges = g.edges()
    m = len(edges)
    limit = resolve_guard(guard, SUBSET_GUARD)
    if 1 << m > limit:
        raise ResourceGuardError(f"2^{m} edge subsets exceed the guard of {limit}")
    hc = h.complement()
    k = h.k
    total = k ** g.n
    if hc is None:
        return total
    kc, hcrows = hc.k, hc.rows
    emasks = [(1 << u) | (1 << v) for u, v in edges]
    for s in range(1, 1 << m):
        chosen = [edges[i] for i in bits_of(s)]
        vmask = 0
        for i in bits_of(s):
            vmask |= emasks[i]
        prod = 1
        for comp in _split_components(chosen):
            nv, key = _relabel_component(comp)
            prod *= _component_hom(nv, key, kc, hcrows)
            if prod == 0:
                break
        if prod == 0:
            continue
        sign = -1 if s.bit_count() & 1 else 1
        total += sign * prod * k ** (g.n - vmask.bit_count())
    assert total >= 0
    return total


# ---------------------------------------------------------------------------
# Independent sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndepProfile:
    """Independent-set counts by size; counts[j] is the number of independent
    sets of size j, truncated at the independence number."""

    alpha: int
    counts: tuple[int, ...]

    def total(self) -> int:
        return sum(self.counts)

    def weighted_sum(self, lam):
        """Exact generating-function value at activity lam (int or Fraction)."""
        return sum(c * lam**j for j, c in enumerate(self.counts))


def indep_profile(g: Graph) -> IndepProfile:
    """Exact size-indexed independent-set counts via branch and bound on the
    highest-degree remaining vertex."""
    rows = g.rows

    def counts(mask: int) -> list[int]:
        if mask == 0:
            return [1]
        best_v, best_deg = -1, -1
        for v in bits_of(mask):
            deg = (rows[v] & mask).bit_count()
            if deg > best_deg:
                best_v, best_deg = v, deg
        if best_deg == 0:
            # remaining vertices are pairwise nonadjacent
            free = mask.bit_count()
            return [comb(free, j) for j in range(free + 1)]
        v = best_v
        without = counts(mask & ~(1 << v))
        with_v = counts(mask & ~(rows[v] | (1 << v)))
        out = list(without) + [0] * max(0, len(with_v) + 1 - len(without))
        for j, c in enumerate(with_v):
            out[j + 1] += c
        return out

    vec = counts((1 << g.n) - 1)
    while len(vec) > 1 and vec[-1] == 0:
        vec.pop()
    return IndepProfile(len(vec) - 1, tuple(vec))


def independence_number(g: Graph) -> int:
    return indep_profile(g).alpha


def max_independent_set(g: Graph) -> tuple[int, ...]:
    """Lexicographically least maximum independent set, as sorted vertices."""
    alpha = independence_number(g)
    rows = g.rows
    found: list[int] | None = None

    def rec(chosen: list[int], candidates: int):
        nonlocal found
        if found is not None:
            return
        if len(chosen) == alpha:
            found = list(chosen)
            return
        if len(chosen) + candidates.bit_count() < alpha:
            return
        for v in bits_of(candidates):
            chosen.append(v)
            rec(chosen, candidates & ~(rows[v] | ((1 << (v + 1)) - 1)))
            chosen.pop()
            if found is not None:
                return
            candidates &= ~(1 << v)
            if len(chosen) + candidates.bit_count() < alpha:
                return

    rec([], (1 << g.n) - 1)
    assert found is not None
    return tuple(found)
