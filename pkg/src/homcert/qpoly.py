"""Polynomial-in-q hom counts, chromatic polynomials, broken-circuit
coefficients, and exact integer thresholds between competing families.

For targets built from the complete looped graph on q vertices by deleting
loops or disjoint complete bipartite edge sets, hom(G, H) is a monic degree-n
polynomial in q whose coefficients come from an alternating sum over edge
subsets of G; everything here evaluates those sums exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .canon import graph_canonical_key
from .errors import FeasibilityError, ResourceGuardError, resolve_guard
from .graphs import Graph, bits_of

SUBSET_GUARD = 1 << 26
CHROMATIC_MAX_VERTICES = 20


@dataclass(frozen=True)
class QPolynomial:
    """Dense integer polynomial in q; coeffs[i] multiplies q**i."""

    coeffs: tuple[int, ...]

    @staticmethod
    def from_list(raw) -> "QPolynomial":
        coeffs = list(raw)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return QPolynomial(tuple(coeffs))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self) -> int:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __call__(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        raw = [0] * size
        for i, c in enumerate(self.coeffs):
            raw[i] += c
        for i, c in enumerate(other.coeffs):
            raw[i] -= c
        return QPolynomial.from_list(raw)

    def to_json(self) -> str:
        return json.dumps({"coeffs": list(self.coeffs)})

    @staticmethod
    def from_json(text: str) -> "QPolynomial":
        return QPolynomial.from_list(json.loads(text)["coeffs"])


def _check_subset_guard(m: int, guard: int | None):
    limit = resolve_guard(guard, SUBSET_GUARD)
    if 1 << m > limit:
        raise ResourceGuardError(f"2^{m} edge subsets exceed the guard of {limit}")


def _span_stats(edges, s: int) -> tuple[int, int]:
    """(vertices spanned, components) of the subgraph spanned by subset s."""
    chosen = [edges[i] for i in bits_of(s)]
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = 0
    for u, v in chosen:
        for w in (u, v):
            if w not in parent:
                parent[w] = w
                comps += 1
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return len(parent), comps


def qpoly_deleted_loops(g: Graph, loops_removed: int,
                        guard: int | None = None) -> QPolynomial:
    """hom(G, complete looped K_q minus the given number of loops) as a
    polynomial in q: alternating sum of l^c(S) q^(n - v(S)) over edge subsets."""
    if loops_removed < 0:
        raise ValueError("number of deleted loops must be nonnegative")
    edges = g.edges()
    m = len(edges)
    _check_subset_guard(m, guard)
    raw = [0] * (g.n + 1)
    raw[g.n] = 1
    for s in range(1, 1 << m):
        v, c = _span_stats(edges, s)
        sign = -1 if s.bit_count() & 1 else 1
        raw[g.n - v] += sign * loops_removed**c
    return QPolynomial.from_list(raw)


@dataclass(frozen=True)
class DeletionSpec:
    """Disjoint complete bipartite edge sets to delete from the complete
    looped graph: one K_{r,s} per pair."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("deletion spec needs at least one (r, s) pair")
        if any(r < 1 or s < 1 for r, s in self.pairs):
            raise ValueError("biclique sides must be positive")

    def edges_deleted(self) -> int:
        return sum(r * s for r, s in self.pairs)

    def vertices_consumed(self) -> int:
        return sum(r + s for r, s in self.pairs)


def _bipartition_sizes(edges) -> tuple[int, int] | None:
    """2-coloring class sizes of a connected edge set, or None if odd cycle."""
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = next(iter(adj))
    color = {start: 0}
    queue = [start]
    while queue:
        x = queue.pop()
        for y in adj[x]:
            if y not in color:
                color[y] = 1 - color[x]
                queue.append(y)
            elif color[y] == color[x]:
                return None
    ones = sum(color.values())
    return len(color) - ones, ones


def qpoly_bipartite_deletion(g: Graph, spec: DeletionSpec,
                             guard: int | None = None) -> QPolynomial:
    """hom(G, complete looped K_q minus the spec's bicliques) as a polynomial
    in q.  Only edge subsets spanning a bipartite subgraph contribute; each
    component with class sizes (a, b) maps into one deleted biclique in
    r^a s^b + r^b s^a ways."""
    edges = g.edges()
    m = len(edges)
    _check_subset_guard(m, guard)
    raw = [0] * (g.n + 1)
    raw[g.n] = 1
    pairs = spec.pairs
    for s in range(1, 1 << m):
        chosen = [edges[i] for i in bits_of(s)]
        comps = _edge_components(chosen)
        prod = 1
        nv = 0
        for comp in comps:
            sizes = _bipartition_sizes(comp)
            if sizes is None:
                prod = 0
                break
            a, b = sizes
            nv += a + b
            prod *= sum(r**a * t**b + r**b * t**a for r, t in pairs)
        if prod == 0:
            continue
        sign = -1 if s.bit_count() & 1 else 1
        raw[g.n - nv] += sign * prod
    return QPolynomial.from_list(raw)


def _edge_components(edges) -> list[list[tuple[int, int]]]:
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


# ---------------------------------------------------------------------------
# Chromatic polynomial by deletion-contraction
# ---------------------------------------------------------------------------

_chromatic_cache: dict[tuple, QPolynomial] = {}


def chromatic_polynomial(g: Graph) -> QPolynomial:
    """Exact chromatic polynomial via deletion-contraction, memoized on
    canonical forms, with a closed form once the graph is a forest."""
    if g.n > CHROMATIC_MAX_VERTICES:
        raise FeasibilityError(
            f"chromatic polynomial supports at most {CHROMATIC_MAX_VERTICES} vertices"
        )
    return _chromatic(g)


def _forest_poly(n: int, m: int) -> QPolynomial:
    """Chromatic polynomial q^(n-m) (q-1)^m of a forest with m edges."""
    raw = [0] * (n + 1)
    for j in range(m + 1):
        raw[n - m + j] = comb(m, j) * (-1) ** (m - j)
    return QPolynomial.from_list(raw)


def _chromatic(g: Graph) -> QPolynomial:
    m = g.edge_count()
    comps = g.components()
    if m == g.n - len(comps):
        return _forest_poly(g.n, m)
    key = graph_canonical_key(g)
    hit = _chromatic_cache.get(key)
    if hit is not None:
        return hit
    # pick an edge on a cycle: any edge whose removal keeps the component count
    u, v = _cycle_edge(g)
    deleted = _drop_edge(g, u, v)
    contracted = _contract_edge(g, u, v)
    out = _chromatic(deleted) - _chromatic(contracted)
    _chromatic_cache[key] = out
    return out


def _cycle_edge(g: Graph) -> tuple[int, int]:
    before = len(g.components())
    for u, v in g.edges():
        if len(_drop_edge(g, u, v).components()) == before:
            return u, v
    raise AssertionError("graph with a cycle must have a cycle edge")


def _drop_edge(g: Graph, u: int, v: int) -> Graph:
    rows = list(g.rows)
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)
    return Graph(g.n, tuple(rows))


def _contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Merge v into u, dropping parallel edges, relabeling to stay dense."""
    keep = [w for w in range(g.n) if w != v]
    idx = {w: i for i, w in enumerate(keep)}
    rows = [0] * len(keep)
    for a, b in g.edges():
        x = u if a == v else a
        y = u if b == v else b
        if x == y:
            continue
        rows[idx[x]] |= 1 << idx[y]
        rows[idx[y]] |= 1 << idx[x]
    return Graph(len(keep), tuple(rows))


# ---------------------------------------------------------------------------
# Broken circuits
# ---------------------------------------------------------------------------


def broken_circuit_coefficients(g: Graph, edge_order,
                                guard: int | None = None) -> tuple[int, ...]:
    """Whitney coefficients (a_1, ..., a_{n-1}): a_i counts the i-subsets of
    E(G) containing no broken circuit, where a broken circuit is a cycle
    minus its maximum edge under the given total order."""
    edges = g.edges()
    m = len(edges)
    _check_subset_guard(m, guard)
    order = [tuple(e) if e[0] < e[1] else (e[1], e[0]) for e in edge_order]
    if sorted(order) != sorted(edges):
        raise ValueError("edge_order must be a permutation of E(G)")
    rank = {e: i for i, e in enumerate(order)}
    eidx = {e: i for i, e in enumerate(edges)}

    broken: list[int] = []
    for s in range(1, 1 << m):
        chosen = [edges[i] for i in bits_of(s)]
        if len(chosen) < 3:
            continue
        if not _is_cycle(chosen):
            continue
        top = max(chosen, key=lambda e: rank[e])
        bc = 0
        for e in chosen:
            if e != top:
                bc |= 1 << eidx[e]
        broken.append(bc)
    broken = sorted(set(broken))

    counts = [0] * (g.n)
    for s in range(1 << m):
        if any(bc & ~s == 0 for bc in broken):
            continue
        size = s.bit_count()
        if size < g.n:
            counts[size] += 1
    return tuple(counts[1:])


def _is_cycle(edges) -> bool:
    deg: dict[int, int] = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if any(d != 2 for d in deg.values()):
        return False
    return len(_edge_components(edges)) == 1


# ---------------------------------------------------------------------------
# Family dispatch and integer thresholds
# ---------------------------------------------------------------------------


def family_polynomial(g: Graph, family) -> QPolynomial:
    """Evaluate one of the supported polynomial families.

    family is "chromatic", ("loops", l) for the deleted-loop family, or
    ("bipartite", DeletionSpec | pairs).
    """
    if family == "chromatic" or family == ("chromatic",):
        return chromatic_polynomial(g)
    kind = family[0]
    if kind == "loops":
        return qpoly_deleted_loops(g, family[1])
    if kind == "bipartite":
        spec = family[1]
        if not isinstance(spec, DeletionSpec):
            spec = DeletionSpec(tuple(tuple(p) for p in spec))
        return qpoly_bipartite_deletion(g, spec)
    raise ValueError(f"unknown polynomial family {family!r}")


@dataclass(frozen=True)
class ThresholdResult:
    """Smallest integer q0 with reference poly strictly above the other for
    all integers q >= q0; kind is "tie" when the polynomials agree and
    "never" when the difference is eventually negative."""

    kind: str  # "finite", "tie", "never"
    q0: int | None
    diff: QPolynomial


def threshold_q(g_ref: Graph, g: Graph, family) -> ThresholdResult:
    """Certified threshold for poly(g_ref) - poly(g) > 0 at integer q.

    The leading sign settles behavior beyond the Cauchy root bound
    1 + max |c_i| / |c_lead|; an integer scan below the bound finds the
    exact threshold.
    """
    diff = family_polynomial(g_ref, family) - family_polynomial(g, family)
    if diff.is_zero():
        return ThresholdResult("tie", None, diff)
    if diff.leading() < 0:
        return ThresholdResult("never", None, diff)
    lead = diff.leading()
    bound = 1 + max(abs(c) for c in diff.coeffs) / Fraction(lead)
    hi = int(bound) + 1
    q0 = 1
    for q in range(1, hi + 1):
        if diff(q) <= 0:
            q0 = q + 1
    return ThresholdResult("finite", q0, diff)
