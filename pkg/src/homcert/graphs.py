"""Graph containers, wire formats, named families, and local subgraph counts.

Adjacency is stored in per-vertex bit rows (one Python int per vertex), so
neighborhood algebra is plain word arithmetic.  Source graphs are loopless
simple graphs on at most 32 vertices; constraint graphs additionally allow
loops, stored as diagonal bits.  All counts are exact Python ints.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb

from .errors import FeasibilityError, ParseError

MAX_SOURCE_VERTICES = 32
MAX_TARGET_VERTICES = 16

# Hom-counts are arbitrary-precision nonnegative integers; Python's int is
# exactly that, the alias just makes signatures self-describing.
BigCount = int


def bits_of(mask: int):
    """Yield set bit positions of mask, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# Source graphs (loopless)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Simple loopless graph on vertices 0..n-1; rows[v] is the neighbor bitmask."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_SOURCE_VERTICES:
            raise FeasibilityError(
                f"graph order {self.n} outside supported range 1..{MAX_SOURCE_VERTICES}"
            )
        if len(self.rows) != self.n:
            raise ValueError("row count does not match order")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} references vertices beyond order {self.n}")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v} in a loopless graph")
            for u in bits_of(row):
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v},{u})")

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop ({u},{v}) not allowed")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(n, tuple(rows))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.n):
            row = self.rows[v] >> (v + 1) << (v + 1)
            for u in bits_of(row):
                out.append((v, u))
        return out

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def regular_degree(self) -> int | None:
        degs = {r.bit_count() for r in self.rows}
        return degs.pop() if len(degs) == 1 else None

    def components(self) -> list[int]:
        """Vertex bitmasks of connected components, ordered by least vertex."""
        seen = 0
        comps = []
        for v in range(self.n):
            if seen >> v & 1:
                continue
            comp = 1 << v
            frontier = 1 << v
            while frontier:
                nxt = 0
                for u in bits_of(frontier):
                    nxt |= self.rows[u]
                frontier = nxt & ~comp
                comp |= frontier
            comps.append(comp)
            seen |= comp
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def induced(self, mask: int) -> "Graph":
        verts = list(bits_of(mask))
        idx = {v: i for i, v in enumerate(verts)}
        rows = [0] * len(verts)
        for v in verts:
            for u in bits_of(self.rows[v] & mask):
                rows[idx[v]] |= 1 << idx[u]
        return Graph(len(verts), tuple(rows))

    def relabeled(self, perm) -> "Graph":
        """Graph with vertex v renamed perm[v]."""
        rows = [0] * self.n
        for v in range(self.n):
            for u in bits_of(self.rows[v]):
                rows[perm[v]] |= 1 << perm[u]
        return Graph(self.n, tuple(rows))


def require_regular(g: Graph) -> int:
    d = g.regular_degree()
    if d is None:
        raise ValueError("graph is not regular")
    return d


def disjoint_union(*graphs: Graph) -> Graph:
    n = sum(g.n for g in graphs)
    rows: list[int] = []
    shift = 0
    for g in graphs:
        rows.extend(r << shift for r in g.rows)
        shift += g.n
    return Graph(n, tuple(rows))


def copies(g: Graph, t: int) -> Graph:
    if t < 1:
        raise ValueError("need at least one copy")
    return disjoint_union(*([g] * t))


def clique(n: int) -> Graph:
    if n < 1:
        raise ValueError("clique needs at least one vertex")
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("both sides need at least one vertex")
    left = (1 << a) - 1
    right = ((1 << b) - 1) << a
    rows = [right] * a + [left] * b
    return Graph(a + b, tuple(rows))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least three vertices")
    return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


# ---------------------------------------------------------------------------
# graph6 wire format
# ---------------------------------------------------------------------------


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (standard ASCII encoding, order 1..32).

    Accepts an optional '>>graph6<<' header.  Raises ParseError with the
    offending byte offset on malformed input.
    """
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise ParseError("empty graph6 string", 0)
    try:
        data = s.encode("ascii")
    except UnicodeEncodeError as exc:
        raise ParseError("graph6 must be ASCII", exc.start)
    if data[0] == 126:
        raise FeasibilityError("graph6 long form encodes order > 62; max supported is 32")
    if not 63 <= data[0] <= 126:
        raise ParseError(f"byte {data[0]} outside graph6 range 63..126", 0)
    n = data[0] - 63
    if n == 0:
        raise ParseError("graph of order 0 not supported", 0)
    if n > MAX_SOURCE_VERTICES:
        raise FeasibilityError(f"graph6 order {n} exceeds supported max {MAX_SOURCE_VERTICES}")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) - 1 < need:
        raise ParseError(f"expected {need} payload bytes, got {len(data) - 1}", len(data))
    if len(data) - 1 > need:
        raise ParseError("trailing garbage after graph6 payload", 1 + need)
    stream = 0
    for i, byte in enumerate(data[1:], start=1):
        if not 63 <= byte <= 126:
            raise ParseError(f"byte {byte} outside graph6 range 63..126", i)
        stream = (stream << 6) | (byte - 63)
    pad = need * 6 - nbits
    if pad and stream & ((1 << pad) - 1):
        raise ParseError("nonzero padding bits", len(data) - 1)
    stream >>= pad
    rows = [0] * n
    # upper triangle in column order: (0,1), (0,2), (1,2), (0,3), ...
    pos = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if stream >> pos & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos -= 1
    return Graph(n, tuple(rows))


def serialize_graph6(g: Graph) -> str:
    """Encode a graph as one graph6 line; exact inverse of parse_graph6."""
    n = g.n
    nbits = n * (n - 1) // 2
    stream = 0
    for j in range(1, n):
        for i in range(j):
            stream = (stream << 1) | (g.rows[i] >> j & 1)
    need = (nbits + 5) // 6
    stream <<= need * 6 - nbits
    out = [chr(n + 63)]
    for grp in range(need - 1, -1, -1):
        out.append(chr(((stream >> (6 * grp)) & 63) + 63))
    return "".join(out)


# ---------------------------------------------------------------------------
# Constraint graphs (loops allowed)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstraintGraph:
    """Target graph on vertices 0..k-1; bit v of rows[v] marks a loop."""

    k: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.k <= MAX_SOURCE_VERTICES:
            raise FeasibilityError(
                f"constraint graph order {self.k} outside range 1..{MAX_SOURCE_VERTICES}"
            )
        if len(self.rows) != self.k:
            raise ValueError("row count does not match order")
        full = (1 << self.k) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} references vertices beyond order {self.k}")
            for u in bits_of(row):
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v},{u})")

    @staticmethod
    def from_edges(k: int, edges) -> "ConstraintGraph":
        rows = [0] * k
        for u, v in edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return ConstraintGraph(k, tuple(rows))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def has_loop(self, v: int) -> bool:
        return bool(self.rows[v] >> v & 1)

    def loops_mask(self) -> int:
        return sum(1 << v for v in range(self.k) if self.rows[v] >> v & 1)

    def is_complete_looped(self) -> bool:
        full = (1 << self.k) - 1
        return all(row == full for row in self.rows)

    def edge_pairs(self) -> list[tuple[int, int]]:
        """Edges as (u, v) with u <= v; loops appear as (v, v)."""
        out = []
        for v in range(self.k):
            for u in bits_of(self.rows[v] >> v << v):
                out.append((v, u))
        return out

    def strip_isolated(self) -> tuple["ConstraintGraph", int]:
        """Drop vertices with no incident edge (a loop counts as incidence)."""
        keep = [v for v in range(self.k) if self.rows[v]]
        removed = self.k - len(keep)
        if not keep:
            raise ValueError("constraint graph is empty after removing isolated vertices")
        if removed == 0:
            return self, 0
        idx = {v: i for i, v in enumerate(keep)}
        rows = [0] * len(keep)
        for v in keep:
            for u in bits_of(self.rows[v]):
                rows[idx[v]] |= 1 << idx[u]
        return ConstraintGraph(len(keep), tuple(rows)), removed

    def is_normalized(self) -> bool:
        return all(row for row in self.rows)

    def complement(self) -> "ConstraintGraph | None":
        """Complement within the complete looped graph, isolated vertices
        removed; None when nothing is left (self is complete looped)."""
        full = (1 << self.k) - 1
        rows = tuple((~r) & full for r in self.rows)
        keep = [v for v in range(self.k) if rows[v]]
        if not keep:
            return None
        idx = {v: i for i, v in enumerate(keep)}
        new = [0] * len(keep)
        for v in keep:
            for u in bits_of(rows[v]):
                new[idx[v]] |= 1 << idx[u]
        return ConstraintGraph(len(keep), tuple(new))

    def induced(self, mask: int) -> "ConstraintGraph":
        verts = list(bits_of(mask))
        idx = {v: i for i, v in enumerate(verts)}
        rows = [0] * len(verts)
        for v in verts:
            for u in bits_of(self.rows[v] & mask):
                rows[idx[v]] |= 1 << idx[u]
        return ConstraintGraph(len(verts), tuple(rows))


def parse_constraint(text: str) -> tuple[ConstraintGraph, int]:
    """Parse the 0/1 matrix format: first line k, then k rows of k characters.

    Diagonal 1 marks a loop.  Isolated vertices are stripped; returns the
    normalized graph together with the number of vertices removed.
    """
    lines = [ln.strip() for ln in text.strip().splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty constraint description", 0)
    try:
        k = int(lines[0])
    except ValueError:
        raise ParseError(f"first line must be the order, got {lines[0]!r}", 0)
    if k < 1:
        raise ParseError(f"order must be positive, got {k}", 0)
    if k > MAX_SOURCE_VERTICES:
        raise FeasibilityError(f"order {k} exceeds supported max {MAX_SOURCE_VERTICES}")
    if len(lines) - 1 != k:
        raise ParseError(f"expected {k} matrix rows, got {len(lines) - 1}", 0)
    rows = [0] * k
    for i, ln in enumerate(lines[1:]):
        if len(ln) != k:
            raise ParseError(f"row {i} has length {len(ln)}, expected {k}", 0)
        for j, ch in enumerate(ln):
            if ch == "1":
                rows[i] |= 1 << j
            elif ch != "0":
                raise ParseError(f"row {i} column {j}: character {ch!r} not in 0/1", 0)
    for i in range(k):
        for j in range(i + 1, k):
            if (rows[i] >> j & 1) != (rows[j] >> i & 1):
                raise ParseError(f"matrix not symmetric at ({i},{j})", 0)
    return ConstraintGraph(k, tuple(rows)).strip_isolated()


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------


def complete_unlooped(q: int) -> ConstraintGraph:
    """Loopless complete graph on q vertices (proper q-coloring target)."""
    if q < 2:
        raise ValueError("loopless complete target needs q >= 2")
    full = (1 << q) - 1
    return ConstraintGraph(q, tuple(full ^ (1 << v) for v in range(q)))


def complete_looped(k: int) -> ConstraintGraph:
    if k < 1:
        raise ValueError("need at least one vertex")
    full = (1 << k) - 1
    return ConstraintGraph(k, (full,) * k)


def loop_deleted(q: int, loops_removed: int) -> ConstraintGraph:
    """Complete looped graph on q vertices with the given number of loops deleted."""
    if not 0 <= loops_removed <= q:
        raise ValueError(f"cannot delete {loops_removed} loops from {q} vertices")
    if q == 1 and loops_removed == 1:
        raise ValueError("deleting the only loop leaves an isolated vertex")
    full = (1 << q) - 1
    rows = [full ^ (1 << v) if v < loops_removed else full for v in range(q)]
    return ConstraintGraph(q, tuple(rows))


def widom_rowlinson(q: int) -> ConstraintGraph:
    """Complete looped graph on q vertices with one non-loop edge removed."""
    if q < 2:
        raise ValueError("need q >= 2 to remove an edge")
    full = (1 << q) - 1
    rows = [full] * q
    rows[0] ^= 1 << 1
    rows[1] ^= 1 << 0
    return ConstraintGraph(q, tuple(rows))


def hard_core(k: int) -> ConstraintGraph:
    """k-state hard-core constraint: vertices 0..k, edge ij iff i + j <= k."""
    if k < 1:
        raise ValueError("need k >= 1")
    rows = [0] * (k + 1)
    for i in range(k + 1):
        for j in range(k + 1):
            if i + j <= k:
                rows[i] |= 1 << j
    return ConstraintGraph(k + 1, tuple(rows))


def independent_set_target() -> ConstraintGraph:
    """Unlooped vertex 0 joined to looped vertex 1; counts independent sets."""
    return ConstraintGraph(2, (0b10, 0b11))


def loops_only(k: int) -> ConstraintGraph:
    if k < 1:
        raise ValueError("need at least one loop")
    return ConstraintGraph(k, tuple(1 << v for v in range(k)))


def looped_path(k: int) -> ConstraintGraph:
    if k < 1:
        raise ValueError("need at least one vertex")
    rows = [1 << v for v in range(k)]
    for v in range(k - 1):
        rows[v] |= 1 << (v + 1)
        rows[v + 1] |= 1 << v
    return ConstraintGraph(k, tuple(rows))


def biclique_deleted(q: int, pairs) -> ConstraintGraph:
    """Complete looped graph on q vertices minus disjoint complete bipartite
    edge sets, one K_{r,s} per (r, s) pair."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("need at least one (r, s) pair")
    used = sum(r + s for r, s in pairs)
    if any(r < 1 or s < 1 for r, s in pairs):
        raise ValueError("biclique sides must be positive")
    if used > q:
        raise ValueError(f"pairs consume {used} vertices but q = {q}")
    full = (1 << q) - 1
    rows = [full] * q
    base = 0
    for r, s in pairs:
        for i in range(base, base + r):
            for j in range(base + r, base + r + s):
                rows[i] ^= 1 << j
                rows[j] ^= 1 << i
        base += r + s
    return ConstraintGraph(q, tuple(rows))


_CATALOG_PATTERNS: list[tuple[re.Pattern, object]] = []


def _register(pattern: str, builder):
    _CATALOG_PATTERNS.append((re.compile(pattern), builder))


_register(r"^K(\d+),(\d+)$", lambda a, b: complete_bipartite(int(a), int(b)))
_register(r"^C(\d+)$", lambda n: cycle(int(n)))
_register(r"^K(\d+)$", lambda q: complete_unlooped(int(q)))
_register(r"^L(\d+)$", lambda k: complete_looped(int(k)))
_register(r"^H(\d+)\^(\d+)$", lambda q, l: loop_deleted(int(q), int(l)))
_register(r"^WR(\d+)$", lambda q: widom_rowlinson(int(q)))
_register(r"^HC(\d+)$", lambda k: hard_core(int(k)))
_register(r"^IND$", lambda: independent_set_target())
_register(r"^E(\d+)o$", lambda k: loops_only(int(k)))
_register(r"^P(\d+)o$", lambda k: looped_path(int(k)))


def catalog(name: str):
    """Build a named graph.

    Constraint targets: K4, L3, H4^1 (loop-deleted), WR4, HC2 (hard-core),
    IND, E3o, P4o.  Source graphs: K3,3, C5, and t*<source> for disjoint
    copies (inside a multiplier, K4 means the source clique).
    """
    name = name.strip()
    mult = re.match(r"^(\d+)\*(.+)$", name)
    if mult:
        t = int(mult.group(1))
        base_name = mult.group(2)
        m = re.match(r"^K(\d+)$", base_name)
        base = clique(int(m.group(1))) if m else catalog(base_name)
        if not isinstance(base, Graph):
            raise ValueError(f"multiplier needs a source graph, got {base_name!r}")
        return copies(base, t)
    for pattern, builder in _CATALOG_PATTERNS:
        m = pattern.match(name)
        if m:
            return builder(*m.groups())
    raise ValueError(f"unknown catalog name {name!r}")


def standard_catalog(max_k: int) -> list[tuple[str, ConstraintGraph]]:
    """Named constraint graphs with at most max_k vertices, one per
    isomorphism class (duplicates across families keep the first name)."""
    from .canon import constraint_canonical_key

    names: list[str] = []
    for k in range(1, max_k + 1):
        names.append(f"L{k}")
    for q in range(2, max_k + 1):
        names.append(f"K{q}")
    for q in range(2, max_k + 1):
        for l in range(1, q + 1):
            names.append(f"H{q}^{l}")
    for q in range(2, max_k + 1):
        names.append(f"WR{q}")
    for k in range(1, max_k):
        names.append(f"HC{k}")
    for k in range(1, max_k + 1):
        names.append(f"E{k}o")
        names.append(f"P{k}o")
    out = []
    seen = set()
    for name in names:
        h = catalog(name)
        key = constraint_canonical_key(h)
        if key not in seen:
            seen.add(key)
            out.append((name, h))
    return out


# ---------------------------------------------------------------------------
# Local subgraph statistics
# ---------------------------------------------------------------------------


def count_c3(g: Graph) -> BigCount:
    """Triangles, each counted once as a vertex subset."""
    total = 0
    for u, v in g.edges():
        above = ~((1 << (v + 1)) - 1)
        total += (g.rows[u] & g.rows[v] & above).bit_count()
    return total


def count_c4(g: Graph) -> BigCount:
    """4-cycles (not necessarily induced), each counted once.

    A 4-cycle is determined by a diagonal pair plus two of their common
    neighbors, and has two diagonals, hence the halving.
    """
    total = 0
    for v in range(g.n):
        for u in range(v + 1, g.n):
            total += comb((g.rows[v] & g.rows[u]).bit_count(), 2)
    assert total % 2 == 0
    return total // 2


def count_p4(g: Graph) -> BigCount:
    """Paths on four vertices, each counted once via its unique middle edge."""
    total = 0
    for u, v in g.edges():
        left = g.rows[u] & ~(1 << v)
        right = g.rows[v] & ~(1 << u)
        total += left.bit_count() * right.bit_count() - (left & right).bit_count()
    return total


@dataclass(frozen=True)
class EdgeLocalStats:
    """Per-edge neighborhood split for a regular graph.

    For edge uv: a_mask holds neighbors of u only, b_mask the common
    neighbors, c_mask neighbors of v only.  k = |B|, l = edges between the
    three parts, m = edges inside B.
    """

    k: int
    l: int
    m: int
    a_mask: int
    b_mask: int
    c_mask: int


def edge_local_stats(g: Graph, edge: tuple[int, int]) -> EdgeLocalStats:
    u, v = edge
    if not g.has_edge(u, v):
        raise ValueError(f"({u},{v}) is not an edge")
    a = g.rows[u] & ~g.rows[v] & ~(1 << v)
    b = g.rows[u] & g.rows[v]
    c = g.rows[v] & ~g.rows[u] & ~(1 << u)
    def between(x, y):
        return sum((g.rows[w] & y).bit_count() for w in bits_of(x))
    l = between(a, b) + between(b, c) + between(c, a)
    m = sum((g.rows[w] & b).bit_count() for w in bits_of(b)) // 2
    return EdgeLocalStats(b.bit_count(), l, m, a, b, c)


def p4_via_edge_formula(g: Graph) -> BigCount:
    """Four-vertex path count for a regular graph from per-edge common
    neighborhoods: sum of (d-1)^2 - k(e) over edges."""
    d = require_regular(g)
    total = 0
    for e in g.edges():
        total += (d - 1) ** 2 - edge_local_stats(g, e).k
    return total


# ---------------------------------------------------------------------------
# Tensor-square bipartiteness test
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BstSquare:
    """Square graph on ordered vertex pairs of H; may carry loops at mixed
    pairs, which count as odd cycles for the bipartiteness flag."""

    order: int
    rows: tuple[int, ...]
    bipartite: bool


def bst_square(h: ConstraintGraph) -> BstSquare:
    """Square graph on V(H)^2: (u,v) ~ (u',v') iff uu' and vv' are edges and
    at least one of uv', u'v is a non-edge.  Bipartiteness of this graph is a
    sufficient condition for the bipartite-side bound to dominate."""
    k = h.k
    nn = k * k
    rows = [0] * nn
    pairs = [(u, v) for u in range(k) for v in range(k)]
    for i, (u, v) in enumerate(pairs):
        for j in range(i, nn):
            u2, v2 = pairs[j]
            if (
                h.has_edge(u, u2)
                and h.has_edge(v, v2)
                and not (h.has_edge(u, v2) and h.has_edge(u2, v))
            ):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    bipartite = True
    for i in range(nn):
        if rows[i] >> i & 1:
            bipartite = False
            break
    if bipartite:
        color = [-1] * nn
        for start in range(nn):
            if color[start] != -1 or not rows[start]:
                continue
            color[start] = 0
            queue = [start]
            while queue and bipartite:
                x = queue.pop()
                for y in bits_of(rows[x]):
                    if color[y] == -1:
                        color[y] = 1 - color[x]
                        queue.append(y)
                    elif color[y] == color[x]:
                        bipartite = False
                        break
            if not bipartite:
                break
    return BstSquare(nn, tuple(rows), bipartite)
