"""Canonical labelings for small vertex-colored graphs.

The canonical key of a graph is the lexicographically greatest sequence of
(color, degree, back-adjacency bits) triples over all vertex orderings.
Exhaustive depth-first search, pruned by expanding only the candidates that
achieve the maximal next triple; adequate for the n <= 16 graphs handled
here.  Loops are passed through the color channel so they survive
relabeling.
"""

from __future__ import annotations


def canonical_key(n: int, rows: tuple[int, ...], colors: tuple[int, ...] | None = None):
    """Canonical key tuple; two graphs get equal keys iff they are isomorphic
    under a color-preserving vertex bijection."""
    if colors is None:
        colors = (0,) * n
    degs = tuple(rows[v].bit_count() for v in range(n))
    best: list[tuple] | None = None

    def extend(order: list[int], used: int, key: list[tuple]):
        nonlocal best
        p = len(order)
        if best is not None:
            prefix = best[:p]
            if key < prefix:
                return
        if p == n:
            if best is None or key > best:
                best = list(key)
            return
        top = None
        tied: list[int] = []
        for v in range(n):
            if used >> v & 1:
                continue
            bits = 0
            row = rows[v]
            for i, u in enumerate(order):
                if row >> u & 1:
                    bits |= 1 << i
            elem = (colors[v], degs[v], bits)
            if top is None or elem > top:
                top = elem
                tied = [v]
            elif elem == top:
                tied.append(v)
        key.append(top)
        for v in tied:
            order.append(v)
            extend(order, used | (1 << v), key)
            order.pop()
        key.pop()

    extend([], 0, [])
    assert best is not None
    return tuple(best)


def graph_canonical_key(g) -> tuple:
    """Canonical key for a loopless Graph."""
    return canonical_key(g.n, g.rows)


def constraint_canonical_key(h) -> tuple:
    """Canonical key for a ConstraintGraph; loops act as vertex colors."""
    colors = tuple(h.rows[v] >> v & 1 for v in range(h.k))
    return canonical_key(h.k, h.rows, colors)
