"""Regular-graph and constraint-graph enumeration, canonical labelings."""

import random
from itertools import combinations

import pytest

from homcert import FeasibilityError, Graph, catalog
from homcert.canon import constraint_canonical_key, graph_canonical_key
from homcert.generate import enumerate_constraint_graphs, enumerate_regular
from homcert.graphs import ConstraintGraph, bits_of


def brute_force_regular_classes(n, d):
    """Independent oracle: include/exclude DFS over vertex pairs with degree
    pruning only, deduplicated by canonical form."""
    pairs = list(combinations(range(n), 2))
    m = len(pairs)
    rem = [0] * n
    for i, j in pairs:
        rem[i] += 1
        rem[j] += 1
    deg = [0] * n
    rows = [0] * n
    keys = set()

    def rec(idx):
        if idx == m:
            if all(x == d for x in deg):
                keys.add(graph_canonical_key(Graph(n, tuple(rows))))
            return
        i, j = pairs[idx]
        rem[i] -= 1
        rem[j] -= 1
        if deg[i] + rem[i] >= d and deg[j] + rem[j] >= d:
            rec(idx + 1)
        if deg[i] < d and deg[j] < d:
            deg[i] += 1
            deg[j] += 1
            rows[i] |= 1 << j
            rows[j] |= 1 << i
            rec(idx + 1)
            deg[i] -= 1
            deg[j] -= 1
            rows[i] &= ~(1 << j)
            rows[j] &= ~(1 << i)
        rem[i] += 1
        rem[j] += 1

    rec(0)
    return keys


def test_canonical_key_invariant_under_relabeling():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(2, 8)
        rows = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.5:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
        g = Graph(n, tuple(rows))
        perm = list(range(n))
        rng.shuffle(perm)
        assert graph_canonical_key(g) == graph_canonical_key(g.relabeled(perm))


def test_canonical_key_separates_non_isomorphic():
    a = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])  # path
    b = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])  # star
    assert graph_canonical_key(a) != graph_canonical_key(b)
    c = catalog("C5")
    d = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert graph_canonical_key(c) != graph_canonical_key(d)


def test_constraint_canonical_key_respects_loops():
    plain = ConstraintGraph(2, (0b10, 0b01))
    looped = ConstraintGraph(2, (0b11, 0b01))
    assert constraint_canonical_key(plain) != constraint_canonical_key(looped)
    # relabeling invariance with loops
    h = catalog("HC3")
    perm = [2, 0, 3, 1]
    rows = [0] * h.k
    for v in range(h.k):
        for u in bits_of(h.rows[v]):
            rows[perm[v]] |= 1 << perm[u]
    relabeled = ConstraintGraph(h.k, tuple(rows))
    assert constraint_canonical_key(h) == constraint_canonical_key(relabeled)


def test_enumerate_regular_spec_examples():
    assert len(enumerate_regular(4, 3, connected=True)) == 1
    assert len(enumerate_regular(6, 2, connected=False)) == 2
    assert len(enumerate_regular(8, 3, connected=True)) == 5


def test_enumerate_regular_matches_bruteforce_small():
    for n in range(3, 7):
        for d in range(1, n):
            if (n * d) % 2:
                continue
            got = {graph_canonical_key(g) for g in enumerate_regular(n, d)}
            want = brute_force_regular_classes(n, d)
            assert got == want, (n, d)


def test_enumerate_regular_known_counts():
    # published counts for cubic graphs
    assert len(enumerate_regular(10, 3, connected=True)) == 19
    assert len(enumerate_regular(10, 3)) == 21
    assert len(enumerate_regular(7, 4, connected=True)) == 2
    # 2-regular graphs are partitions into cycle lengths >= 3
    assert len(enumerate_regular(12, 2)) == 9
    assert len(enumerate_regular(9, 2)) == 4


def test_enumerate_regular_no_duplicates_and_regular():
    for n, d in [(8, 3), (10, 3), (9, 2)]:
        graphs = enumerate_regular(n, d)
        keys = {graph_canonical_key(g) for g in graphs}
        assert len(keys) == len(graphs)
        for g in graphs:
            assert g.regular_degree() == d


def test_enumerate_regular_deterministic():
    a = enumerate_regular(8, 3)
    b = enumerate_regular(8, 3)
    assert a == b


def test_enumerate_regular_errors():
    with pytest.raises(ValueError):
        enumerate_regular(5, 3)  # odd degree sum
    with pytest.raises(ValueError):
        enumerate_regular(4, 4)  # degree too large
    with pytest.raises(ValueError):
        enumerate_regular(4, 0)
    with pytest.raises(FeasibilityError):
        enumerate_regular(14, 3)


def test_enumerate_constraint_graphs_small():
    ones = enumerate_constraint_graphs(1)
    assert len(ones) == 1 and ones[0].has_loop(0)
    twos = enumerate_constraint_graphs(2)
    # order 1: loop; order 2: edge, edge+1 loop, edge+2 loops, two bare loops
    assert len(twos) == 5
    for h in enumerate_constraint_graphs(3):
        assert h.is_normalized()
    keys = {constraint_canonical_key(h) for h in enumerate_constraint_graphs(3)}
    assert len(keys) == len(enumerate_constraint_graphs(3))
    # the named small targets all appear
    for name in ["IND", "K2", "E2o", "L2", "K3", "P3o", "E3o", "L3"]:
        assert constraint_canonical_key(catalog(name)) in keys
