"""Image enumeration, structural profiles, and the type classifier."""

import pytest

from homcert import (
    FeasibilityError,
    catalog,
    classify,
    empirical_type,
    enumerate_images,
    structural_profile,
)
from homcert.generate import enumerate_constraint_graphs
from homcert.graphs import ConstraintGraph


def test_enumerate_images_widom_rowlinson():
    images = enumerate_images(catalog("P3o"))
    assert images.eta == 4
    # two maximal images, each of the (A, A) shape on consecutive vertices
    assert len(images.bipartite_images) == 2
    for a, b in images.bipartite_images:
        assert a == b and len(a) == 2


def test_enumerate_images_independent_set_target():
    images = enumerate_images(catalog("IND"))
    assert images.eta == 2
    assert len(images.bipartite_images) == 2
    # ordered pair and its reverse
    pair = set(images.bipartite_images)
    assert len(pair) == 2
    assert {(a, b) for a, b in pair} == {(b, a) for a, b in pair}


def test_enumerate_images_single_loop():
    images = enumerate_images(catalog("E1o"))
    assert images.eta == 1
    assert images.bipartite_images == ((frozenset({0}), frozenset({0})),)
    assert images.complete_images == ((frozenset({0}), frozenset()),)


def test_profile_paper_values():
    p = structural_profile(catalog("HC4"))  # hard-core with even k = 4
    assert (p.eta, p.m, p.a, p.n) == (9, 1, 3, 1)
    assert (p.a_p, p.eta_p) == (2, 8)
    p = structural_profile(catalog("WR4"))
    assert (p.eta, p.a, p.m, p.n) == (9, 3, 2, 2)
    p = structural_profile(catalog("E3o"))
    assert (p.eta, p.a, p.m, p.n) == (1, 1, 3, 3)
    p = structural_profile(catalog("H4^1"))
    assert (p.eta, p.a) == (12, 3)
    for k in (3, 4, 5, 6):
        p = structural_profile(catalog(f"P{k}o"))
        assert (p.eta, p.a, p.m, p.n) == (4, 2, k - 1, k - 1)


def test_profile_primed_absent_unless_unique_maximum():
    p = structural_profile(catalog("P3o"))  # m = n = 2
    assert p.a0 is None and p.eta_p is None
    p = structural_profile(catalog("K3"))  # loopless
    assert (p.a, p.b, p.n) == (0, 0, 0)


def test_profile_invariants_exhaustive_small():
    for h in enumerate_constraint_graphs(4):
        p = structural_profile(h)
        assert p.a * p.a + p.a * p.b <= p.eta
        if p.a * p.a == p.eta:
            assert p.b == 0
            if p.a > 0:
                assert p.m >= p.n
        if p.a0 is not None:
            assert p.m == 1 and p.n == 1 and p.a * p.a == p.eta
            # the unique maximal looped clique has the announced size
            assert len(p.a0) == p.a
            # primed conventions: eta' = 0 iff complete looped
            assert (p.eta_p == 0) == h.is_complete_looped()


def test_classifier_spec_examples():
    assert classify(catalog("K4")).kind == "complete-bipartite"
    v = classify(catalog("P4o"))
    assert v.kind == "complete" and v.condition == "ct1"
    assert classify(catalog("HC5")).kind == "complete-bipartite"  # odd k: a^2 < eta
    assert classify(catalog("L3")).kind == "neutral"


def test_classifier_requires_normalized_input():
    classify(ConstraintGraph(2, (0b10, 0b01)))  # plain edge: fine
    with pytest.raises(ValueError):
        ConstraintGraph(2, (0b10, 0b00))  # asymmetric, rejected at build
    with pytest.raises(ValueError):
        classify(ConstraintGraph(2, (0b01, 0b00)))  # isolated vertex 1


def test_classifier_exactly_one_condition_fires_small():
    seen_conditions = set()
    for h in enumerate_constraint_graphs(4):
        v = classify(h)
        assert v.kind in ("neutral", "complete-bipartite", "complete")
        if v.kind == "neutral":
            assert h.is_complete_looped()
        else:
            assert not h.is_complete_looped()
        seen_conditions.add(v.condition)
    # the small census already exercises most branches
    assert {"cb1", "cb2", "ct1", "complete-looped"} <= seen_conditions


def test_empirical_matches_classifier_on_three_vertices():
    for h in enumerate_constraint_graphs(3):
        report = empirical_type(h, 12)
        assert report.agrees_with_classifier, h
        if classify(h).kind == "neutral":
            assert report.crossover_d is None
        else:
            assert report.crossover_d is not None and report.crossover_d >= 2


def test_crossover_examples():
    assert empirical_type(catalog("P3o"), 12).crossover_d == 2
    assert empirical_type(catalog("IND"), 12).crossover_d == 2
    assert empirical_type(catalog("L2"), 12).crossover_d is None


def test_feasibility_cap():
    with pytest.raises(FeasibilityError):
        big = ConstraintGraph(17, tuple((1 << 17) - 1 for _ in range(17)))
        structural_profile(big)
