"""Ordering product bounds, the independent-set-first heuristic, gap reports."""

from fractions import Fraction

import pytest

from homcert import (
    best_bound,
    catalog,
    chromatic_polynomial,
    clique,
    complete_bipartite,
    copies,
    cycle,
    gap_report,
    hom_dp,
    independence_number,
    mt_bound,
    ordering_heuristic,
    ordering_profile,
    standard_catalog,
)
from homcert.generate import enumerate_regular


def test_mt_bound_spec_examples():
    cert = mt_bound(cycle(4), catalog("IND"), (0, 1, 2, 3))
    assert (cert.lhs, cert.rhs, cert.holds) == (49, 63, True)

    # reference graph, sides listed one after the other
    g = complete_bipartite(3, 3)
    cert = mt_bound(g, catalog("P3o"), (0, 1, 2, 3, 4, 5))
    assert cert.holds

    # triangle against proper 3-coloring: hom(K_{2,2}, K3) = 18
    cert = mt_bound(clique(3), catalog("K3"), (0, 1, 2))
    assert cert.lhs == 36
    assert cert.rhs == 6 * 18
    assert chromatic_polynomial(cycle(4))(3) == 18
    assert cert.holds

    # completely looped target saturates every factor
    for k in (2, 3):
        g = clique(3)
        cert = mt_bound(g, catalog(f"L{k}"), (0, 1, 2))
        assert cert.lhs == cert.rhs


def test_mt_bound_rejects_irregular():
    with pytest.raises(ValueError):
        mt_bound(complete_bipartite(2, 3), catalog("IND"), (0, 1, 2, 3, 4))


def test_ordering_profile_invariants():
    for n, d in [(6, 2), (6, 3), (8, 3)]:
        for g in enumerate_regular(n, d):
            for seed in range(3):
                prof = ordering_heuristic(g, seed)
                assert sum(prof.p) == g.edge_count()
                assert prof.p[prof.order[0]] == 0
                alpha = independence_number(g)
                zero = sum(1 for v in range(g.n) if prof.p[v] == 0)
                assert zero == alpha
                assert prof.p_hist[0] == Fraction(alpha, g.n)


def test_ordering_heuristic_spec_examples():
    prof = ordering_heuristic(cycle(4), 0)
    assert set(prof.order[:2]) == {0, 2}
    assert prof.p_hist == (Fraction(1, 2), Fraction(0), Fraction(1, 2))
    prof = ordering_heuristic(clique(4), 0)
    assert sorted(prof.p) == [0, 1, 2, 3]
    prof = ordering_heuristic(copies(clique(3), 2), 5)
    assert prof.p_hist[0] == Fraction(2, 6)


def test_ordering_heuristic_deterministic_per_seed():
    g = cycle(8)
    assert ordering_heuristic(g, 3) == ordering_heuristic(g, 3)
    orders = {ordering_heuristic(g, s).order for s in range(8)}
    assert len(orders) > 1  # the shuffled tail actually varies


def test_ordering_profile_validates_permutation():
    with pytest.raises(ValueError):
        ordering_profile(cycle(4), (0, 1, 2, 2))


def test_best_bound_examples():
    cert = best_bound(cycle(4), catalog("IND"), trials=8)
    assert cert.rhs <= 63 and cert.holds
    # hom(K4, looped path on 3) = 31 by direct enumeration
    cert = best_bound(clique(4), catalog("P3o"))
    assert cert.holds and cert.lhs == 31**3
    # single natural trial reduces to mt_bound with the identity order
    one = best_bound(cycle(5), catalog("K3"), strategies=("natural",), trials=1)
    direct = mt_bound(cycle(5), catalog("K3"), range(5))
    assert (one.lhs, one.rhs, one.order) == (direct.lhs, direct.rhs, direct.order)


def test_mt_bound_holds_at_desk_scale():
    targets = [h for _, h in standard_catalog(3)]
    cases = [(n, d) for d in (2, 3) for n in range(d + 1, 7) if (n * d) % 2 == 0]
    for n, d in cases:
        for g in enumerate_regular(n, d, connected=True):
            for h in targets:
                hom_value = hom_dp(g, h)
                for seed in range(3):
                    order = ordering_heuristic(g, seed).order
                    assert mt_bound(g, h, order, hom_value=hom_value).holds


def test_gap_report_spec_examples():
    rep = gap_report(copies(clique(3), 2), catalog("P3o"))
    assert rep.winner == "tie" and rep.gamma == 0
    rep = gap_report(cycle(6), catalog("P3o"))
    assert rep.independence_number == 3
    assert rep.gamma == Fraction(1, 2) - Fraction(1, 3)
    assert rep.lhs == hom_dp(cycle(6), catalog("P3o")) ** 3
    assert rep.rhs == 15**6
    assert rep.winner == "clique-bound"
    with pytest.raises(ValueError):
        gap_report(cycle(4), catalog("IND"))  # wrong type of target
    with pytest.raises(ValueError):
        gap_report(cycle(4), catalog("HC4"))  # complete-bipartite type


def test_gap_report_serializes():
    rep = gap_report(cycle(6), catalog("WR4"))
    d = rep.to_dict()
    assert d["winner"] in ("clique-bound", "graph", "tie")
    assert isinstance(d["lhs"], int) and isinstance(d["gamma"], str)
