"""Closed forms for the reference graphs and exact cross-power comparisons."""

import pytest

from homcert import (
    catalog,
    clique,
    compare_cross_powers,
    complete_bipartite,
    conjecture_rhs_compare,
    copies,
    cycle,
    falling_factorial,
    hom_dp,
    hom_kdd_closed,
    hom_kdp1_closed,
    hom_kdp1_exact,
    standard_catalog,
    structural_profile,
    surjections,
)
from homcert.closedforms import _kdp1_coeffs
from homcert.generate import enumerate_constraint_graphs


def test_surjections_examples():
    assert surjections(3, 2) == 6
    assert surjections(5, 1) == 1
    assert surjections(2, 3) == 0
    assert surjections(0, 1) == 0
    # classify maps by image size: sum over subsets equals all maps
    from math import comb

    for d in range(1, 6):
        for c in range(1, 5):
            assert sum(comb(c, r) * surjections(d, r) for r in range(1, c + 1)) == c**d


def test_falling_factorial_examples():
    assert falling_factorial(5, 2) == 20
    assert falling_factorial(7, 0) == 1
    assert falling_factorial(3, 4) == 0


def test_kdd_closed_spec_examples():
    assert hom_kdd_closed(catalog("IND"), 2) == 7
    assert hom_kdd_closed(catalog("P3o"), 2) == 35
    for k in (2, 3):
        for d in (1, 2, 3):
            assert hom_kdd_closed(catalog(f"L{k}"), d) == k ** (2 * d)


def test_kdp1_closed_spec_examples():
    res = hom_kdp1_closed(catalog("P3o"), 2)
    assert res.value == 15 and res.valid
    res = hom_kdp1_closed(catalog("IND"), 2)
    assert res.value == 4 and res.valid
    # loopless target without a large enough clique: no complete images at all
    res = hom_kdp1_closed(catalog("K3"), 3)
    assert res.value == 0 and res.valid
    assert hom_dp(clique(4), catalog("K3")) == 0


def test_kdp1_validity_flag_tracks_unlooped_cliques():
    k3 = catalog("K3")
    assert not hom_kdp1_closed(k3, 1).valid  # K_2 maps onto unlooped edges
    assert not hom_kdp1_closed(k3, 2).valid
    assert hom_kdp1_closed(k3, 3).valid
    # closed form misses exactly the bijections onto unlooped cliques
    assert hom_kdp1_closed(k3, 2).value == 0
    assert hom_kdp1_exact(k3, 2) == hom_dp(clique(3), k3) == 6


def test_closed_forms_match_dp_small():
    targets = standard_catalog(4)
    for name, h in targets:
        for d in (1, 2, 3):
            assert hom_kdd_closed(h, d) == hom_dp(complete_bipartite(d, d), h), name
            assert hom_kdp1_exact(h, d) == hom_dp(clique(d + 1), h), name
            closed = hom_kdp1_closed(h, d)
            if closed.valid:
                assert closed.value == hom_dp(clique(d + 1), h), name


def test_obsv_inequality_per_complete_image():
    # every complete image (A, B) gives a bipartite image (A, A u B)
    for h in enumerate_constraint_graphs(4):
        p = structural_profile(h)
        for a, b, _ in _kdp1_coeffs(h):
            assert a * a + a * b <= p.eta


def test_kdd_dominates_maximal_image_contribution():
    for name, h in standard_catalog(4):
        p = structural_profile(h)
        from homcert.structure import enumerate_images

        images = enumerate_images(h)
        for d in (1, 2, 3, 4):
            contrib = sum(
                surjections(d, len(a)) * surjections(d, len(b))
                for a, b in images.bipartite_images
            )
            assert hom_kdd_closed(h, d) >= contrib, name


def test_cross_power_spec_examples():
    v = compare_cross_powers(catalog("P3o"), 2)
    assert (v.left, v.right, v.sign) == (42875, 50625, "right>")
    for k in (1, 2, 3):
        for d in (1, 2, 3, 4):
            assert compare_cross_powers(catalog(f"L{k}"), d).sign == "equal"
    assert compare_cross_powers(catalog("K3"), 3).sign == "left>"


def test_conjecture_compare_spec_examples():
    v = conjecture_rhs_compare(cycle(4), catalog("IND"))
    assert v.satisfied and v.equality and v.dominant == "kdd"
    v = conjecture_rhs_compare(clique(4), catalog("P3o"))
    assert v.satisfied and v.equality and v.dominant == "kdp1"
    v = conjecture_rhs_compare(copies(cycle(3), 2), catalog("E2o"))
    assert v.satisfied and v.equality and v.dominant == "kdp1"
    with pytest.raises(ValueError):
        conjecture_rhs_compare(complete_bipartite(2, 3), catalog("IND"))


def test_conjecture_compare_accepts_precomputed_hom():
    g, h = cycle(6), catalog("P3o")
    v1 = conjecture_rhs_compare(g, h)
    v2 = conjecture_rhs_compare(g, h, hom_value=hom_dp(g, h))
    assert v1 == v2
