"""Image enumeration, structural profiles, and the target-type classifier.

A complete bipartite image of H is an ordered pair (A, B) of nonempty vertex
subsets with every cross pair adjacent; its size is |A||B|.  A complete image
is a pair (A, B) where A is a nonempty fully looped clique, B a disjoint
unlooped clique, with all cross edges present.  Ordered-pair convention:
(A, B) and (B, A) are distinct bipartite images when A != B, while (A, A)
counts once; this is the convention under which the closed-form counts for
the two reference graphs come out exactly right.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import FeasibilityError
from .graphs import ConstraintGraph, bits_of

MAX_IMAGE_ORDER = 16
MAX_LISTED_IMAGES = 1 << 16


def _check_order(h: ConstraintGraph):
    if h.k > MAX_IMAGE_ORDER:
        raise FeasibilityError(
            f"image enumeration supports at most {MAX_IMAGE_ORDER} vertices, got {h.k}"
        )
    if not h.is_normalized():
        raise ValueError("constraint graph has isolated vertices; normalize first")


def common_neighborhoods(h: ConstraintGraph) -> list[int]:
    """common[A] = bitmask of vertices adjacent to every vertex of A, for all
    2^k subsets A (common[0] is the full vertex set)."""
    _check_order(h)
    k = h.k
    full = (1 << k) - 1
    common = [0] * (1 << k)
    common[0] = full
    for a in range(1, 1 << k):
        low = a & -a
        common[a] = common[a ^ low] & h.rows[low.bit_length() - 1]
    return common


def looped_cliques(h: ConstraintGraph) -> list[int]:
    """All nonempty fully looped cliques, as bitmasks."""
    loops = h.loops_mask()
    out: list[int] = []

    def extend(cur: int, candidates: int):
        for v in bits_of(candidates):
            nxt = cur | (1 << v)
            out.append(nxt)
            extend(nxt, candidates & h.rows[v] & ~((1 << (v + 1)) - 1))

    extend(0, loops)
    return out


def unlooped_cliques_within(h: ConstraintGraph, mask: int) -> list[int]:
    """All unlooped cliques (including empty) inside the given vertex mask."""
    unlooped = mask & ~h.loops_mask()
    out = [0]

    def extend(cur: int, candidates: int):
        for v in bits_of(candidates):
            nxt = cur | (1 << v)
            out.append(nxt)
            extend(nxt, candidates & h.rows[v] & ~((1 << (v + 1)) - 1))

    extend(0, unlooped)
    return out


@dataclass(frozen=True)
class ImageSet:
    """Duplicate-free image enumeration for one target graph.

    bipartite_images holds the maximum-size complete bipartite images only
    (the full ordered list can reach 4^k pairs); complete_images is the full
    list of complete images.
    """

    eta: int
    bipartite_images: tuple[tuple[frozenset, frozenset], ...]
    complete_images: tuple[tuple[frozenset, frozenset], ...]


def _mask_set(mask: int) -> frozenset:
    return frozenset(bits_of(mask))


def enumerate_images(h: ConstraintGraph) -> ImageSet:
    common = common_neighborhoods(h)
    k = h.k
    eta = 0
    for a in range(1, 1 << k):
        size = a.bit_count() * common[a].bit_count()
        if size > eta:
            eta = size
    maximal: list[tuple[frozenset, frozenset]] = []
    for a in range(1, 1 << k):
        ca = common[a]
        asz = a.bit_count()
        if asz == 0 or ca == 0 or eta % asz:
            continue
        bsz = eta // asz
        if bsz > ca.bit_count():
            continue
        for b in _subsets_of_size(ca, bsz):
            maximal.append((_mask_set(a), _mask_set(b)))
            if len(maximal) > MAX_LISTED_IMAGES:
                raise FeasibilityError("too many maximal bipartite images to list")
    complete: list[tuple[frozenset, frozenset]] = []
    for a in looped_cliques(h):
        for b in unlooped_cliques_within(h, common[a]):
            complete.append((_mask_set(a), _mask_set(b)))
            if len(complete) > MAX_LISTED_IMAGES:
                raise FeasibilityError("too many complete images to list")
    return ImageSet(eta, tuple(maximal), tuple(complete))


def _subsets_of_size(mask: int, size: int):
    verts = list(bits_of(mask))
    if size > len(verts) or size < 0:
        return
    for combo in combinations(verts, size):
        yield sum(1 << v for v in combo)


def bipartite_size_counts(h: ConstraintGraph) -> dict[tuple[int, int], int]:
    """Number of subsets A with |A| = a whose common neighborhood has size c,
    keyed by (a, c).  Together with surjection counts this determines the
    full ordered bipartite-image sum without listing pairs."""
    common = common_neighborhoods(h)
    out: dict[tuple[int, int], int] = {}
    for a in range(1, 1 << h.k):
        key = (a.bit_count(), common[a].bit_count())
        out[key] = out.get(key, 0) + 1
    return out


def complete_image_size_counts(h: ConstraintGraph) -> dict[tuple[int, int], int]:
    """Number of complete images keyed by (primary, secondary) size."""
    common = common_neighborhoods(h)
    out: dict[tuple[int, int], int] = {}
    for a in looped_cliques(h):
        for b in unlooped_cliques_within(h, common[a]):
            key = (a.bit_count(), b.bit_count())
            out[key] = out.get(key, 0) + 1
    return out


def unlooped_clique_count(h: ConstraintGraph, size: int) -> int:
    """Number of cliques of the given size consisting of unlooped vertices."""
    if size == 0:
        return 1
    full = (1 << h.k) - 1
    return sum(1 for c in unlooped_cliques_within(h, full) if c.bit_count() == size)


# ---------------------------------------------------------------------------
# Structural profile
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StructuralProfile:
    """Image-size parameters of a target graph.

    eta / m: maximal bipartite-image size and its multiplicity.
    a / b / n: maximal primary size of a complete image, the maximal
    secondary size at that primary size, and the multiplicity at (a, b);
    all zero for loopless targets.
    a0: the unique maximal looped clique, present only when a^2 = eta and
    m = n = 1.  The primed fields repeat the maxima restricted to images
    escaping a0 and are None whenever a0 is absent.
    """

    k: int
    eta: int
    m: int
    a: int
    b: int
    n: int
    a0: frozenset | None
    eta_p: int | None
    m_p: int | None
    a_p: int | None
    b_p: int | None
    n_p: int | None


def structural_profile(h: ConstraintGraph) -> StructuralProfile:
    common = common_neighborhoods(h)
    k = h.k

    eta = 0
    m = 0
    for amask in range(1, 1 << k):
        size = amask.bit_count() * common[amask].bit_count()
        if size > eta:
            eta = size
    for amask in range(1, 1 << k):
        asz = amask.bit_count()
        c = common[amask].bit_count()
        if asz == 0 or eta % asz:
            continue
        t = eta // asz
        if 1 <= t <= c:
            m += comb(c, t)

    comp = complete_image_size_counts(h)
    if comp:
        a = max(p for p, _ in comp)
        b = max(s for p, s in comp if p == a)
        n = comp[(a, b)]
    else:
        a = b = n = 0

    a0 = None
    eta_p = m_p = a_p = b_p = n_p = None
    if a > 0 and a * a == eta and m == 1 and n == 1:
        a0_masks = [
            amask
            for amask in looped_cliques(h)
            if amask.bit_count() == a
        ]
        assert len(a0_masks) == 1
        a0_mask = a0_masks[0]
        a0 = _mask_set(a0_mask)

        # primed bipartite parameters: pairs with A or B not inside a0
        eta_p = 0
        for amask in range(1, 1 << k):
            ca = common[amask]
            if ca == 0:
                continue
            if amask & ~a0_mask:
                best = ca.bit_count()
            elif ca & ~a0_mask:
                best = ca.bit_count()
            else:
                continue
            eta_p = max(eta_p, amask.bit_count() * best)
        m_p = 0
        if eta_p:
            for amask in range(1, 1 << k):
                asz = amask.bit_count()
                if eta_p % asz:
                    continue
                t = eta_p // asz
                ca = common[amask]
                c = ca.bit_count()
                if not 1 <= t <= c:
                    continue
                if amask & ~a0_mask:
                    m_p += comb(c, t)
                else:
                    inside = (ca & a0_mask).bit_count()
                    m_p += comb(c, t) - comb(inside, t)

        # primed complete parameters: images with A u B not inside a0
        escaped: dict[tuple[int, int], int] = {}
        for amask in looped_cliques(h):
            for bmask in unlooped_cliques_within(h, common[amask]):
                if (amask | bmask) & ~a0_mask:
                    key = (amask.bit_count(), bmask.bit_count())
                    escaped[key] = escaped.get(key, 0) + 1
        if escaped:
            a_p = max(p for p, _ in escaped)
            b_p = max(s for p, s in escaped if p == a_p)
            n_p = escaped[(a_p, b_p)]
        else:
            a_p = b_p = n_p = 0

    return StructuralProfile(k, eta, m, a, b, n, a0, eta_p, m_p, a_p, b_p, n_p)


# ---------------------------------------------------------------------------
# Classifier
# ---------------------------------------------------------------------------

NEUTRAL = "neutral"
COMPLETE_BIPARTITE = "complete-bipartite"
COMPLETE = "complete"


@dataclass(frozen=True)
class TypeVerdict:
    """Which closed-form bound eventually dominates for this target.

    kind is neutral exactly for complete looped targets; otherwise the
    condition field names the fired branch (cb1..cb5 or ct1..ct4, with cb1
    the loopless shortcut).  crossover_d is the empirically observed degree
    from which exact cross-power comparisons match the verdict, when asked
    for; it is never a proof.
    """

    kind: str
    condition: str
    crossover_d: int | None = None


def classify(h: ConstraintGraph, crossover_d_max: int | None = None) -> TypeVerdict:
    _check_order(h)
    if h.is_complete_looped():
        return TypeVerdict(NEUTRAL, "complete-looped")
    if h.loops_mask() == 0:
        verdict = TypeVerdict(COMPLETE_BIPARTITE, "cb1")
    else:
        p = structural_profile(h)
        if p.a * p.a < p.eta:
            verdict = TypeVerdict(COMPLETE_BIPARTITE, "cb2")
        elif p.m == 1 and p.n == 1:
            lhs = p.a * p.a_p
            if lhs < p.eta_p:
                verdict = TypeVerdict(COMPLETE_BIPARTITE, "cb4")
            elif lhs > p.eta_p:
                verdict = TypeVerdict(COMPLETE, "ct2")
            elif p.b_p > 0:
                verdict = TypeVerdict(COMPLETE, "ct3")
            elif 2 * p.n_p * p.a_p <= p.a * p.m_p and p.m_p > 0:
                verdict = TypeVerdict(COMPLETE_BIPARTITE, "cb5")
            else:
                verdict = TypeVerdict(COMPLETE, "ct4")
        elif p.m < p.n * p.n:
            verdict = TypeVerdict(COMPLETE, "ct1")
        else:
            verdict = TypeVerdict(COMPLETE_BIPARTITE, "cb3")
    if crossover_d_max is not None:
        report = empirical_type(h, crossover_d_max)
        verdict = TypeVerdict(verdict.kind, verdict.condition, report.crossover_d)
    return verdict


@dataclass(frozen=True)
class EmpiricalTypeReport:
    verdicts: tuple
    crossover_d: int | None
    agrees_with_classifier: bool


def empirical_type(h: ConstraintGraph, d_max: int = 12) -> EmpiricalTypeReport:
    """Exact cross-power comparisons for d = 1..d_max and the smallest degree
    from which their sign stays locked to the classifier verdict.

    d = 1 always compares a graph with itself, so a crossover is at least 2
    for non-neutral targets.
    """
    from .closedforms import compare_cross_powers

    verdict = classify(h)
    table = tuple(compare_cross_powers(h, d) for d in range(1, d_max + 1))
    if verdict.kind == NEUTRAL:
        agree = all(v.sign == "equal" for v in table)
        return EmpiricalTypeReport(table, None, agree)
    want = "left>" if verdict.kind == COMPLETE_BIPARTITE else "right>"
    crossover = None
    for start in range(len(table), 0, -1):
        if table[start - 1].sign == want:
            crossover = start
        else:
            break
    agree = crossover is not None
    return EmpiricalTypeReport(table, crossover, agree)
