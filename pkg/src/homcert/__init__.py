"""Exact H-coloring counting, target classification, and exhaustive
extremal certification for small regular graphs.

Everything is integer-exact: hom counts are Python ints, rational checks use
fractions, and comparisons between fractional powers happen at a common
integer exponent.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundCertificate,
    GapReport,
    OrderingProfile,
    best_bound,
    gap_report,
    mt_bound,
    ordering_heuristic,
    ordering_profile,
)
from .closedforms import (
    CliqueClosedForm,
    ConjectureVerdict,
    CrossPowerVerdict,
    compare_cross_powers,
    conjecture_rhs_compare,
    falling_factorial,
    hom_kdd_closed,
    hom_kdp1_closed,
    hom_kdp1_exact,
    surjections,
)
from .errors import (
    FeasibilityError,
    HomcertError,
    ParseError,
    ResourceGuardError,
)
from .generate import enumerate_constraint_graphs, enumerate_regular
from .graphs import (
    BigCount,
    BstSquare,
    ConstraintGraph,
    EdgeLocalStats,
    Graph,
    bst_square,
    catalog,
    clique,
    complete_bipartite,
    copies,
    count_c3,
    count_c4,
    count_p4,
    cycle,
    disjoint_union,
    edge_local_stats,
    p4_via_edge_formula,
    parse_constraint,
    parse_graph6,
    serialize_graph6,
    standard_catalog,
)
from .homcount import (
    IndepProfile,
    hom_bruteforce,
    hom_dp,
    hom_inclusion_exclusion,
    indep_profile,
    independence_number,
    max_independent_set,
)
from .qpoly import (
    DeletionSpec,
    QPolynomial,
    ThresholdResult,
    broken_circuit_coefficients,
    chromatic_polynomial,
    family_polynomial,
    qpoly_bipartite_deletion,
    qpoly_deleted_loops,
    threshold_q,
)
from .structure import (
    EmpiricalTypeReport,
    ImageSet,
    StructuralProfile,
    TypeVerdict,
    classify,
    empirical_type,
    enumerate_images,
    structural_profile,
)
from .sweep import SweepConfig, SweepReport, expand_targets, run_sweep
