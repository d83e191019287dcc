"""Near-maximum popular matchings in two-sided markets with ties.

The solver duplicates every edge into six strictly ranked copies, runs
proposer-side deferred acceptance on the strict instance and projects
the result back.  The output is popular under the instance's vote rule
and carries size guarantees against the maximum matching (2/3), the
maximum popular matching (3/4) and the maximum stable matching (4/5).
Brute-force oracles certify all of this on enumerable instances, and
gadget generators produce the reductions that make larger instances
hard.
"""

from popmatch.core import (
    EMPTY_MATCHING,
    Edge,
    GAMMA_MODE,
    Instance,
    Matching,
    StabilityNotion,
    VoteRule,
    WEAK_MODE,
    blocking_edges,
    delta,
    is_maximal,
    is_stable,
    is_valid,
    vote,
)
from popmatch.duplication import (
    CopyType,
    DuplicatedInstance,
    EdgeCopy,
    build_duplicated,
    validate_duplicated,
)
from popmatch.errors import (
    InvalidAssignmentError,
    ParseError,
    PopmatchError,
    PreconditionViolatedError,
    RuleModeMismatchError,
    TooLargeError,
)
from popmatch.fileio import (
    format_instance,
    format_matching,
    parse_instance,
    parse_matching,
    parse_rational,
)
from popmatch.gadgets import (
    PmRestrictedInstance,
    fixtures,
    gadget_inapprox,
    gadget_smti,
    gadget_superpm,
    random_instance,
)
from popmatch.oracle import (
    DEFAULT_EDGE_LIMIT,
    certify_popular,
    enumerate_matchings,
    max_matching,
    max_popular,
    max_stable,
    super_popular_exists,
)
from popmatch.solver import (
    StrictMatching,
    check_strict_stability,
    gale_shapley,
    solve,
    solve_with_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "EMPTY_MATCHING",
    "Edge",
    "GAMMA_MODE",
    "Instance",
    "Matching",
    "StabilityNotion",
    "VoteRule",
    "WEAK_MODE",
    "blocking_edges",
    "delta",
    "is_maximal",
    "is_stable",
    "is_valid",
    "vote",
    "CopyType",
    "DuplicatedInstance",
    "EdgeCopy",
    "build_duplicated",
    "validate_duplicated",
    "InvalidAssignmentError",
    "ParseError",
    "PopmatchError",
    "PreconditionViolatedError",
    "RuleModeMismatchError",
    "TooLargeError",
    "format_instance",
    "format_matching",
    "parse_instance",
    "parse_matching",
    "parse_rational",
    "PmRestrictedInstance",
    "fixtures",
    "gadget_inapprox",
    "gadget_smti",
    "gadget_superpm",
    "random_instance",
    "DEFAULT_EDGE_LIMIT",
    "certify_popular",
    "enumerate_matchings",
    "max_matching",
    "max_popular",
    "max_stable",
    "super_popular_exists",
    "StrictMatching",
    "check_strict_stability",
    "gale_shapley",
    "solve",
    "solve_with_certificate",
    "__version__",
]
