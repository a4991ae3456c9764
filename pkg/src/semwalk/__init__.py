"""Right congruences on A^k, semaphore codes, and exact walk analytics."""

from .words import (
    Alphabet,
    Word,
    WordError,
    epsilon,
    is_factor,
    is_prefix,
    is_suffix,
    lcs,
    lcs_of,
    product,
    truncate_suffix,
    words_of_length,
)
from .congruences import (
    BoundExceeded,
    ClosureViolation,
    CongruenceError,
    LatticeReport,
    NotAPartitionError,
    RightCongruence,
    enumerate_all,
    generate,
    identity,
    join,
    lattice_report,
    meet,
    universal,
    validate,
)
from .codes import (
    CodeError,
    IdealRep,
    SemaphoreCode,
    code_action,
    enumerate_ideals,
    from_generators,
    ideal_join,
    ideal_leq,
    ideal_meet,
    is_semaphore,
    is_special,
    lambda_of,
    lower_approx,
    reset_code,
    restrict_k,
    semaphore_code,
    src_lattice,
    suffix_classes,
    tau_of,
    upper_approx,
)
from .graphs import (
    AGraph,
    GraphError,
    cayley,
    debruijn,
    graph_json,
    is_reset,
    isomorphic,
    morphism,
    resets,
    to_dot,
    zeta,
)
from .walks import (
    LetterDistribution,
    LumpedWalk,
    ResetProfile,
    SimulationResult,
    StationaryVector,
    TransitionMatrix,
    WalkError,
    check_polynomial_identity,
    congruence_transition_matrix,
    debruijn_stationary,
    lumped,
    polynomial_identity_holds,
    profile_of_ideal,
    reset_profile,
    simulate,
    solve_stationary,
    stationary,
    transition_matrix,
)

__version__ = "0.1.0"
