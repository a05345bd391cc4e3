"""Judicious 3-partitions of 3-uniform hypergraphs.

Two halves: a certified re-verification of the case analysis behind the
coverage lower bound (certify), and the constructive partitioning pipeline
(highlow, probabilities, assign) that turns any input hypergraph into a
3-partition in which every part meets at least ~19/27 of the edges.
"""

from .hypergraph import (
    FormatError,
    Hypergraph,
    degrees,
    format_hypergraph,
    gen_complete,
    gen_pair_core,
    gen_random,
    parse_hypergraph,
)
from .highlow import (
    HighLowSplit,
    HighMultigraph,
    HighPartition,
    build_multigraph,
    check_partition_inequalities,
    greedy_bipartition,
    local_search_partition,
    place_isolated_high,
    split_high_low,
)
from .probabilities import (
    CapSumViolation,
    ConstraintViolation,
    DegenerateProfile,
    EdgeProfile,
    MISS_BUDGET,
    NormalizedProfile,
    QTriple,
    edge_profile,
    miss_load,
    normalize,
    q_cap,
    solve_q,
    waterfill,
)
from .assign import (
    ConcentrationParams,
    FullPartition,
    assign_low,
    concentration_report,
    expected_coverage,
    run_trials,
    score,
)
from .certify import (
    CaseSpec,
    CertifiedBound,
    Report,
    builtin_systems,
    certify_case,
    enumerate_cases,
    full_report,
    get_system,
    reduce_case,
    run_spot_checks,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
