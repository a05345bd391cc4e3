"""Randomized placement of low vertices, scoring, trials, and concentration
parameters.

Each low vertex gets one uniform draw from a seeded MT19937 stream and is
placed by fixed interval splitting, so runs are bit-reproducible given
(inputs, seed).  The deviation bound z = sqrt((9/2) ln 3) * m^(1 - alpha/2)
is reported alongside the guaranteed coverage threshold, which is expected
to be vacuous at desk scale.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .highlow import HighLowSplit, HighPartition
from .hypergraph import Hypergraph, degrees
from .probabilities import EdgeProfile, NormalizedProfile, QTriple, miss_load

RNG_NAME = "MT19937 (python random.Random)"


@dataclass(frozen=True)
class FullPartition:
    """A total assignment vertex -> part in {1, 2, 3} with per-part coverage
    d(V_i) = number of edges meeting part i."""

    assignment: dict[int, int]
    coverage: tuple[int, int, int]
    seed: int
    rng_name: str = RNG_NAME


@dataclass(frozen=True)
class ConcentrationParams:
    alpha: float
    z: float
    target: float
    vacuous: bool


def score(H: Hypergraph, assignment: dict[int, int]) -> tuple[int, int, int]:
    """Coverage triple: edges with at least one vertex in each part."""
    d = [0, 0, 0]
    for e in H.edges:
        touched = set()
        for v in e:
            part = assignment.get(v)
            if part is None:
                raise ValueError(f"vertex {v} is unassigned")
            touched.add(part)
        for p in touched:
            d[p - 1] += 1
    return (d[0], d[1], d[2])


def assign_low(
    H: Hypergraph,
    split: HighLowSplit,
    P: HighPartition,
    q: QTriple,
    seed: int,
) -> FullPartition:
    """High vertices keep P's parts; each positive-degree low vertex takes one
    seeded uniform draw split at p1 and p1+p2; isolated vertices go to part 1."""
    p = tuple(1.0 - qi for qi in q.q)
    if min(p) < -1e-9 or abs(sum(p) - 1.0) > 1e-9:
        raise ValueError(f"invalid probabilities {p}")
    assignment: dict[int, int] = {}
    for i, part in enumerate(P.parts):
        for v in part:
            assignment[v] = i + 1
    deg = degrees(H)
    rng = random.Random(seed)
    for v in sorted(split.low):
        if deg[v] == 0:
            continue
        u = rng.random()
        if u < p[0]:
            assignment[v] = 1
        elif u < p[0] + p[1]:
            assignment[v] = 2
        else:
            assignment[v] = 3
    for v in sorted(split.low):
        if deg[v] == 0:
            assignment[v] = 1
    return FullPartition(
        assignment=assignment, coverage=score(H, assignment), seed=seed
    )


def expected_coverage(
    inst: NormalizedProfile,
    profile: EdgeProfile,
    P: HighPartition,
    q: QTriple,
    i: int,
) -> float:
    """Exact expectation of d(V_{i+1}) under independent low placement.

    The miss load gives the expected missed fraction among non-3-high edges;
    3-high edges missing high part i are deterministic misses.
    """
    mp = profile.m - profile.e3
    return profile.m - (mp * miss_load(inst, i, q.q[i]) + profile.e3_miss[i])


def run_trials(
    H: Hypergraph,
    split: HighLowSplit,
    P: HighPartition,
    q: QTriple,
    trials: int,
    seed: int,
) -> FullPartition:
    """Best of `trials` assignments (seeds seed, seed+1, ...) by min coverage;
    ties keep the earlier trial."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    best = None
    for t in range(trials):
        fp = assign_low(H, split, P, q, seed + t)
        if best is None or min(fp.coverage) > min(best.coverage):
            best = fp
    return best


def concentration_report(
    H: Hypergraph, split: HighLowSplit, alpha: float
) -> ConcentrationParams:
    """z and the guaranteed threshold (19/27)(m - e3) - z; the threshold is
    flagged vacuous when it is nonpositive, the norm at desk scale."""
    if H.m < 1:
        raise ValueError("need m >= 1")
    e3 = sum(1 for e in H.edges if all(v in split.high for v in e))
    z = math.sqrt(4.5 * math.log(3)) * H.m ** (1 - alpha / 2)
    target = (19 / 27) * (H.m - e3) - z
    return ConcentrationParams(alpha=alpha, z=z, target=target, vacuous=target <= 0)
