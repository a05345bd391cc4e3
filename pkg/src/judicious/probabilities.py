"""From a high partition to assignment probabilities.

Classifies every edge by its number of high vertices, normalizes the counts
to an exact rational profile summing to 1, and solves for q1, q2, q3 in
[0, 1] with q1+q2+q3 = 2 such that each part's expected miss load stays at
or below 8/27.  The low vertices are then placed with p_i = 1 - q_i.

Index convention matches highlow: b[i] is the cross count between the two
parts other than i; B_i = b[i] + x_j + x_k and A_i = a_j + a_k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .highlow import HighLowSplit, HighPartition
from .hypergraph import Hypergraph

MISS_BUDGET = Fraction(8, 27)
POST_CHECK_SLACK = 1e-12
CAP_SUM_SLACK = 1e-9


class ConstraintViolation(ValueError):
    """The b_ij >= max(2x_i, 2x_j, x_k/2) constraints fail: partitioner bug."""


class DegenerateProfile(ValueError):
    """Every edge has 3 high vertices; there is nothing to randomize."""


class CapSumViolation(ValueError):
    """The three caps sum below 2, which no valid instance can produce."""


@dataclass(frozen=True)
class EdgeProfile:
    """Raw edge counts by high-vertex multiplicity.

    e3_miss[i] counts 3-high edges with no vertex in high part i; those are
    the only deterministic misses once probabilities are applied.
    """

    x: tuple[int, int, int]
    b: tuple[int, int, int]
    a: tuple[int, int, int]
    c: int
    e3: int
    m: int
    e3_miss: tuple[int, int, int]

    def conserved(self) -> bool:
        return sum(self.x) + sum(self.b) + sum(self.a) + self.c + self.e3 == self.m


@dataclass(frozen=True)
class NormalizedProfile:
    """The ten counts as exact fractions of m' = m - e3, summing to 1."""

    x: tuple[Fraction, Fraction, Fraction]
    b: tuple[Fraction, Fraction, Fraction]
    a: tuple[Fraction, Fraction, Fraction]
    c: Fraction


@dataclass(frozen=True)
class QTriple:
    q: tuple[float, float, float]
    qtilde: tuple[float, float, float]


def edge_profile(
    H: Hypergraph, split: HighLowSplit, P: HighPartition
) -> EdgeProfile:
    part_of = P.part_of()
    x = [0, 0, 0]
    b = [0, 0, 0]
    a = [0, 0, 0]
    c = 0
    e3 = 0
    e3_miss = [0, 0, 0]
    for e in H.edges:
        highs = [v for v in e if v in split.high]
        if len(highs) == 0:
            c += 1
        elif len(highs) == 1:
            a[part_of[highs[0]]] += 1
        elif len(highs) == 2:
            p, q = part_of[highs[0]], part_of[highs[1]]
            if p == q:
                x[p] += 1
            else:
                b[3 - p - q] += 1
        else:
            e3 += 1
            touched = {part_of[v] for v in e}
            for i in range(3):
                if i not in touched:
                    e3_miss[i] += 1
    return EdgeProfile(
        x=tuple(x), b=tuple(b), a=tuple(a), c=c, e3=e3, m=H.m,
        e3_miss=tuple(e3_miss),
    )


def normalize(profile: EdgeProfile) -> NormalizedProfile:
    """Exact division by m' = m - e3, with the b-constraints verified."""
    mp = profile.m - profile.e3
    if mp == 0:
        raise DegenerateProfile("all edges have 3 high vertices")
    x = tuple(Fraction(v, mp) for v in profile.x)
    b = tuple(Fraction(v, mp) for v in profile.b)
    a = tuple(Fraction(v, mp) for v in profile.a)
    c = Fraction(profile.c, mp)
    for k in range(3):
        i, j = sorted({0, 1, 2} - {k})
        bound = max(2 * x[i], 2 * x[j], x[k] / 2)
        if b[k] < bound:
            raise ConstraintViolation(
                f"b{i + 1}{j + 1} = {b[k]} < {bound}; partition is not stationary"
            )
    total = sum(x) + sum(b) + sum(a) + c
    if total != 1:
        raise ValueError(f"normalized profile sums to {total}, not 1")
    return NormalizedProfile(x=x, b=b, a=a, c=c)


def load_coeffs(inst: NormalizedProfile, i: int):
    """(B_i, A_i, c): coefficients of part i's miss load polynomial."""
    B = inst.b[i] + sum(inst.x) - inst.x[i]
    A = sum(inst.a) - inst.a[i]
    return B, A, inst.c


def miss_load(inst: NormalizedProfile, i: int, q) -> float:
    """Expected fraction of non-3-high edges missed by part i: the value
    q*B_i + q^2*A_i + q^3*c."""
    B, A, c = load_coeffs(inst, i)
    return q * float(B) + q * q * float(A) + q**3 * float(c)


def q_cap(B, A, c, tol: float = 1e-14) -> float:
    """min(1, nonnegative root of q*B + q^2*A + q^3*c = 8/27).

    Monotone bisection; the returned value never exceeds the root, so the
    miss load at the cap stays at or below 8/27 (plus bisection error).
    """
    if B < 0 or A < 0 or c < 0:
        raise ValueError("coefficients must be nonnegative")
    B, A, c = float(B), float(A), float(c)
    target = 8.0 / 27.0
    if B + A + c < target:
        return 1.0
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2.0
        if mid * (B + mid * (A + mid * c)) < target:
            lo = mid
        else:
            hi = mid
    return lo


def waterfill(qtildes) -> tuple[float, float, float]:
    """Reduce the caps to a triple summing to exactly 2.

    The surplus is removed from the smallest cap first (ties to the higher
    index): a small cap marks the part with the heaviest miss load, and
    zeroing its q routes every low vertex into that part.  This keeps the
    pair-core family covered exactly regardless of how the high bipartition
    is oriented."""
    total = sum(qtildes)
    if total < 2 - CAP_SUM_SLACK:
        raise CapSumViolation(f"caps sum to {total} < 2")
    q = list(qtildes)
    surplus = max(0.0, total - 2.0)
    for i in sorted(range(3), key=lambda i: (q[i], -i)):
        take = min(q[i], surplus)
        q[i] -= take
        surplus -= take
    return (q[0], q[1], q[2])


def solve_q(inst: NormalizedProfile) -> QTriple:
    """Caps via q_cap, then waterfill; post-verified against the budget."""
    caps = tuple(q_cap(*load_coeffs(inst, i)) for i in range(3))
    q = waterfill(caps)
    for i in range(3):
        load = miss_load(inst, i, q[i])
        if load > float(MISS_BUDGET) + POST_CHECK_SLACK:
            raise CapSumViolation(f"post-check failed: L_{i + 1}(q) = {load}")
    return QTriple(q=q, qtilde=caps)


# -- vectorized variants (used by the large property suites) -----------------


def q_cap_batch(B, A, c, iters: int = 50):
    """Vectorized q_cap over numpy arrays of nonnegative coefficients."""
    B = np.asarray(B, dtype=float)
    A = np.asarray(A, dtype=float)
    c = np.asarray(c, dtype=float)
    target = 8.0 / 27.0
    capped = B + A + c < target
    lo = np.zeros(B.shape)
    hi = np.ones(B.shape)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        below = mid * (B + mid * (A + mid * c)) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return np.where(capped, 1.0, lo)


def waterfill_batch(caps):
    """Vectorized waterfill over an (N, 3) array of caps summing to >= 2,
    removing the surplus smallest-cap-first (ties to the higher index)."""
    q = np.array(caps, dtype=float, copy=True)
    surplus = np.maximum(0.0, q.sum(axis=1) - 2.0)
    # Stable argsort on (cap, -index): reversing columns first makes ties
    # resolve toward the higher original index.
    order = np.argsort(q[:, ::-1], axis=1, kind="stable")
    order = 2 - order
    rows = np.arange(q.shape[0])
    for k in range(3):
        cols = order[:, k]
        take = np.minimum(q[rows, cols], surplus)
        q[rows, cols] -= take
        surplus -= take
    return q


def sample_instances(count: int, seed: int, chunk: int = 200_000):
    """Rejection-sample valid normalized profiles, vectorized.

    Draws nonnegative 10-tuples (x1..3, b23, b13, b12, a1..3, c) uniformly
    from the simplex and keeps those satisfying all nine b-constraints.
    Returns arrays x, b, a (count, 3) and c (count,).
    """
    rng = np.random.default_rng(seed)
    out = []
    remaining = count
    while remaining > 0:
        g = rng.exponential(size=(chunk, 10))
        g /= g.sum(axis=1, keepdims=True)
        x, b = g[:, 0:3], g[:, 3:6]
        ok = np.ones(len(g), dtype=bool)
        for k in range(3):
            i, j = sorted({0, 1, 2} - {k})
            ok &= b[:, k] >= 2 * x[:, i]
            ok &= b[:, k] >= 2 * x[:, j]
            ok &= b[:, k] >= x[:, k] / 2
        accepted = g[ok][:remaining]
        out.append(accepted)
        remaining -= len(accepted)
    g = np.concatenate(out, axis=0)
    return g[:, 0:3], g[:, 3:6], g[:, 6:9], g[:, 9]
