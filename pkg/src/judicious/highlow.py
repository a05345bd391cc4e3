"""High/low degree split, induced multigraph, and the 3-partition local search.

The local search maximizes the total cross multiplicity b23+b13+b12 under two
move families: single-vertex relocation, and a compound move that merges one
part into another and re-creates it from a greedy bipartition of the third.
Stationarity under both families certifies b_ij >= max(2*x_i, 2*x_j, x_k/2).

Index convention: parts are 0, 1, 2; x[i] is the internal multiplicity of
part i and b[i] is the cross multiplicity between the two *other* parts
(so b[0] = b23, b[1] = b13, b[2] = b12 in 1-based naming).
"""

from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .hypergraph import Hypergraph, degrees

Pair = tuple[int, int]


@dataclass(frozen=True)
class HighLowSplit:
    alpha: float
    t: int
    high: frozenset[int]
    low: frozenset[int]


@dataclass
class HighMultigraph:
    """Multigraph on the high vertices induced by edges with exactly two
    high vertices; pairs maps each sorted high pair to its multiplicity."""

    vertices: frozenset[int]
    pairs: dict[Pair, int]

    @property
    def total_multiplicity(self) -> int:
        return sum(self.pairs.values())


@dataclass
class HighPartition:
    parts: tuple[frozenset[int], frozenset[int], frozenset[int]]
    x: tuple[int, int, int]
    b: tuple[int, int, int]
    objective: int
    move_log: int

    def part_of(self) -> dict[int, int]:
        return {v: i for i, part in enumerate(self.parts) for v in part}


def split_high_low(H: Hypergraph, alpha: float) -> HighLowSplit:
    """The t = ceil(m^alpha) highest-degree vertices (capped at n) go high.

    Degree ties break toward the smaller vertex label for determinism.
    """
    if not 0 < alpha < 1 / 3:
        raise ValueError(f"alpha must be in (0, 1/3), got {alpha}")
    if H.m == 0:
        raise ValueError("split requires at least one edge")
    t = min(H.n, math.ceil(H.m**alpha))
    deg = degrees(H)
    order = sorted(range(H.n), key=lambda v: (-deg[v], v))
    return HighLowSplit(
        alpha=alpha,
        t=t,
        high=frozenset(order[:t]),
        low=frozenset(order[t:]),
    )


def build_multigraph(H: Hypergraph, split: HighLowSplit) -> HighMultigraph:
    """Project each edge with exactly 2 high vertices onto its high pair."""
    pairs: dict[Pair, int] = defaultdict(int)
    for e in H.edges:
        highs = [v for v in e if v in split.high]
        if len(highs) == 2:
            pairs[(min(highs), max(highs))] += 1
    return HighMultigraph(vertices=frozenset(split.high), pairs=dict(pairs))


def greedy_bipartition(
    vertices, pairs: dict[Pair, int]
) -> tuple[tuple[frozenset[int], frozenset[int]], int]:
    """Greedy max-cut bipartition of the given vertex set.

    Vertices are placed in label order on the side with the smaller placed
    neighbor multiplicity; ties go to the smaller side, then side 0.  The
    resulting cut is at least half the total multiplicity within the set.
    """
    order = sorted(vertices)
    vset = set(order)
    adj: dict[int, list[tuple[int, int]]] = defaultdict(list)
    total = 0
    for (u, v), mult in pairs.items():
        if u in vset and v in vset:
            adj[u].append((v, mult))
            adj[v].append((u, mult))
            total += mult
    sides: tuple[set[int], set[int]] = (set(), set())
    cut = 0
    for v in order:
        w0 = sum(mult for u, mult in adj[v] if u in sides[0])
        w1 = sum(mult for u, mult in adj[v] if u in sides[1])
        if w0 < w1:
            s = 0
        elif w1 < w0:
            s = 1
        elif len(sides[0]) < len(sides[1]):
            s = 0
        elif len(sides[1]) < len(sides[0]):
            s = 1
        else:
            s = 0
        sides[s].add(v)
        cut += max(w0, w1)
    return (frozenset(sides[0]), frozenset(sides[1])), cut


def _counts(pairs: dict[Pair, int], part_of: dict[int, int]):
    x = [0, 0, 0]
    cross = [0, 0, 0]  # cross[k] = multiplicity between the two parts != k
    for (u, v), mult in pairs.items():
        pu, pv = part_of[u], part_of[v]
        if pu == pv:
            x[pu] += mult
        else:
            cross[3 - pu - pv] += mult
    return tuple(x), tuple(cross)


def local_search_partition(G: HighMultigraph, seed: int) -> HighPartition:
    """Maximize b23+b13+b12 to stationarity from a seeded random start.

    Pure in (G, seed).  Terminates: the objective is a nonnegative integer
    bounded by the total multiplicity and strictly increases per move.
    """
    rng = random.Random(seed)
    verts = sorted(G.vertices)
    part_of = {v: rng.randrange(3) for v in verts}
    adj: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for (u, v), mult in G.pairs.items():
        adj[u].append((v, mult))
        adj[v].append((u, mult))

    moves = 0
    while True:
        applied = False
        # Single-vertex moves, (vertex, target) order, first improvement.
        for v in verts:
            p = part_of[v]
            w = [0, 0, 0]
            for u, mult in adj[v]:
                w[part_of[u]] += mult
            for r in range(3):
                if r != p and w[p] - w[r] > 0:
                    part_of[v] = r
                    moves += 1
                    applied = True
                    break
            if applied:
                break
        if applied:
            continue
        # Compound moves: merge part i into j, re-split part k.
        _, cross = _counts(G.pairs, part_of)
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                k = 3 - i - j
                b_ij = cross[k]
                part_k = [v for v in verts if part_of[v] == k]
                (keep, move), cut = greedy_bipartition(part_k, G.pairs)
                if cut - b_ij > 0:
                    for v in verts:
                        if part_of[v] == i:
                            part_of[v] = j
                    for v in move:
                        part_of[v] = i
                    moves += 1
                    applied = True
                    break
            if applied:
                break
        if not applied:
            break

    parts = tuple(frozenset(v for v in verts if part_of[v] == p) for p in range(3))
    x, b = _counts(G.pairs, part_of)
    return HighPartition(parts=parts, x=x, b=b, objective=sum(b), move_log=moves)


def check_partition_inequalities(P: HighPartition) -> dict[str, Fraction]:
    """Slack of each of the nine inequalities b_ij >= max(2x_i, 2x_j, x_k/2).

    All slacks are nonnegative for any local_search_partition output.
    """
    slacks: dict[str, Fraction] = {}
    for k in range(3):
        i, j = sorted({0, 1, 2} - {k})
        name = f"b{i + 1}{j + 1}"
        bij = P.b[k]
        slacks[f"{name}>=2*x{i + 1}"] = Fraction(bij - 2 * P.x[i])
        slacks[f"{name}>=2*x{j + 1}"] = Fraction(bij - 2 * P.x[j])
        slacks[f"{name}>=x{k + 1}/2"] = Fraction(bij) - Fraction(P.x[k], 2)
    return slacks


def place_isolated_high(
    H: Hypergraph, split: HighLowSplit, P: HighPartition
) -> HighPartition:
    """Reassign high vertices that are isolated in the induced multigraph so
    their edges cover otherwise-untouched parts.

    Such vertices appear in no 2-high edge, so moving them changes neither
    x nor b and the stationarity certificate is preserved.  Each one (in
    label order) goes to the part maximizing the number of its edges whose
    remaining vertices all avoid that part; ties keep the current part.
    """
    in_pair = set()
    for e in H.edges:
        highs = [v for v in e if v in split.high]
        if len(highs) == 2:
            in_pair.update(highs)
    isolated = sorted(split.high - in_pair)
    if not isolated:
        return P
    part_of = P.part_of()
    for v in isolated:
        gains = [0, 0, 0]
        for e in H.edges:
            if v not in e:
                continue
            others = {part_of[u] for u in e if u != v and u in part_of}
            for p in range(3):
                if p not in others:
                    gains[p] += 1
        best = max(range(3), key=lambda p: (gains[p], p == part_of[v], -p))
        part_of[v] = best
    verts = sorted(split.high)
    parts = tuple(frozenset(v for v in verts if part_of[v] == p) for p in range(3))
    return HighPartition(
        parts=parts, x=P.x, b=P.b, objective=P.objective, move_log=P.move_log
    )
