"""3-uniform multi-hypergraphs: data model, text format, and generators.

Vertices are dense 0-based integers.  Edges are unordered triples of three
distinct vertices; duplicate edges are permitted and edge order is preserved
so that seeded runs reproduce exactly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

Edge = tuple[int, int, int]


class FormatError(ValueError):
    """Malformed hypergraph text; carries the offending line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Hypergraph:
    """A 3-uniform multi-hypergraph on vertices 0..n-1.

    Each edge is stored as a sorted triple of distinct vertices.
    """

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        for e in self.edges:
            if len(e) != 3 or len(set(e)) != 3:
                raise ValueError(f"edge {e} must have 3 distinct vertices")
            if e[0] < 0 or e[2] >= self.n:
                raise ValueError(f"edge {e} out of range [0, {self.n})")
            if tuple(sorted(e)) != e:
                raise ValueError(f"edge {e} must be stored sorted")

    @property
    def m(self) -> int:
        return len(self.edges)


def _edge(u: int, v: int, w: int) -> Edge:
    a, b, c = sorted((u, v, w))
    return (a, b, c)


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse the text format: header "n m", then m lines "u v w".

    Lines starting with '#' are ignored.  Errors report line numbers.
    """
    header = None
    n = m = 0
    edges: list[Edge] = []
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise FormatError(lineno, f"expected header 'n m', got {line!r}")
            try:
                n, m = int(fields[0]), int(fields[1])
            except ValueError:
                raise FormatError(lineno, f"non-integer header {line!r}") from None
            if n < 0 or m < 0:
                raise FormatError(lineno, "header counts must be nonnegative")
            header = (n, m)
            continue
        if len(edges) >= m:
            raise FormatError(lineno, f"more than {m} edge lines")
        if len(fields) != 3:
            raise FormatError(lineno, f"expected 3 vertices, got {line!r}")
        try:
            u, v, w = (int(f) for f in fields)
        except ValueError:
            raise FormatError(lineno, f"non-integer vertex in {line!r}") from None
        for x in (u, v, w):
            if x < 0 or x >= n:
                raise FormatError(lineno, f"vertex {x} out of range [0, {n})")
        if len({u, v, w}) != 3:
            raise FormatError(lineno, f"repeated vertex in edge {line!r}")
        edges.append(_edge(u, v, w))
    if header is None:
        raise FormatError(lineno or 1, "missing header")
    if len(edges) != m:
        raise FormatError(lineno or 1, f"expected {m} edges, found {len(edges)}")
    return Hypergraph(n=n, edges=tuple(edges))


def format_hypergraph(H: Hypergraph) -> str:
    """Serialize in the text format; round-trips bit-exactly through parse."""
    lines = [f"{H.n} {H.m}"]
    lines.extend(f"{u} {v} {w}" for u, v, w in H.edges)
    return "\n".join(lines) + "\n"


def gen_complete(n: int) -> Hypergraph:
    """The complete 3-uniform hypergraph: all C(n,3) triples."""
    if n < 3:
        raise ValueError("complete hypergraph needs n >= 3")
    edges = tuple(itertools.combinations(range(n), 3))
    return Hypergraph(n=n, edges=edges)


def gen_pair_core(k: int) -> Hypergraph:
    """k edges {0, 1, j+2}: the fixed pair {0, 1} lies in every edge.

    The adversarial instance for uniformly random partitioning: a part
    containing neither 0 nor 1 touches only the edges whose third vertex
    lands in it.
    """
    if k < 1:
        raise ValueError("pair-core needs k >= 1")
    edges = tuple((0, 1, j + 2) for j in range(k))
    return Hypergraph(n=k + 2, edges=edges)


def gen_random(n: int, m: int, seed: int) -> Hypergraph:
    """m edges sampled uniformly with replacement, deterministic in seed."""
    if n < 3:
        raise ValueError("random hypergraph needs n >= 3")
    rng = random.Random(seed)
    edges = tuple(_edge(*rng.sample(range(n), 3)) for _ in range(m))
    return Hypergraph(n=n, edges=edges)


def degrees(H: Hypergraph) -> list[int]:
    """Per-vertex incidence counts; sums to 3m."""
    deg = [0] * H.n
    for e in H.edges:
        for v in e:
            deg[v] += 1
    return deg
