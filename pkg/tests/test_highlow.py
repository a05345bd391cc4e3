import itertools
import random

import pytest

from judicious.highlow import (
    HighMultigraph,
    _counts,
    build_multigraph,
    check_partition_inequalities,
    greedy_bipartition,
    local_search_partition,
    place_isolated_high,
    split_high_low,
)
from judicious.hypergraph import gen_complete, gen_pair_core, gen_random


def random_multigraph(rng, max_vertices=12, max_total=60):
    n = rng.randint(2, max_vertices)
    vertices = frozenset(range(n))
    pairs = {}
    budget = rng.randint(1, max_total)
    while budget > 0:
        u, v = rng.sample(range(n), 2)
        key = (min(u, v), max(u, v))
        take = rng.randint(1, budget)
        pairs[key] = pairs.get(key, 0) + take
        budget -= take
    return HighMultigraph(vertices=vertices, pairs=pairs)


def test_split_high_low_basic():
    H = gen_complete(10)  # m = 120
    split = split_high_low(H, 2.0 / 7.0)
    # t = ceil(120^(2/7)) = 4
    assert split.t == 4
    assert split.high == frozenset({0, 1, 2, 3})  # ties to smaller labels
    assert split.low == frozenset(range(4, 10))


def test_split_rejects_bad_alpha():
    H = gen_complete(5)
    with pytest.raises(ValueError):
        split_high_low(H, 0.5)
    with pytest.raises(ValueError):
        split_high_low(H, 0.0)


def test_build_multigraph_counts_two_high_edges():
    H = gen_pair_core(10)
    split = split_high_low(H, 2.0 / 7.0)
    G = build_multigraph(H, split)
    # the pair (0, 1) carries every 2-high edge
    assert G.pairs.get((0, 1), 0) > 0
    assert sum(G.pairs.values()) == G.total_multiplicity


def test_greedy_bipartition_cut_quality():
    rng = random.Random(5)
    for _ in range(50):
        G = random_multigraph(rng, max_vertices=8, max_total=30)
        (s0, s1), cut = greedy_bipartition(sorted(G.vertices), G.pairs)
        assert set(s0) | set(s1) == set(G.vertices)
        assert not set(s0) & set(s1)
        # greedy places each vertex on the side with the smaller placed
        # neighbor weight, so the cut has at least half the total multiplicity
        assert cut * 2 >= sum(G.pairs.values())


def test_local_search_certificate_on_random_multigraphs():
    rng = random.Random(11)
    for trial in range(200):
        G = random_multigraph(rng)
        P = local_search_partition(G, seed=trial)
        slacks = check_partition_inequalities(P)
        assert len(slacks) == 9
        bad = {k: v for k, v in slacks.items() if v < 0}
        assert not bad, (trial, bad)


def brute_force_best(G):
    vertices = sorted(G.vertices)
    best = None
    best_obj = -1
    for assignment in itertools.product(range(3), repeat=len(vertices)):
        part_of = dict(zip(vertices, assignment))
        x, b = _counts(G.pairs, part_of)
        obj = sum(b)
        if obj > best_obj:
            best_obj = obj
            best = part_of
    return best, best_obj


def test_local_search_matches_brute_force_objective_on_small_graphs():
    rng = random.Random(23)
    for trial in range(30):
        G = random_multigraph(rng, max_vertices=5, max_total=12)
        P = local_search_partition(G, seed=trial)
        _, best_obj = brute_force_best(G)
        assert P.objective <= best_obj


def test_place_isolated_high_preserves_certificate():
    H = gen_pair_core(50)
    split = split_high_low(H, 2.0 / 7.0)
    G = build_multigraph(H, split)
    for seed in range(10):
        P = local_search_partition(G, seed)
        P2 = place_isolated_high(H, split, P)
        assert P2.x == P.x
        assert P2.b == P.b
        assert frozenset().union(*P2.parts) == split.high
        # vertices 2..4 are multigraph-isolated; each covers its own edge
        uncovered = [
            e
            for e in H.edges
            if all(v in split.high for v in e)
            and len({P2.part_of()[v] for v in e}) < 3
        ]
        assert uncovered == []
