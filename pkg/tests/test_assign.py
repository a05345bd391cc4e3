import itertools
import math
import random

import pytest

from judicious.assign import (
    assign_low,
    concentration_report,
    expected_coverage,
    run_trials,
    score,
)
from judicious.cli import run_pipeline
from judicious.highlow import (
    build_multigraph,
    local_search_partition,
    place_isolated_high,
    split_high_low,
)
from judicious.hypergraph import gen_complete, gen_random
from judicious.probabilities import edge_profile, normalize, solve_q


def pipeline_parts(H, seed=0, alpha=2.0 / 7.0):
    split = split_high_low(H, alpha)
    G = build_multigraph(H, split)
    P = place_isolated_high(H, split, local_search_partition(G, seed))
    prof = edge_profile(H, split, P)
    inst = normalize(prof)
    q = solve_q(inst)
    return split, P, prof, inst, q


def test_score_counts_touched_edges():
    H = gen_complete(4)
    assignment = {0: 1, 1: 1, 2: 2, 3: 3}
    d = score(H, assignment)
    # every K4 edge contains 0 or 1; vertex 2 and vertex 3 each miss one edge
    assert d == (4, 3, 3)


def test_score_rejects_unassigned():
    H = gen_complete(4)
    with pytest.raises(ValueError):
        score(H, {0: 1, 1: 2})


def test_assign_low_is_deterministic():
    H = gen_random(20, 60, seed=1)
    split, P, prof, inst, q = pipeline_parts(H)
    a1 = assign_low(H, split, P, q, seed=42)
    a2 = assign_low(H, split, P, q, seed=42)
    assert a1.assignment == a2.assignment
    assert a1.coverage == a2.coverage


def test_assign_low_total_and_high_fixed():
    H = gen_random(20, 60, seed=2)
    split, P, prof, inst, q = pipeline_parts(H)
    out = assign_low(H, split, P, q, seed=0)
    assert set(out.assignment) == set(range(H.n))
    part_of = P.part_of()
    for v in split.high:
        assert out.assignment[v] == part_of[v] + 1


def test_run_trials_picks_best_min_coverage():
    H = gen_random(25, 80, seed=3)
    split, P, prof, inst, q = pipeline_parts(H)
    singles = [assign_low(H, split, P, q, seed=7 + t) for t in range(20)]
    best = run_trials(H, split, P, q, trials=20, seed=7)
    assert min(best.coverage) == max(min(s.coverage) for s in singles)


def test_expected_coverage_matches_exact_enumeration():
    # Enumerate all 3^|low| placements weighted by p; the formula must match
    # the exact expectation of each part's coverage.
    H = gen_complete(12)
    split, P, prof, inst, q = pipeline_parts(H)
    p = [1.0 - qi for qi in q.q]
    low = sorted(split.low)
    part_of = {v: k + 1 for k, part in enumerate(P.parts) for v in part}
    exact = [0.0, 0.0, 0.0]
    for combo in itertools.product((1, 2, 3), repeat=len(low)):
        weight = 1.0
        for part in combo:
            weight *= p[part - 1]
        assignment = dict(part_of)
        assignment.update(zip(low, combo))
        cov = score(H, assignment)
        for i in range(3):
            exact[i] += weight * cov[i]
    for i in range(3):
        assert expected_coverage(inst, prof, P, q, i) == pytest.approx(
            exact[i], abs=1e-9
        )


def test_expected_coverage_meets_19_27_bound():
    # E d(V_i) >= (19/27)(m - e3) holds exactly for the solved q
    for n in (10, 14, 18):
        H = gen_complete(n)
        split, P, prof, inst, q = pipeline_parts(H)
        floor = (19.0 / 27.0) * (prof.m - prof.e3)
        for i in range(3):
            assert expected_coverage(inst, prof, P, q, i) >= floor - 1e-9


def test_concentration_report_vacuous_at_desk_scale():
    H = gen_complete(30)
    split = split_high_low(H, 2.0 / 7.0)
    rep = concentration_report(H, split, 2.0 / 7.0)
    assert rep.z == pytest.approx(
        math.sqrt(4.5 * math.log(3)) * H.m ** (1 - 1.0 / 7.0)
    )
    assert rep.vacuous
    assert rep.target <= 0


def test_pipeline_coverage_reasonable():
    H = gen_complete(20)  # m = 1140
    best, summary = run_pipeline(H, 2.0 / 7.0, trials=10, seed=0)
    assert summary["min_coverage"] >= (19.0 / 27.0) * H.m * 0.9
