import itertools

import pytest

from judicious.hypergraph import (
    FormatError,
    Hypergraph,
    degrees,
    format_hypergraph,
    gen_complete,
    gen_pair_core,
    gen_random,
    parse_hypergraph,
)


def test_parse_simple():
    H = parse_hypergraph("4 2\n0 1 2\n1 2 3\n")
    assert H.n == 4
    assert H.m == 2
    assert H.edges == ((0, 1, 2), (1, 2, 3))


def test_parse_sorts_vertices_and_skips_comments():
    H = parse_hypergraph("# a comment\n5 1\n\n4 0 2\n")
    assert H.edges == ((0, 2, 4),)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(FormatError) as e:
        parse_hypergraph("3 1\n0 1\n")
    assert e.value.lineno == 2
    with pytest.raises(FormatError):
        parse_hypergraph("3 2\n0 1 2\n")  # edge count mismatch
    with pytest.raises(FormatError):
        parse_hypergraph("3 1\n0 1 3\n")  # vertex out of range
    with pytest.raises(FormatError):
        parse_hypergraph("3 1\n0 1 1\n")  # repeated vertex
    with pytest.raises(FormatError):
        parse_hypergraph("")


def test_round_trip_is_bit_exact():
    H = gen_random(9, 20, seed=7)
    assert parse_hypergraph(format_hypergraph(H)) == H
    assert format_hypergraph(parse_hypergraph(format_hypergraph(H))) == (
        format_hypergraph(H)
    )


def test_gen_complete():
    H = gen_complete(6)
    assert H.n == 6
    assert H.m == 20
    assert set(H.edges) == set(itertools.combinations(range(6), 3))


def test_gen_pair_core():
    H = gen_pair_core(5)
    assert H.n == 7
    assert H.edges == tuple((0, 1, j) for j in range(2, 7))


def test_gen_random_is_seeded_and_valid():
    H1 = gen_random(10, 30, seed=3)
    H2 = gen_random(10, 30, seed=3)
    assert H1 == H2
    assert H1.m == 30
    # sampling is with replacement, so repeats are allowed but each edge
    # must still be a valid sorted triple
    assert all(len(set(e)) == 3 and e == tuple(sorted(e)) for e in H1.edges)
    assert gen_random(10, 30, seed=4) != H1


def test_degrees():
    H = parse_hypergraph("4 2\n0 1 2\n1 2 3\n")
    assert degrees(H) == [1, 2, 2, 1]


def test_hypergraph_validation():
    with pytest.raises(ValueError):
        Hypergraph(n=3, edges=((0, 1, 3),))
    with pytest.raises(ValueError):
        Hypergraph(n=4, edges=((2, 1, 3),))  # not sorted
