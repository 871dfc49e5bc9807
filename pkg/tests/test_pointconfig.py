"""Point configurations: Hilbert functions, position checks, tensor ranks."""

import random

import pytest

import oracles as O
from waring6.generators import (
    gen_general_instance,
    gen_rational_quintic_config,
    plant_coplanar_config,
    plant_quadric_config,
)
from waring6.pointconfig import (
    PointConfiguration,
    cayley_bacharach_check,
    is_general_position,
    kruskal_rank_v2,
    terracini_rank,
)


def random_points(seed, n, lo=-9, hi=9):
    rng = random.Random(seed)
    pts = []
    while len(pts) < n:
        P = [rng.randint(lo, hi) for _ in range(4)]
        if any(P):
            pts.append(P)
    return pts


def test_constructor_normalizes_and_rejects_duplicates():
    c = PointConfiguration([[2, 4, 6, 8], [1, 0, 0, 0]])
    assert c.n == 2
    assert c.points[0] == (1, 2, 3, 4)
    with pytest.raises(ValueError):
        PointConfiguration([[1, 2, 3, 4], [2, 4, 6, 8]])
    with pytest.raises(ValueError):
        PointConfiguration([[1, 0, 0, 0]], char=4)
    cp = PointConfiguration([[3, 1, 4, 1]], char=5)
    assert cp.points[0] == tuple(x * pow(3, -1, 5) % 5 for x in (3, 1, 4, 1))


def test_evaluation_matrix_entries_are_monomial_powers():
    pts = random_points(1, 4)
    c = PointConfiguration(pts)
    M = c.evaluation_matrix(3)
    for row, P in zip(M, c.points):
        assert row == O.veronese_vector(list(P), 3)


def test_hilbert_function_matches_rank_oracle():
    for seed in range(6):
        pts = random_points(10 + seed, 7)
        c = PointConfiguration(pts)
        for d in range(5):
            assert c.hilbert_function(d) == O.point_hilbert(
                [list(P) for P in c.points], d
            )
    # finite field variant
    pts = [[x % 101 for x in P] for P in random_points(40, 9)]
    c = PointConfiguration(pts, char=101)
    for d in range(4):
        assert c.hilbert_function(d) == O.point_hilbert(
            [list(P) for P in c.points], d, char=101
        )


def test_generic_hilbert_values_and_differences():
    out = gen_general_instance(16, seed=0)
    c = out.points
    assert [c.hilbert_function(d) for d in range(5)] == [1, 4, 10, 16, 16]
    assert c.difference_hilbert(4) == [1, 3, 6, 6, 0]


def test_ideal_piece_vanishes_on_points():
    out = gen_general_instance(15, seed=3)
    c = out.points
    basis = c.ideal_piece(3)
    assert len(basis) == 20 - 15
    for g in basis:
        for P in c.points:
            assert O.naive_eval(list(g), 3, list(P)) == 0


def test_general_position_counts_and_verdict():
    out = gen_general_instance(18, seed=1)
    rep = is_general_position(out.points)
    assert rep.ok and rep.witness is None
    assert rep.checks == [(1, 3060), (2, 43758), (3, 1)]


def test_planted_coplanar_is_detected_with_named_witness():
    config, planted = plant_coplanar_config(seed=5)
    rep = is_general_position(config)
    assert not rep.ok
    d, wit = rep.witness
    assert d == 1 and tuple(wit) == tuple(planted)
    # the four points really are coplanar
    rows = [list(config.points[i]) for i in wit]
    assert O.frac_rank(rows) == 3


def test_planted_quadric_subset_is_detected():
    config, planted = plant_quadric_config(seed=5)
    rep = is_general_position(config)
    assert not rep.ok
    d, wit = rep.witness
    assert d == 2 and set(wit) <= set(planted)
    rows = [O.veronese_vector(list(config.points[i]), 2) for i in wit]
    assert O.frac_rank(rows) < len(wit)


def test_kruskal_rank_generic_and_planted():
    out = gen_general_instance(14, seed=2)
    assert kruskal_rank_v2(out.points) == 10
    config, _ = plant_quadric_config(seed=3, r=14, k=10)
    assert kruskal_rank_v2(config) < 10


def test_terracini_rank_generic_and_on_curve():
    out = gen_general_instance(16, seed=4)
    assert terracini_rank(out.points) == 64
    rat = gen_rational_quintic_config(seed=0)
    assert terracini_rank(rat.points) < 64
    assert rat.diagnostics["terracini"] == terracini_rank(rat.points)


def test_cayley_bacharach_on_ci_table():
    rep = cayley_bacharach_check([1, 4, 10, 18, 26, 32, 35, 36])
    assert rep["symmetric"] and rep["inequalities_hold"]
    assert rep["dh"] == [1, 3, 6, 8, 8, 6, 3, 1]
    # a table reaching 36 without the symmetry: strict inequality shows up
    rep2 = cayley_bacharach_check([1, 4, 10, 20, 30, 34, 36, 36])
    assert not rep2["symmetric"]
    with pytest.raises(ValueError):
        cayley_bacharach_check([1, 4, 10, 18])
