"""Exact linear algebra against Fraction and mod-p reference oracles."""

import random
from fractions import Fraction

import pytest

import oracles as O
from waring6.linalg import (
    crt_list,
    crt_pair,
    det_bareiss,
    echelon_int,
    gcd_list,
    in_rowspace,
    kernel_basis,
    kernel_lll,
    kernel_mod,
    p_saturate,
    primes_desc,
    primitive_int_vector,
    rank,
    rank_mod,
    ratrec,
    rref,
    rref_mod,
    solve,
    solve_mod,
    subspace_complement,
    subspace_sum,
)


def random_matrix(rng, rows, cols, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def test_rref_and_rank_match_fraction_oracle():
    for seed in range(30):
        rng = random.Random(seed)
        M = random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7))
        R, piv = rref(M)
        oR, opiv = O.frac_rref(M)
        assert piv == opiv
        assert [[Fraction(x) for x in row] for row in R] == oR
        assert rank(M) == len(oR)


def test_rref_low_rank_structured():
    # duplicated and scaled rows must collapse
    M = [[1, 2, 3], [2, 4, 6], [1, 2, 3], [0, 0, 0]]
    R, piv = rref(M)
    assert len(R) == 1 and piv == [0]
    assert rank(M) == 1


def test_kernel_basis_annihilates_and_spans():
    for seed in range(30):
        rng = random.Random(100 + seed)
        M = random_matrix(rng, rng.randint(1, 5), rng.randint(2, 8))
        K = kernel_basis(M)
        cols = len(M[0])
        assert len(K) == cols - O.frac_rank(M)
        for v in K:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
        if K:
            # same span as the oracle kernel
            assert O.same_rowspace_frac(K, O.frac_kernel(M))


def test_mod_p_kernels_and_rref():
    for seed in range(30):
        rng = random.Random(200 + seed)
        p = rng.choice([2, 3, 7, 101, 99999989])
        M = random_matrix(rng, rng.randint(1, 6), rng.randint(2, 8))
        R, piv = rref_mod(M, p)
        oR, opiv = O.mod_rref(M, p)
        assert piv == opiv and R == oR
        assert rank_mod(M, p) == len(oR)
        K, _ = kernel_mod(M, p)
        assert len(K) == len(M[0]) - len(oR)
        for v in K:
            assert all(sum(a * b for a, b in zip(row, v)) % p == 0 for row in M)


def test_rank_mod_large_matrix_dispatch():
    # crosses the threshold where elimination switches backend
    rng = random.Random(7)
    M = random_matrix(rng, 70, 70)
    assert rank_mod(M, 99999989) == O.mod_rank(M, 99999989)


def test_solve_exact_and_modular():
    for seed in range(20):
        rng = random.Random(300 + seed)
        n = rng.randint(2, 6)
        M = random_matrix(rng, n + 1, n)
        x0 = [rng.randint(-4, 4) for _ in range(n)]
        b = [sum(a * b_ for a, b_ in zip(row, x0)) for row in M]
        x = solve(M, b)
        assert x is not None
        assert all(
            sum(Fraction(a) * Fraction(xx) for a, xx in zip(row, x)) == bb
            for row, bb in zip(M, b)
        )
        p = 99999989
        xm = solve_mod(M, [bb % p for bb in b], p)
        assert xm is not None
        assert all(
            sum(a * xx for a, xx in zip(row, xm)) % p == bb % p
            for row, bb in zip(M, b)
        )


def test_solve_detects_inconsistency():
    assert solve([[1, 0], [1, 0]], [1, 2]) is None
    assert solve_mod([[1, 0], [1, 0]], [1, 2], 7) is None


def test_det_bareiss_matches_fraction_gauss():
    for seed in range(25):
        rng = random.Random(400 + seed)
        n = rng.randint(1, 6)
        M = random_matrix(rng, n, n)
        assert det_bareiss(M) == O.frac_det(M)
    singular = [[1, 2], [2, 4]]
    assert det_bareiss(singular) == 0


def test_crt_and_ratrec_roundtrip():
    a, m = crt_pair(2, 5, 3, 7)
    assert a % 5 == 2 and a % 7 == 3 and m == 35
    a, m = crt_list([1, 2, 3], [5, 7, 11])
    assert a % 5 == 1 and a % 7 == 2 and a % 11 == 3 and m == 385
    rng = random.Random(11)
    primes = primes_desc(6)
    m = 1
    for p in primes:
        m *= p
    for _ in range(40):
        num = rng.randint(-10**6, 10**6)
        den = rng.randint(1, 10**6)
        from math import gcd

        g = gcd(abs(num), den)
        num, den = num // g if g else num, den // g if g else den
        a = num * pow(den, -1, m) % m
        q = ratrec(a, m)
        assert q is not None and q * den == num


def test_ratrec_contract_on_oversized_input():
    # 7/5000 exceeds the sqrt bound for this modulus, so the answer is
    # either None or some other fraction satisfying the congruence with
    # both parts inside the bound; it can never be 7/5000 itself
    import math

    m = 101 * 103
    bound = math.isqrt(m // 2)
    a = pow(5000, -1, m) * 7 % m
    q = ratrec(a, m)
    if q is not None:
        num, den = int(q.numerator), int(q.denominator)
        assert abs(num) <= bound and 0 < den <= bound
        assert (num - a * den) % m == 0
        assert q * 5000 != 7


def test_primes_desc_properties():
    ps = primes_desc(10)
    assert len(ps) == 10
    assert all(ps[i] > ps[i + 1] for i in range(9))
    assert all(p < 10**8 for p in ps)
    for p in ps:
        assert all(p % q for q in range(2, int(p**0.5) + 1))
    small = primes_desc(3, below=20)
    assert small == [19, 17, 13]


def test_primitive_int_vector():
    assert primitive_int_vector([Fraction(1, 2), Fraction(3, 4)]) == [2, 3]
    assert primitive_int_vector([-2, -4, 6]) == [1, 2, -3]
    assert primitive_int_vector([0, 0]) == [0, 0]
    assert gcd_list([12, 18, 30]) == 6


def test_echelon_int_and_in_rowspace():
    for seed in range(20):
        rng = random.Random(500 + seed)
        M = random_matrix(rng, 4, 6)
        E = echelon_int(M)
        assert all(all(x == int(x) for x in row) for row in E)
        assert O.same_rowspace_frac(E, M) or O.frac_rank(M) == len(E)
        # membership: any combination of rows lies inside, a random
        # vector outside a proper subspace does not
        v = [sum(r[j] for r in M) for j in range(6)]
        assert in_rowspace(v, E)
        if len(E) < 6:
            # a coordinate direction off the pivot set cannot be inside
            piv = rref(E)[1]
            free = next(c for c in range(6) if c not in piv)
            probe = [0] * 6
            probe[free] = 1
            assert not in_rowspace(probe, E)


def test_subspace_sum_and_complement_dims():
    rng = random.Random(600)
    V = random_matrix(rng, 5, 8)
    while O.frac_rank(V) != 5:
        V = random_matrix(rng, 5, 8)
    U = [V[0], V[1]]
    S = subspace_sum(U, V[2:])
    assert len(S) == 5
    C = subspace_complement(U, V)
    assert len(C) == 3
    assert O.frac_rank(U + C) == 5
    with pytest.raises(ValueError):
        subspace_complement([[1] + [0] * 7], [[0] * 8])


def test_kernel_lll_short_saturated_basis():
    for seed in range(6):
        rng = random.Random(700 + seed)
        # 18 random points rarely give small kernels in degree 2; use a
        # generic wide system instead
        M = random_matrix(rng, 6, 9, -20, 20)
        expect = 9 - O.frac_rank(M)
        K = kernel_lll(M, expect)
        assert len(K) == expect
        for v in K:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
        assert O.same_rowspace_frac(K, O.frac_kernel(M))
        # saturation: full rank mod small primes
        for p in (2, 3, 5):
            assert O.mod_rank(K, p) == expect


def test_p_saturate_keeps_span_and_fixes_rank():
    for seed in range(12):
        rng = random.Random(800 + seed)
        p = rng.choice([2, 3, 5])
        base = random_matrix(rng, 3, 7)
        while O.frac_rank(base) != 3:
            base = random_matrix(rng, 3, 7)
        # destroy saturation at p on purpose
        rows = [
            [p * x for x in base[0]],
            [x + p * y for x, y in zip(base[0], base[1])],
            base[2],
        ]
        fixed = p_saturate(rows, p)
        assert O.same_rowspace_frac(fixed, rows)
        assert O.mod_rank(fixed, p) == 3
