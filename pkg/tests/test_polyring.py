"""Polynomial layer against naive dict-based reference implementations."""

import random
from fractions import Fraction

import pytest

import oracles as O
from waring6.polyring import (
    MAX_DEGREE,
    MONOMIAL_ORDER_ID,
    dual_to_polynomial,
    eval_form,
    eval_gradient,
    gradient,
    monomial_index,
    monomials,
    multiples_piece,
    multiply,
    n_monomials,
    pair,
    polynomial_to_dual,
    resultant_x3,
    shift_row,
    substitute_linear,
    tern_add,
    tern_mul,
    tern_scale,
    tern_to_vector,
    vector_to_tern,
    veronese_dual,
)


def random_form(rng, d, nvars=4, lo=-6, hi=6):
    return [rng.randint(lo, hi) for _ in range(n_monomials(d, nvars))]


def test_monomial_order_is_frozen():
    assert MONOMIAL_ORDER_ID == "grlex-desc:x0>x1>x2>x3"
    for d in range(MAX_DEGREE + 1):
        ms = monomials(d)
        assert list(ms) == O.mono_exponents(d)
        assert len(ms) == O.n_monos(d) == n_monomials(d)
    assert monomials(2)[0] == (2, 0, 0, 0)
    assert monomials(2)[-1] == (0, 0, 0, 2)
    # ternary variant used by the projection layer
    assert list(monomials(3, 3)) == O.mono_exponents(3, 3)


def test_monomial_index_inverts_monomials():
    for d in (1, 3, 6, 9):
        idx = monomial_index(d)
        for i, m in enumerate(monomials(d)):
            assert idx[m] == i


def test_multiply_matches_naive():
    for seed in range(25):
        rng = random.Random(seed)
        d1 = rng.randint(1, 4)
        d2 = rng.randint(1, min(4, MAX_DEGREE - d1))
        f = random_form(rng, d1)
        g = random_form(rng, d2)
        assert multiply(f, d1, g, d2) == O.naive_multiply(f, d1, g, d2)


def test_eval_form_matches_naive_and_respects_products():
    for seed in range(25):
        rng = random.Random(50 + seed)
        d = rng.randint(1, 6)
        f = random_form(rng, d)
        P = [rng.randint(-4, 4) for _ in range(4)]
        assert eval_form(f, d, P) == O.naive_eval(f, d, P)
    rng = random.Random(99)
    f = random_form(rng, 3)
    g = random_form(rng, 4)
    P = [2, -1, 3, 5]
    assert eval_form(multiply(f, 3, g, 4), 7, P) == eval_form(f, 3, P) * eval_form(
        g, 4, P
    )


def test_gradient_euler_identity():
    # sum_i x_i * df/dx_i = d * f for homogeneous f
    for seed in range(10):
        rng = random.Random(150 + seed)
        d = rng.randint(2, 6)
        f = random_form(rng, d)
        parts = gradient(f, d)
        assert parts == O.naive_gradient(f, d)
        acc = [0] * n_monomials(d)
        for v in range(4):
            xi = [0] * 4
            xi[v] = 1
            e = monomials(1).index(tuple(xi))
            lin = [0] * 4
            lin[e] = 1
            acc = [a + b for a, b in zip(acc, multiply(lin, 1, parts[v], d - 1))]
        assert acc == [d * c for c in f]
        P = [rng.randint(-3, 3) for _ in range(4)]
        assert eval_gradient(f, d, P) == [O.naive_eval(g, d - 1, P) for g in parts]


def test_pairing_computes_point_evaluation():
    # <v_d(P), g> = g(P): the identity the whole dual encoding rides on
    for seed in range(15):
        rng = random.Random(200 + seed)
        d = rng.choice([2, 4, 6])
        P = [rng.randint(-5, 5) for _ in range(4)]
        g = random_form(rng, d)
        vd = veronese_dual(P, d)
        assert vd == O.veronese_vector(P, d)
        assert pair(vd, g) == O.naive_eval(g, d, P)


def test_dual_polynomial_roundtrip():
    rng = random.Random(300)
    phi = random_form(rng, 6)
    F = dual_to_polynomial(phi, 6)
    back = polynomial_to_dual(F, 6)
    assert [Fraction(x) for x in back] == [Fraction(x) for x in phi]
    # multinomial scaling on a clean example: x0^6 keeps coefficient,
    # the mixed monomial x0^3 x1^3 is scaled by 6!/(3!3!) = 20
    e = [0] * n_monomials(6)
    e[monomial_index(6)[(6, 0, 0, 0)]] = 1
    e[monomial_index(6)[(3, 3, 0, 0)]] = 1
    F = dual_to_polynomial(e, 6)
    assert F[monomial_index(6)[(6, 0, 0, 0)]] == 1
    assert F[monomial_index(6)[(3, 3, 0, 0)]] == 20
    # finite characteristic round trip
    p = 101
    phi_p = [x % p for x in phi]
    back_p = polynomial_to_dual(dual_to_polynomial(phi_p, 6, char=p), 6, char=p)
    assert back_p == phi_p
    with pytest.raises(ValueError):
        dual_to_polynomial(phi, 6, char=5)


def test_multiples_piece_rows_are_shifted_generators():
    rng = random.Random(400)
    g3 = random_form(rng, 3)
    g4 = random_form(rng, 4)
    rows = multiples_piece([(g3, 3), (g4, 4)], 6)
    assert len(rows) == n_monomials(3) + n_monomials(2)
    expected = [O.naive_multiply(g3, 3, O.dict_to_vec({m: 1}, 3), 3) for m in O.mono_exponents(3)]
    expected += [O.naive_multiply(g4, 4, O.dict_to_vec({m: 1}, 2), 2) for m in O.mono_exponents(2)]
    assert sorted(map(tuple, rows)) == sorted(map(tuple, expected))


def test_shift_row_equals_monomial_multiply():
    rng = random.Random(500)
    f = random_form(rng, 4)
    alpha = (1, 0, 2, 0)
    mono = O.dict_to_vec({alpha: 1}, 3)
    assert shift_row(f, 4, alpha, 3) == O.naive_multiply(f, 4, mono, 3)


def test_substitute_linear_agrees_with_composition():
    rng = random.Random(600)
    for _ in range(8):
        d = rng.randint(1, 4)
        f = random_form(rng, d)
        # full coordinate change
        T = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)]
        g = substitute_linear(f, d, T, 4)
        y = [rng.randint(-3, 3) for _ in range(4)]
        x = [sum(T[i][j] * y[j] for j in range(4)) for i in range(4)]
        assert O.naive_eval(g, d, y) == O.naive_eval(f, d, x)
        # restriction to a plane (three parameters)
        T3 = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(4)]
        h = substitute_linear(f, d, T3, 3)
        z = [rng.randint(-3, 3) for _ in range(3)]
        xz = [sum(T3[i][j] * z[j] for j in range(3)) for i in range(4)]
        assert O.naive_eval(h, d, z, nvars=3) == O.naive_eval(f, d, xz)


def test_ternary_dict_helpers():
    a = {(1, 0, 0): 2, (0, 1, 0): -1}
    b = {(0, 1, 0): 1}
    assert tern_add(a, b) == {(1, 0, 0): 2}
    assert tern_mul(a, b) == {(1, 1, 0): 2, (0, 2, 0): -1}
    assert tern_scale(a, 0) == {}
    v = tern_to_vector({(2, 0, 0): 5, (0, 0, 2): 1}, 2)
    assert v[0] == 5 and v[-1] == 1
    assert vector_to_tern(v, 2) == {(2, 0, 0): 5, (0, 0, 2): 1}
    with pytest.raises(ValueError):
        tern_to_vector({(1, 0, 0): 1}, 2)


def test_resultant_x3_matches_sylvester_oracle():
    for seed in range(6):
        rng = random.Random(700 + seed)
        f = random_form(rng, 3, lo=-3, hi=3)
        g = random_form(rng, 3, lo=-3, hi=3)
        i3 = monomial_index(3)[(0, 0, 0, 3)]
        f[i3] = rng.randint(1, 3)
        g[i3] = rng.randint(1, 3)
        R = resultant_x3(f, g)
        assert len(R) == O.n_monos(9, 3)
        for pt in [(3, -2, 5), (1, 1, 1), (0, 2, -7)]:
            a = [Fraction(x) for x in O.univariate_in_x3(f, 3, *pt)]
            b = [Fraction(x) for x in O.univariate_in_x3(g, 3, *pt)]
            assert O.naive_eval(R, 9, pt, nvars=3) == O.sylvester_resultant(a, b)
    bad = [0] * 20
    bad[0] = 1
    with pytest.raises(ValueError):
        resultant_x3(bad, bad)


def test_resultant_vanishes_on_projected_intersection():
    # plant a common zero with x3-coordinate solved exactly: both forms
    # vanish at Q, so the resultant of the specializations at Q's first
    # three coordinates is zero
    rng = random.Random(801)
    f = random_form(rng, 3)
    g = random_form(rng, 3)
    i3 = monomial_index(3)[(0, 0, 0, 3)]
    f[i3] = 1
    g[i3] = 1
    pt = (2, -1, 3)
    a = [Fraction(x) for x in O.univariate_in_x3(f, 3, *pt)]
    b = [Fraction(x) for x in O.univariate_in_x3(g, 3, *pt)]
    # force a shared root t = 1 by adjusting constant terms
    f0 = sum(a)
    g0 = sum(b)
    fd = O.vec_to_dict(f, 3)
    gd = O.vec_to_dict(g, 3)
    # subtract (root defect) * x2^3 scaled to the specialization value
    fd[(0, 0, 3, 0)] = fd.get((0, 0, 3, 0), 0) - Fraction(f0, pt[2] ** 3)
    gd[(0, 0, 3, 0)] = gd.get((0, 0, 3, 0), 0) - Fraction(g0, pt[2] ** 3)
    f2 = O.dict_to_vec(fd, 3)
    g2 = O.dict_to_vec(gd, 3)
    assert O.naive_eval(f2, 3, list(pt) + [1]) == 0
    assert O.naive_eval(g2, 3, list(pt) + [1]) == 0
    R = resultant_x3(f2, g2)
    assert O.naive_eval(R, 9, pt, nvars=3) == 0
