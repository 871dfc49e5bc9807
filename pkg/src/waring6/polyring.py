"""Dense homogeneous polynomial arithmetic in three and four variables.

Coefficient vectors follow one frozen monomial order everywhere: within
a degree, exponent tuples are sorted in descending lexicographic order
with x0 > x1 > x2 > x3.  Files record the order tag and readers reject a
mismatch, so vectors never silently change meaning.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

from .linalg import QQ

MONOMIAL_ORDER_ID = "grlex-desc:x0>x1>x2>x3"

#: largest product degree the multiplication tables serve
MAX_DEGREE = 10


def n_monomials(d: int, nvars: int = 4) -> int:
    return comb(d + nvars - 1, nvars - 1)


@lru_cache(maxsize=None)
def monomials(d: int, nvars: int = 4):
    """Exponent tuples of degree d, descending lex."""

    def gen(prefix, left, slots):
        if slots == 1:
            yield prefix + (left,)
            return
        for e in range(left, -1, -1):
            yield from gen(prefix + (e,), left - e, slots - 1)

    return tuple(gen((), d, nvars))


@lru_cache(maxsize=None)
def monomial_index(d: int, nvars: int = 4):
    return {m: i for i, m in enumerate(monomials(d, nvars))}


@lru_cache(maxsize=None)
def _product_table(d1: int, d2: int, nvars: int = 4):
    # table[i][j] = index of mono_i * mono_j in degree d1+d2
    m1 = monomials(d1, nvars)
    m2 = monomials(d2, nvars)
    idx = monomial_index(d1 + d2, nvars)
    return tuple(
        tuple(idx[tuple(a + b for a, b in zip(ma, mb))] for mb in m2) for ma in m1
    )


def multiply(f, d1: int, g, d2: int, nvars: int = 4):
    """Product of two dense homogeneous forms, degree d1 + d2 <= 10."""
    if d1 + d2 > MAX_DEGREE:
        raise ValueError("product degree exceeds %d" % MAX_DEGREE)
    table = _product_table(d1, d2, nvars)
    out = [0] * n_monomials(d1 + d2, nvars)
    for i, a in enumerate(f):
        if a:
            row = table[i]
            for j, b in enumerate(g):
                if b:
                    k = row[j]
                    out[k] = out[k] + a * b
    return out


def shift_row(f, d1: int, alpha, d2: int, nvars: int = 4):
    """Coefficient vector of f * x^alpha (alpha a degree-d2 exponent
    tuple); cheaper than multiply for monomial factors."""
    idx = monomial_index(d1 + d2, nvars)
    out = [0] * n_monomials(d1 + d2, nvars)
    for i, a in enumerate(f):
        if a:
            m = monomials(d1, nvars)[i]
            out[idx[tuple(x + y for x, y in zip(m, alpha))]] = a
    return out


def multiples_piece(gens, d: int, nvars: int = 4):
    """Rows spanning sum_g g*R_(d-deg g) inside degree d.

    `gens` is a list of (vector, degree) pairs; rows are emitted per
    generator in order, multiplier monomials in the frozen order.
    """
    rows = []
    for g, dg in gens:
        if dg > d:
            continue
        for alpha in monomials(d - dg, nvars):
            rows.append(shift_row(g, dg, alpha, d - dg, nvars))
    return rows


def veronese_dual(P, d: int):
    """Evaluation vector of a point: pairing any degree-d coefficient
    vector g against it computes g(P)."""
    out = []
    for m in monomials(d):
        v = 1
        for x, e in zip(P, m):
            v *= x**e
        out.append(v)
    return out


def pair(phi, g):
    """Apolar pairing: plain dot product in the frozen basis."""
    s = 0
    for a, b in zip(phi, g):
        if a and b:
            s += a * b
    return s


def dual_to_polynomial(phi, d: int = 6, char: int = 0):
    """Polynomial coefficients of the form represented by a dual vector:
    F_alpha = (d!/alpha!) * phi_alpha.  Needs characteristic 0 or > d."""
    if char and char <= d:
        raise ValueError("factorials vanish in characteristic <= degree")
    out = []
    for m, a in zip(monomials(d), phi):
        c = factorial(d)
        for e in m:
            c //= factorial(e)
        out.append(a * c if not char else a * c % char)
    return out


def polynomial_to_dual(F, d: int = 6, char: int = 0):
    """Inverse of dual_to_polynomial; rational output over Q."""
    if char and char <= d:
        raise ValueError("factorials vanish in characteristic <= degree")
    out = []
    for m, a in zip(monomials(d), F):
        c = factorial(d)
        for e in m:
            c //= factorial(e)
        if char:
            out.append(a * pow(c % char, -1, char) % char)
        else:
            out.append(QQ(a, c))
    return out


def eval_form(f, d: int, P):
    s = 0
    for m, c in zip(monomials(d), f):
        if c:
            v = c
            for x, e in zip(P, m):
                v *= x**e
            s += v
    return s


def gradient(f, d: int):
    """The four partials, each a degree d-1 vector."""
    idx = monomial_index(d - 1)
    out = []
    for v in range(4):
        g = [0] * n_monomials(d - 1)
        for m, c in zip(monomials(d), f):
            if c and m[v]:
                e = list(m)
                e[v] -= 1
                g[idx[tuple(e)]] = g[idx[tuple(e)]] + c * m[v]
        out.append(g)
    return out


def eval_gradient(f, d: int, P):
    out = []
    for v in range(4):
        s = 0
        for m, c in zip(monomials(d), f):
            if c and m[v]:
                e = list(m)
                e[v] -= 1
                t = c * m[v]
                for x, ee in zip(P, e):
                    t *= x**ee
                s += t
        out.append(s)
    return out


def substitute_linear(f, d: int, T, nv_out: int):
    """f composed with the linear map x_i = sum_j T[i][j] y_j.

    T has 4 rows of length nv_out; the result lives in nv_out variables.
    Drives both projective coordinate changes (nv_out = 4) and plane
    restrictions (nv_out = 3).
    """
    lin = [list(row) for row in T]
    pow_cache = [{0: [1] if nv_out == 1 else _const_one(nv_out)} for _ in range(4)]

    def power(i, e):
        cache = pow_cache[i]
        if e not in cache:
            prev = power(i, e - 1)
            cache[e] = multiply(prev, e - 1, lin[i], 1, nv_out)
        return cache[e]

    out = [0] * n_monomials(d, nv_out)
    for m, c in zip(monomials(d), f):
        if not c:
            continue
        term = _const_one(nv_out)
        td = 0
        for i in range(4):
            if m[i]:
                term = multiply(term, td, power(i, m[i]), m[i], nv_out)
                td += m[i]
        for k, v in enumerate(term):
            if v:
                out[k] = out[k] + c * v
    return out


def _const_one(nv):
    return [1]


# ---------------------------------------------------------------------------
# ternary dictionaries and the x3-resultant

# sparse ternary forms: {(e0, e1, e2): coeff}


def tern_add(a, b):
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def tern_mul(a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
            w = out.get(k, 0) + va * vb
            if w:
                out[k] = w
            else:
                out.pop(k, None)
    return out


def tern_scale(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def tern_to_vector(a, d: int):
    idx = monomial_index(d, 3)
    out = [0] * n_monomials(d, 3)
    for k, v in a.items():
        if sum(k) != d:
            raise ValueError("inhomogeneous ternary dict")
        out[idx[k]] = v
    return out


def vector_to_tern(vec, d: int):
    return {m: c for m, c in zip(monomials(d, 3), vec) if c}


def _x3_layers(f, d: int = 3):
    """Split a 4-variable form into ternary coefficients of powers of x3:
    layers[k] = coefficient of x3^k, a ternary form of degree d - k."""
    layers = [dict() for _ in range(d + 1)]
    for m, c in zip(monomials(d), f):
        if c:
            layers[m[3]][(m[0], m[1], m[2])] = c
    return layers


def resultant_x3(f, g):
    """Resultant of two quaternary cubics with respect to x3: a ternary
    form of degree 9 vanishing on the projection of their common curve.

    Precondition: both x3^3 coefficients are nonzero (the projection
    center (0:0:0:1) lies on neither surface); callers arrange this with
    a seeded coordinate change.
    """
    lf = _x3_layers(f)
    lg = _x3_layers(g)
    if not lf[3] or not lg[3]:
        raise ValueError("x3^3 coefficient vanishes; change coordinates")
    # Sylvester rows in descending powers of x3, entries ternary dicts
    frow = [lf[3], lf[2], lf[1], lf[0]]
    grow = [lg[3], lg[2], lg[1], lg[0]]
    M = []
    for s in range(3):
        M.append([{} for _ in range(s)] + frow + [{} for _ in range(2 - s)])
    for s in range(3):
        M.append([{} for _ in range(s)] + grow + [{} for _ in range(2 - s)])
    # determinant by row expansion with a used-column-mask table
    dp = {0: {(0, 0, 0): 1}}
    for r in range(6):
        nxt = {}
        for mask, val in dp.items():
            for c in range(6):
                bit = 1 << c
                if mask & bit:
                    continue
                e = M[r][c]
                if not e:
                    continue
                inv = bin(mask >> (c + 1)).count("1")
                term = tern_mul(val, e)
                if inv & 1:
                    term = tern_scale(term, -1)
                key = mask | bit
                nxt[key] = tern_add(nxt.get(key, {}), term) if key in nxt else term
        dp = nxt
    full = (1 << 6) - 1
    det = dp.get(full, {})
    return tern_to_vector(det, 9)
