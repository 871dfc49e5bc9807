"""Independent reference implementations the test suite checks against.

Everything here is deliberately naive: Fraction arithmetic, dense Gauss
elimination, dict-based polynomials, power-series division.  No imports
from the package under test, so a bug there cannot hide in here.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction


# ---------------------------------------------------------------------------
# exact linear algebra over Q and F_p


def frac_rref(M):
    """Reduced row echelon form over Fraction; returns (rows, pivots)."""
    A = [[Fraction(x) for x in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if A else 0
    piv = []
    r = 0
    for c in range(cols):
        sel = next((i for i in range(r, rows) if A[i][c]), None)
        if sel is None:
            continue
        A[r], A[sel] = A[sel], A[r]
        inv = A[r][c]
        A[r] = [x / inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        piv.append(c)
        r += 1
        if r == rows:
            break
    return [row for row in A[:r]], piv


def frac_rank(M):
    return len(frac_rref(M)[0])


def frac_kernel(M):
    """Basis of the right kernel over Fraction (echelon parametrization)."""
    R, piv = frac_rref(M)
    cols = len(M[0]) if M else 0
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for row, pc in zip(R, piv):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def frac_solve(M, b):
    """One solution of M x = b over Fraction, or None."""
    aug = [list(row) + [bb] for row, bb in zip(M, b)]
    R, piv = frac_rref(aug)
    cols = len(M[0]) if M else 0
    for row, pc in zip(R, piv):
        if pc == cols:
            return None
    x = [Fraction(0)] * cols
    for row, pc in zip(R, piv):
        x[pc] = row[-1]
    return x


def frac_det(M):
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        sel = next((i for i in range(c, n) if A[i][c]), None)
        if sel is None:
            return Fraction(0)
        if sel != c:
            A[c], A[sel] = A[sel], A[c]
            det = -det
        det *= A[c][c]
        inv = A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] / inv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return det


def mod_rref(M, p):
    A = [[int(x) % p for x in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if A else 0
    piv = []
    r = 0
    for c in range(cols):
        sel = next((i for i in range(r, rows) if A[i][c]), None)
        if sel is None:
            continue
        A[r], A[sel] = A[sel], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        piv.append(c)
        r += 1
        if r == rows:
            break
    return A[:r], piv


def mod_rank(M, p):
    return len(mod_rref(M, p)[0])


def mod_kernel(M, p):
    R, piv = mod_rref(M, p)
    cols = len(M[0]) if M else 0
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for row, pc in zip(R, piv):
            v[pc] = (-row[fc]) % p
        basis.append(v)
    return basis


def same_rowspace_frac(U, V):
    """Equal spans over Q, checked by canonical echelon forms."""
    return frac_rref(U) == frac_rref(V)


# ---------------------------------------------------------------------------
# quaternary forms as exponent dicts


def mono_exponents(d, nvars=4):
    """Degree-d exponent tuples in graded lex order, largest first for
    the variable order x0 > x1 > x2 > x3.  Must match the package's
    frozen order; test_polyring pins that bridge."""
    out = [e for e in itertools.product(range(d + 1), repeat=nvars) if sum(e) == d]
    out.sort(reverse=True)
    return out


def n_monos(d, nvars=4):
    return math.comb(d + nvars - 1, nvars - 1)


def vec_to_dict(f, d, nvars=4):
    return {e: c for e, c in zip(mono_exponents(d, nvars), f) if c}


def dict_to_vec(fd, d, nvars=4):
    return [fd.get(e, 0) for e in mono_exponents(d, nvars)]


def dict_mul(fd, gd):
    out = {}
    for ea, ca in fd.items():
        for eb, cb in gd.items():
            key = tuple(a + b for a, b in zip(ea, eb))
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def dict_eval(fd, P):
    tot = 0
    for e, c in fd.items():
        term = c
        for x, k in zip(P, e):
            term *= x**k
        tot += term
    return tot


def naive_eval(f, d, P, nvars=4):
    return dict_eval(vec_to_dict(f, d, nvars), P)


def naive_multiply(f, d1, g, d2, nvars=4):
    prod = dict_mul(vec_to_dict(f, d1, nvars), vec_to_dict(g, d2, nvars))
    return dict_to_vec(prod, d1 + d2, nvars)


def naive_gradient(f, d, nvars=4):
    fd = vec_to_dict(f, d, nvars)
    out = []
    for v in range(nvars):
        gd = {}
        for e, c in fd.items():
            if e[v]:
                e2 = list(e)
                e2[v] -= 1
                gd[tuple(e2)] = gd.get(tuple(e2), 0) + c * e[v]
        out.append(dict_to_vec(gd, d - 1, nvars))
    return out


def veronese_vector(P, d, nvars=4):
    """Evaluation functional of the point: monomial powers in order."""
    out = []
    for e in mono_exponents(d, nvars):
        term = 1
        for x, k in zip(P, e):
            term *= x**k
        out.append(term)
    return out


def sylvester_resultant(a, b):
    """Resultant of two univariate polynomials given low-to-high, over
    whatever exact scalars the coefficients carry."""
    m = len(a) - 1
    n = len(b) - 1
    while m > 0 and a[m] == 0:
        m -= 1
    while n > 0 and b[n] == 0:
        n -= 1
    if m == 0 and n == 0:
        return 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(a[: m + 1][::-1]):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(b[: n + 1][::-1]):
            row[i + j] = c
        rows.append(row)
    return frac_det(rows)


def univariate_in_x3(f, d, x0, x1, x2, nvars=4):
    """Coefficient list in x3 (low to high) of f specialized at the
    first three coordinates."""
    fd = vec_to_dict(f, d, nvars)
    out = [0] * (d + 1)
    for e, c in fd.items():
        out[e[3]] += c * x0 ** e[0] * x1 ** e[1] * x2 ** e[2]
    return out


# ---------------------------------------------------------------------------
# Hilbert series of a complete intersection


def ci_hilbert(degrees=(3, 3, 4), nvars=4, upto=8):
    """h(0..upto-1) of a zero-dimensional complete intersection with the
    given forms in nvars variables, by truncated power-series division
    of prod (1 - T^d) / (1 - T)^nvars."""
    num = [1]
    for d in degrees:
        nxt = [0] * (len(num) + d)
        for i, c in enumerate(num):
            nxt[i] += c
            nxt[i + d] -= c
        num = nxt
    series = []
    carry = list(num) + [0] * upto
    for _ in range(nvars):
        acc = 0
        out = []
        for c in carry[: len(carry)]:
            acc += c
            out.append(acc)
        carry = out
    series = carry[:upto]
    return series


# ---------------------------------------------------------------------------
# Hilbert functions of point sets, straight from the definition


def point_hilbert(points, d, char=0):
    rows = [veronese_vector(P, d) for P in points]
    if char:
        return mod_rank(rows, char)
    return frac_rank(rows)


# ---------------------------------------------------------------------------
# builders for irreducibility tests


def random_bivariate(rng, dx, dy, p):
    """Dense random bivariate dict with full corner terms, so the
    bidegree is exactly (dx, dy)."""
    f = {
        (i, j): rng.randrange(p)
        for i in range(dx + 1)
        for j in range(dy + 1)
    }
    f[(dx, 0)] = rng.randrange(1, p)
    f[(0, dy)] = rng.randrange(1, p)
    f[(dx, dy)] = rng.randrange(1, p)
    f[(0, 0)] = rng.randrange(1, p)
    return {k: v for k, v in f.items() if v}


def product_of_factors(rng, shapes, p):
    """Product of one random dense bivariate polynomial per (dx, dy)
    shape, reduced mod p."""
    out = {(0, 0): 1}
    for dx, dy in shapes:
        out = dict_mul(out, random_bivariate(rng, dx, dy, p))
    return {k: v % p for k, v in out.items() if v % p}


def random_cubic_vec(rng, lo=-9, hi=9):
    v = [rng.randint(lo, hi) for _ in range(n_monos(3))]
    if not any(v):
        v[0] = 1
    return v


def generic_pencil(seed):
    """Two independent random integer cubics."""
    rng = random.Random(900 + seed)
    while True:
        G1 = random_cubic_vec(rng)
        G2 = random_cubic_vec(rng)
        if frac_rank([G1, G2]) == 2:
            return G1, G2


def reducible_pencil(seed):
    """G1 = plane * quadric, G2 generic: the intersection curve picks up
    a plane cubic component."""
    rng = random.Random(1700 + seed)
    L = {e: rng.randint(1, 5) for e in mono_exponents(1)}
    Q = {e: rng.randint(-4, 4) for e in mono_exponents(2)}
    if not any(Q.values()):
        Q[(2, 0, 0, 0)] = 1
    G1 = dict_to_vec(dict_mul(L, Q), 3)
    G2 = random_cubic_vec(rng)
    return G1, G2
