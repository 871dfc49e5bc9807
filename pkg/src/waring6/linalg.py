"""Exact dense linear algebra over the rationals and modulo primes.

Rational arithmetic uses gmpy2 when available and falls back to
fractions.Fraction.  Matrices are plain lists of lists; rows of a basis
are always returned in canonical reduced-echelon form, cleared to
primitive integer vectors, so equal subspaces produce equal bases.
"""

from __future__ import annotations

import math
from functools import reduce

try:
    from gmpy2 import mpq, mpz

    def QQ(a, b=1):
        return mpq(a, b)

    def ZZ(a):
        return mpz(a)

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    from fractions import Fraction as mpq

    def QQ(a, b=1):
        return mpq(a, b)

    def ZZ(a):
        return int(a)

    HAVE_GMPY2 = False

_ZERO = QQ(0)
_ONE = QQ(1)


def _num(x):
    return x.numerator


def _den(x):
    return x.denominator


# ---------------------------------------------------------------------------
# rational echelon forms


def rref(M):
    """Reduced row echelon form over Q.

    Returns (rows, pivot_columns).  Rows are lists of mpq; zero rows are
    dropped.  Pivot selection is first-nonzero-in-column scanning rows in
    order, so the result is canonical for a given row span.
    """
    rows = [[QQ(x) for x in row] for row in M]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = _ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                ri, rr = rows[i], rows[r]
                rows[i] = [a - f * b for a, b in zip(ri, rr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(M) -> int:
    """Exact rank over Q."""
    return len(rref(M)[0])


def primitive_int_vector(v):
    """Scale a rational vector to a primitive integer vector.

    The first nonzero entry is made positive; the zero vector maps to
    itself.  Canonical representative of the projective class.
    """
    v = [QQ(x) for x in v]
    den = 1
    for x in v:
        if x != 0:
            den = den * _den(x) // math.gcd(den, int(_den(x)))
    w = [int(_num(x)) * (den // int(_den(x))) for x in v]
    g = 0
    for x in w:
        g = math.gcd(g, abs(x))
    if g == 0:
        return w
    w = [x // g for x in w]
    for x in w:
        if x != 0:
            if x < 0:
                w = [-y for y in w]
            break
    return w


def echelon_int(M):
    """Canonical basis of the row space: RREF rows cleared to primitive
    integer vectors."""
    R, _ = rref(M)
    return [primitive_int_vector(r) for r in R]


def kernel_basis(M):
    """Canonical right-kernel basis over Q.

    One vector per free column of the RREF, carrying 1 in the free
    position, cleared to primitive integer vectors.
    """
    rows = [list(r) for r in M]
    if not rows:
        return []
    ncols = len(rows[0])
    R, pivots = rref(rows)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [_ZERO] * ncols
        v[f] = _ONE
        for j, p in enumerate(pivots):
            v[p] = -R[j][f]
        basis.append(primitive_int_vector(v))
    return basis


def solve(M, b):
    """One solution of M x = b over Q, or None if inconsistent.

    Free variables are set to 0, so the answer is deterministic.
    """
    rows = [list(r) + [bb] for r, bb in zip(M, b)]
    if not rows:
        return [] if all(x == 0 for x in b) else None
    ncols = len(M[0])
    R, pivots = rref(rows)
    for r in R:
        if all(x == 0 for x in r[:ncols]) and r[ncols] != 0:
            return None
    x = [_ZERO] * ncols
    for j, p in enumerate(pivots):
        if p < ncols:
            x[p] = R[j][ncols]
    return x


def in_rowspace(v, echelon_rows, pivots=None):
    """Reduce v against echelon rows; True iff the residue is zero."""
    if pivots is None:
        R, pivots = rref(echelon_rows)
    else:
        R = echelon_rows
    v = [QQ(x) for x in v]
    for r, p in zip(R, pivots):
        if v[p] != 0:
            f = v[p] / r[p]
            v = [a - f * b for a, b in zip(v, r)]
    return all(x == 0 for x in v)


def subspace_sum(U, V):
    """Canonical basis of span(U) + span(V)."""
    return echelon_int(list(U) + list(V))


def subspace_complement(U, V):
    """Greedy pivot completion of span(U) inside span(V).

    Walks the rows of V in order, keeping those that enlarge the span,
    and returns them unchanged.  Raises ValueError unless U is contained
    in span(V).
    """
    RV, pV = rref(V)
    for u in U:
        if not in_rowspace(u, RV, pV):
            raise ValueError("U is not a subspace of V")
    R, pivots = rref(U)
    chosen = []
    for v in V:
        w = [QQ(x) for x in v]
        for r, p in zip(R, pivots):
            if w[p] != 0:
                f = w[p]
                w = [a - f * b for a, b in zip(w, r)]
        c = next((j for j, x in enumerate(w) if x != 0), None)
        if c is None:
            continue
        inv = _ONE / w[c]
        w = [x * inv for x in w]
        lo = 0
        while lo < len(pivots) and pivots[lo] < c:
            lo += 1
        R.insert(lo, w)
        pivots.insert(lo, c)
        for j in range(len(R)):
            if j != lo and R[j][c] != 0:
                f = R[j][c]
                R[j] = [a - f * b for a, b in zip(R[j], w)]
        chosen.append(list(v))
    return chosen


def det_bareiss(M):
    """Exact determinant of a square integer matrix (Bareiss)."""
    A = [[int(x) for x in row] for row in M]
    n = len(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if piv is None:
                return 0
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            Ai, Ak = A[i], A[k]
            for j in range(k + 1, n):
                Ai[j] = (akk * Ai[j] - aik * Ak[j]) // prev
            Ai[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


# ---------------------------------------------------------------------------
# modular arithmetic

_NUMPY_MIN_CELLS = 4096


def _as_mod(M, p):
    out = []
    for row in M:
        r = []
        for x in row:
            if isinstance(x, int):
                r.append(x % p)
            else:
                d = int(_den(x)) % p
                if d == 0:
                    raise ZeroDivisionError("denominator vanishes mod p")
                r.append(int(_num(x)) * pow(d, -1, p) % p)
        out.append(r)
    return out


def rref_mod(M, p):
    """Reduced echelon form mod p; returns (rows, pivot_columns)."""
    rows = _as_mod(M, p)
    if not rows:
        return [], []
    ncols = len(rows[0])
    if len(rows) * ncols >= _NUMPY_MIN_CELLS:
        from . import _scan

        return _scan.gf_rref(rows, p)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank_mod(M, p) -> int:
    return len(rref_mod(M, p)[0])


def kernel_mod(M, p):
    """Right-kernel basis mod p in the same canonical shape as
    kernel_basis: entries are the RREF parametrization, not primitivized.

    Returns (basis_rows, pivot_columns_of_M).
    """
    rows = [list(r) for r in M]
    if not rows:
        return [], []
    ncols = len(rows[0])
    R, pivots = rref_mod(rows, p)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for j, c in enumerate(pivots):
            v[c] = (-R[j][f]) % p
        basis.append(v)
    return basis, pivots


def solve_mod(M, b, p):
    rows = [list(r) + [bb % p] for r, bb in zip(_as_mod(M, p), [int(x) for x in b])]
    ncols = len(M[0]) if M else 0
    R, pivots = rref_mod(rows, p)
    for r in R:
        if all(x == 0 for x in r[:ncols]) and r[ncols]:
            return None
    x = [0] * ncols
    for j, c in enumerate(pivots):
        if c < ncols:
            x[c] = R[j][ncols]
    return x


def p_saturate(rows, p):
    """Basis of the same rational row space whose lattice is saturated
    at p, so reduction mod p keeps full rank.

    Rows must be independent over the rationals.  Each pass finds a
    dependency among the reductions, lifts it, divides out one factor
    of p, and swaps the combination in; the p-part of the index drops
    every time, so the loop is short.
    """
    rows = [[int(x) for x in r] for r in rows]
    while True:
        red = [[x % p for x in r] for r in rows]
        left, _ = kernel_mod([list(c) for c in zip(*red)], p)
        if not left:
            return rows
        c = left[0]
        w = [sum(ci * x for ci, x in zip(c, col)) for col in zip(*rows)]
        w = primitive_int_vector([x // p for x in w])
        j = next(i for i, ci in enumerate(c) if ci % p)
        rows[j] = w


def primes_desc(count: int, below: int = 10**8):
    """Deterministic list of primes descending from `below`.

    Primes stay under 1e8 by default so products of two residues fit
    comfortably in int64 pipelines.
    """
    out = []
    n = below - 1
    if n % 2 == 0:
        n -= 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n -= 2
        if n < 3:
            raise ValueError("prime supply exhausted")
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# CRT and rational reconstruction


def crt_pair(a1, m1, a2, m2):
    g, x, _ = _xgcd(m1, m2)
    assert g == 1
    m = m1 * m2
    return (a1 + (a2 - a1) * x % m2 * m1) % m, m


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def crt_list(residues, moduli):
    """Balanced pairwise CRT merge of residues against coprime moduli."""
    items = list(zip([int(r) for r in residues], [int(m) for m in moduli]))
    while len(items) > 1:
        nxt = []
        for i in range(0, len(items) - 1, 2):
            (a1, m1), (a2, m2) = items[i], items[i + 1]
            nxt.append(crt_pair(a1, m1, a2, m2))
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


def ratrec(a, m):
    """Rational reconstruction of a mod m with |num|, den <= sqrt(m/2).

    Returns an mpq or None.
    """
    a %= m
    bound = math.isqrt(m // 2)
    r0, r1 = m, a
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if r1 > bound:
        return None
    if t1 == 0 or abs(t1) > bound:
        return None
    if math.gcd(r1, abs(t1)) != 1:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    return QQ(r1, t1)


def lift_vector(residue_vectors, primes):
    """CRT-merge per-prime residue vectors and rationally reconstruct.

    Returns a list of mpq, or None if any entry fails to reconstruct.
    """
    n = len(residue_vectors[0])
    out = []
    for j in range(n):
        a, m = crt_list([rv[j] for rv in residue_vectors], primes)
        x = ratrec(a, m)
        if x is None:
            return None
        out.append(x)
    return out


def lift_matrix(residue_matrices, primes):
    rowsn = len(residue_matrices[0])
    out = []
    for i in range(rowsn):
        v = lift_vector([Mp[i] for Mp in residue_matrices], primes)
        if v is None:
            return None
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# saturated integer kernels via lattice reduction


def kernel_lll(M, expect: int):
    """Integer basis of the right kernel of an integer matrix, saturated
    and with short vectors, via LLL on the embedding [c*M^T | I].

    The penalty c escalates until exactly `expect` reduced rows have a
    zero left part.  Returns primitive integer vectors.
    """
    from sympy import QQ as SQQ, ZZ as SZZ
    from sympy.polys.matrices import DomainMatrix

    Mi = [[int(x) for x in row] for row in M]
    nrows = len(Mi)
    ncols = len(Mi[0]) if nrows else 0
    if nrows == 0:
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    for k in (12, 24, 48, 96):
        c = 10**k
        emb = []
        for j in range(ncols):
            emb.append([c * Mi[i][j] for i in range(nrows)] + [1 if t == j else 0 for t in range(ncols)])
        dm = DomainMatrix.from_list(emb, SZZ)
        red = dm.lll(delta=SQQ(3, 4)).to_list()
        ker = []
        for row in red:
            left = row[:nrows]
            right = [int(x) for x in row[nrows:]]
            if all(x == 0 for x in left) and any(right):
                ker.append(right)
        if len(ker) == expect:
            return [primitive_int_vector(v) for v in ker]
    raise RuntimeError("kernel_lll: penalty escalation exhausted")


def gcd_list(xs):
    return reduce(math.gcd, (abs(int(x)) for x in xs), 0)
