"""Finite point sets in projective 3-space and their linear conditions.

Points are stored as primitive integer coordinate vectors (over the
rationals) or as canonical projective representatives mod p.  Rank facts
are established mod a witness prime first and escalated to exact
arithmetic only where the modular answer is not already conclusive:
a full-rank square minor mod p certifies nonvanishing exactly, while a
modular failure is rechecked over the integers before it counts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import _scan
from .linalg import QQ, det_bareiss, primes_desc, primitive_int_vector, rank, rank_mod
from .polyring import monomials, n_monomials, veronese_dual

_WITNESS_PRIME = primes_desc(1)[0]


def _normalize_point(coords, char: int):
    if len(coords) != 4:
        raise ValueError("points need 4 coordinates")
    if char == 0:
        v = primitive_int_vector([QQ(c) for c in coords])
        if not any(v):
            raise ValueError("zero vector is not a projective point")
        return tuple(int(c) for c in v)
    v = [int(c) % char for c in coords]
    lead = next((c for c in v if c), None)
    if lead is None:
        raise ValueError("zero vector is not a projective point")
    inv = pow(lead, -1, char)
    return tuple(c * inv % char for c in v)


class PointConfiguration:
    """A list of distinct projective points over Q (char 0) or F_p."""

    def __init__(self, points, char: int = 0):
        if char and not isprime(char):
            raise ValueError("char must be 0 or a prime")
        self.char = int(char)
        self.points = tuple(_normalize_point(p, self.char) for p in points)
        if len(set(self.points)) != len(self.points):
            seen = {}
            for i, p in enumerate(self.points):
                if p in seen:
                    raise ValueError(
                        "points %d and %d coincide" % (seen[p], i)
                    )
                seen[p] = i
        self.n = len(self.points)

    def evaluation_matrix(self, d: int):
        """Rows are the degree-d evaluation vectors of the points."""
        rows = [veronese_dual(P, d) for P in self.points]
        if self.char:
            rows = [[c % self.char for c in r] for r in rows]
        return rows

    def hilbert_function(self, d: int) -> int:
        """Number of independent conditions the points impose in degree d."""
        if d < 0:
            return 0
        M = self.evaluation_matrix(d)
        if self.char:
            return rank_mod(M, self.char)
        cap = min(self.n, n_monomials(d))
        r = rank_mod(M, _WITNESS_PRIME)
        if r == cap:
            return r
        return rank(M)

    def difference_hilbert(self, dmax: int):
        h = [self.hilbert_function(d) for d in range(-1, dmax + 1)]
        return [h[i + 1] - h[i] for i in range(dmax + 1)]

    def ideal_piece(self, d: int):
        """Basis of the degree-d forms vanishing on all points."""
        from .linalg import kernel_basis, kernel_mod

        M = self.evaluation_matrix(d)
        if self.char:
            basis, _ = kernel_mod(M, self.char)
            return basis
        return kernel_basis(M)

    def coordinate_matrix_mod(self, d: int, p: int):
        if self.char and p != self.char:
            raise ValueError("prime disagrees with the configuration field")
        M = self.evaluation_matrix(d)
        return np.array([[int(c) % p for c in row] for row in M], dtype=np.int64)


@dataclass
class GeneralPositionReport:
    ok: bool
    witness: tuple | None  # (degree, point indices) of the first failure
    checks: list = field(default_factory=list)  # (degree, subset count) pairs

    def __bool__(self):
        return self.ok


def _first_exact_failure(config: PointConfiguration, d: int, combos, flagged):
    """Recheck modular failures over the exact field; return the first
    subset that really drops rank, in enumeration order."""
    M = config.evaluation_matrix(d)
    k = n_monomials(d)
    for idx in flagged:
        sub = [M[i] for i in combos[idx]]
        if config.char:
            bad = rank_mod(sub, config.char) < k
        elif len(sub) == k and len(sub[0]) == k:
            bad = det_bareiss(sub) == 0
        else:
            bad = rank(sub) < k
        if bad:
            return combos[idx]
    return None


def is_general_position(config: PointConfiguration) -> GeneralPositionReport:
    """Every subset that could impose independent conditions does.

    For each degree d with fewer monomials than points, all subsets of
    size n_monomials(d) must be linearly independent; at the first
    degree with enough monomials, the whole set must impose independent
    conditions.  The witness names the first failing subset in
    lexicographic order.
    """
    n = config.n
    p = config.char or _WITNESS_PRIME
    checks = []
    d = 1
    while True:
        k = n_monomials(d)
        if k >= n:
            break
        combos = list(itertools.combinations(range(n), k))
        checks.append((d, len(combos)))
        base = config.coordinate_matrix_mod(d, p)
        sel = np.array(combos, dtype=np.int64)
        mats = base[sel]  # (batch, k, N(d))
        ranks = _scan.batch_ranks(mats, p)
        flagged = np.nonzero(ranks < k)[0]
        if flagged.size:
            wit = _first_exact_failure(config, d, combos, flagged.tolist())
            if wit is not None:
                return GeneralPositionReport(False, (d, tuple(wit)), checks)
        d += 1
    checks.append((d, 1))
    if config.hilbert_function(d) < n:
        return GeneralPositionReport(False, (d, tuple(range(n))), checks)
    return GeneralPositionReport(True, None, checks)


def kruskal_rank_v2(config: PointConfiguration) -> int:
    """Largest k such that every k of the degree-2 evaluation vectors
    are linearly independent."""
    n = config.n
    p = config.char or _WITNESS_PRIME
    base = config.coordinate_matrix_mod(2, p)
    M = config.evaluation_matrix(2)
    for k in range(min(n, n_monomials(2)), 0, -1):
        combos = list(itertools.combinations(range(n), k))
        sel = np.array(combos, dtype=np.int64)
        ranks = _scan.batch_ranks(base[sel], p)
        flagged = np.nonzero(ranks < k)[0]
        ok = True
        for idx in flagged.tolist():
            sub = [M[i] for i in combos[idx]]
            r = rank_mod(sub, config.char) if config.char else rank(sub)
            if r < k:
                ok = False
                break
        if ok:
            return k
    return 0


def cayley_bacharach_check(hvalues):
    """Partial-sum test on the difference Hilbert function of a length-36
    degree-(3,3,4) complete intersection candidate.

    `hvalues` lists h(0), h(1), ... far enough to reach the stable value
    36.  For each j = 0..3 the leading partial sum of the differences is
    compared with the trailing one paired by i -> 7 - i; equality in all
    four positions is the complete-intersection symmetry.
    """
    h = list(hvalues)
    if h[-1] != 36:
        raise ValueError("table does not reach 36")
    while len(h) < 8:
        h.append(36)
    dh = [h[0]] + [h[i] - h[i - 1] for i in range(1, 8)]
    rows = []
    all_equal = True
    for j in range(4):
        left = sum(dh[i] for i in range(j + 1))
        right = sum(dh[7 - i] for i in range(j + 1))
        ok = left <= right
        if left != right:
            all_equal = False
        rows.append({"j": j, "left": left, "right": right, "leq": ok})
    return {
        "dh": dh,
        "rows": rows,
        "inequalities_hold": all(r["leq"] for r in rows),
        "symmetric": all_equal,
    }


def terracini_rank(config: PointConfiguration) -> int:
    """Exact dimension of the span of the tangent rows of the degree-6
    evaluation map at the points: 4 rows per point, entries
    m_v * P^(m - e_v) over the 84 sextic monomials."""
    rows = []
    for P in config.points:
        for v in range(4):
            row = []
            for m in monomials(6):
                if m[v] == 0:
                    row.append(0)
                    continue
                e = list(m)
                e[v] -= 1
                val = m[v]
                for x, ee in zip(P, e):
                    val *= x**ee
                row.append(val)
            if config.char:
                row = [c % config.char for c in row]
            rows.append(row)
    if config.char:
        return rank_mod(rows, config.char)
    cap = min(len(rows), 84)
    r = rank_mod(rows, _WITNESS_PRIME)
    if r == cap:
        return r
    return rank(rows)
