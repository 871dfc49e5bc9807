"""Geometric certificates for cubic and quartic systems in P^3.

Every verdict that later feeds an Identifiable or NotIdentifiable answer
is exact: a full-rank square or rectangular elimination modulo one prime
certifies nonvanishing over Q, explicit dependency vectors (verified by
integer arithmetic) certify the matching upper bounds, and absolute
irreducibility of the projected nonic follows from a one-dimensional
derivative-pairing kernel modulo a large prime together with degree
preservation.  Verdicts that merely report evidence (LikelyCurve,
Reducible, Inconclusive) only ever push the caller toward Undecided.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    det_bareiss,
    in_rowspace,
    kernel_mod,
    primes_desc,
    rank,
    rank_mod,
    rref,
    subspace_complement,
    subspace_sum,
)
from .polyring import (
    monomials,
    monomial_index,
    multiples_piece,
    n_monomials,
    resultant_x3,
    substitute_linear,
)

_PRIMES = primes_desc(80)


def _rows_mod(rows, p):
    return np.array([[int(c) % p for c in row] for row in rows], dtype=np.int64)


def mult_matrix(g, dg: int, d_src: int, nvars: int = 4):
    """Rows indexed by the degree-d_src monomials: row alpha is the
    coefficient vector of x^alpha * g in degree d_src + dg."""
    return multiples_piece([(g, dg)], d_src + dg, nvars)


# ---------------------------------------------------------------------------
# base locus of a cubic system


@dataclass
class BaseLocusResult:
    verdict: str  # CertifiedFinite | LikelyCurve | Inconclusive
    plane: tuple | None = None
    degree: int | None = None
    prime: int | None = None
    per_plane: list = field(default_factory=list)

    def __bool__(self):
        return self.verdict == "CertifiedFinite"


def seeded_planes(seed: int, count: int):
    rng = random.Random("planes:%d" % seed)
    out = []
    while len(out) < count:
        B = [[rng.randrange(-9, 10) for _ in range(4)] for _ in range(3)]
        if rank(B) == 3:
            out.append(tuple(tuple(r) for r in B))
    return out


def restrict_to_plane(f, d: int, plane):
    """Pull a quaternary form back along the parametrization of the
    plane spanned by the three rows of `plane`."""
    T = [[plane[k][i] for k in range(3)] for i in range(4)]
    return substitute_linear(f, d, T, 3)


def base_locus_curve_test(cubics, planes: int = 8, seed: int = 0, char: int = 0):
    """Decide whether the common zero locus of a cubic system (dimension
    at least 2 as a linear system) can contain a curve.

    A curve in the base locus meets every plane, so one seeded plane
    whose restricted system has no zero at all certifies finiteness.
    Emptiness on a plane is certified by the restricted ideal filling a
    complete degree (7, escalating to 8): full rank modulo one prime is
    exact.  If every plane keeps a zero, the verdict is LikelyCurve with
    the per-plane evidence; degenerate restrictions give Inconclusive.
    """
    if len(cubics) < 2:
        raise ValueError("need a system of dimension at least 2")
    test_primes = [char] if char else _PRIMES[:2]
    per_plane = []
    degenerate = 0
    for pi, plane in enumerate(seeded_planes(seed, planes)):
        restricted = [restrict_to_plane(c, 3, plane) for c in cubics]
        if char:
            restricted = [[x % char for x in r] for r in restricted]
        live = [r for r in restricted if any(r)]
        if not live:
            per_plane.append({"plane": pi, "note": "system vanishes on plane"})
            degenerate += 1
            continue
        certified = None
        for deg in (7, 8):
            rows = multiples_piece([(r, 3) for r in live], deg, 3)
            full = n_monomials(deg, 3)
            for p in test_primes:
                if rank_mod(rows, p) == full:
                    certified = (deg, p)
                    break
            if certified:
                break
        if certified:
            deg, p = certified
            return BaseLocusResult(
                "CertifiedFinite", plane=plane, degree=deg, prime=p, per_plane=per_plane
            )
        per_plane.append({"plane": pi, "note": "residual zero locus on plane"})
    if degenerate == len(per_plane) and degenerate:
        return BaseLocusResult("Inconclusive", per_plane=per_plane)
    return BaseLocusResult("LikelyCurve", per_plane=per_plane)


# ---------------------------------------------------------------------------
# pencil and complete-intersection validation


@dataclass
class PencilReport:
    ok: bool
    rank: int
    prime: int | None = None
    reason: str | None = None

    def __bool__(self):
        return self.ok


def _koszul_vector_pair(ga, gb, dega, degb, rows_a_start, rows_b_start, total):
    """Dependency among multiplication rows: sum_m gb[m] row(ga, m) -
    sum_m ga[m] row(gb, m) = 0 when multipliers run over full degree
    pieces matching the opposite generator's degree."""
    v = [0] * total
    for i, c in enumerate(gb):
        v[rows_a_start + i] = c
    for i, c in enumerate(ga):
        v[rows_b_start + i] = -c
    return v


def pencil_regular_sequence_check(G1, G2, char: int = 0) -> PencilReport:
    """The two cubics form a regular sequence: their degree-6 multiples
    span exactly 39 dimensions.

    39 is forced both ways: the Koszul relation G2*(G1 rows) - G1*(G2
    rows) caps the 40 rows at 39, and rank 39 modulo one prime is an
    exact lower bound.  Rank below 39 means a common factor.
    """
    rows = multiples_piece([(G1, 3), (G2, 3)], 6)
    dep = _koszul_vector_pair(G1, G2, 3, 3, 0, 20, 40)
    # integrity: the claimed dependency is a real one
    n = len(rows[0])
    for j in range(n):
        s = sum(dep[i] * rows[i][j] for i in range(40))
        if (s % char if char else s) != 0:
            raise AssertionError("Koszul vector is not a dependency")
    if char:
        r = rank_mod(rows, char)
        return PencilReport(r == 39, r, char, None if r == 39 else "rank %d" % r)
    for p in _PRIMES[:2]:
        if rank_mod(rows, p) == 39:
            return PencilReport(True, 39, p)
    r = rank(rows)
    return PencilReport(r == 39, r, None, None if r == 39 else "rank %d" % r)


@dataclass
class CIReport:
    ok: bool
    dims: dict
    h_table: list
    prime: int | None = None
    failed: str | None = None

    def __bool__(self):
        return self.ok


#: expected dimensions of the ideal of a (3,3,4) complete intersection
CI_DIMS = {3: 2, 4: 9, 5: 24, 6: 49, 7: 84}
CI_H_TABLE = [1, 4, 10, 18, 26, 32, 35, 36]


def _ci_rows(G1, G2, G, d):
    gens = [(G1, 3), (G2, 3)]
    if d >= 4:
        gens.append((G, 4))
    return multiples_piece(gens, d)


def _ci_dependencies(G1, G2, G, d):
    """Explicit Koszul dependency vectors among the degree-d rows."""
    deps = []
    n1 = n_monomials(d - 3)
    n2 = n_monomials(d - 3)
    ng = n_monomials(d - 4) if d >= 4 else 0
    total = 2 * n1 + ng
    if d == 6:
        deps.append(_koszul_vector_pair(G1, G2, 3, 3, 0, n1, total))
    if d == 7:
        # (G1, G2) Koszul shifted by each variable
        idx_src = monomial_index(4)
        for v in range(4):
            vec = [0] * total
            for i, m in enumerate(monomials(3)):
                c1 = G2[i]
                c2 = G1[i]
                e = list(m)
                e[v] += 1
                j = idx_src[tuple(e)]
                vec[j] += c1
                vec[n1 + j] -= c2
            deps.append(vec)
        # (G1, G) and (G2, G)
        for which, gc in ((0, G1), (1, G2)):
            vec = [0] * total
            for i, c in enumerate(G):
                vec[which * n1 + i] = c
            for i, c in enumerate(gc):
                vec[2 * n1 + i] = -c
            deps.append(vec)
    return deps


def ci_validate(G1, G2, G, char: int = 0) -> CIReport:
    """Certify that (G1, G2, G) cut an ideal with the Hilbert function
    of a zero-dimensional (3,3,4) complete intersection through degree 7.

    Each degree is pinned exactly: modular rank bounds from below,
    verified Koszul dependency vectors bound from above.
    """
    pencil_rank = rank_mod([G1, G2], char) if char else rank([G1, G2])
    if pencil_rank != 2:
        return CIReport(False, {}, [], failed="pencil rank")
    dims = {3: 2}
    prime_used = None
    for d in range(4, 8):
        rows = _ci_rows(G1, G2, G, d)
        expect = CI_DIMS[d]
        deps = _ci_dependencies(G1, G2, G, d)
        ncols = len(rows[0])
        for dep in deps:
            for j in range(ncols):
                s = sum(dep[i] * rows[i][j] for i in range(len(rows)) if dep[i])
                if (s % char if char else s) != 0:
                    raise AssertionError("dependency vector fails in degree %d" % d)
        certified = False
        candidates = [char] if char else _PRIMES[:3]
        for p in candidates:
            if deps and rank_mod(deps, p) != len(deps):
                continue
            if rank_mod(rows, p) == expect:
                certified = True
                prime_used = p
                break
        if not certified:
            if char:
                return CIReport(False, dims, [], char, failed="degree %d" % d)
            r = rank(rows)
            if r != expect:
                return CIReport(False, dims, [], None, failed="degree %d rank %d" % (d, r))
            prime_used = None
        dims[d] = expect
    return CIReport(True, dims, list(CI_H_TABLE), prime_used)


def quartic_off_curve_certificate(G1, G2, G, char: int = 0):
    """The quartic does not vanish on the curve cut by the pencil.

    When the pencil curve is integral of degree 9, its ideal contains at
    most 166 of the 220 degree-9 monomials' worth of forms; rank >= 184
    for the joint multiples (one prime suffices, exact from below)
    places the quartic outside, so the triple intersection is finite.
    """
    rows = multiples_piece([(G1, 3), (G2, 3), (G, 4)], 9)
    candidates = [char] if char else _PRIMES[:4]
    for p in candidates:
        r = rank_mod(rows, p)
        if r >= 184:
            return {"ok": True, "rank": r, "prime": p}
    return {"ok": False, "rank": r, "prime": p}


# ---------------------------------------------------------------------------
# irreducibility of the projected nonic


@dataclass
class NonicReport:
    verdict: str  # Irreducible | Reducible | Inconclusive
    nullity: int | None = None
    prime: int | None = None
    transform: int | None = None
    attempts: list = field(default_factory=list)

    def __bool__(self):
        return self.verdict == "Irreducible"


def _seeded_transforms(seed: int, count: int = 8):
    yield 0, None  # identity
    rng = random.Random("nonic:%d" % seed)
    k = 1
    while k < count:
        T = [[rng.randrange(-3, 4) for _ in range(4)] for _ in range(4)]
        if det_bareiss(T) != 0:
            yield k, T
            k += 1


def _apply_transform(f, d, T, char):
    if T is None:
        out = list(f)
    else:
        out = substitute_linear(f, d, T, 4)
    if char:
        out = [c % char for c in out]
    return out


_X3_CUBED = monomials(3).index((0, 0, 0, 3))


def nonic_resultant(G1, G2, seed: int = 0, char: int = 0):
    """Ternary nonic obtained by eliminating x3 from the pencil, after a
    seeded coordinate change placing the projection center off both
    cubics.  Returns (bivariate dict, transform index, transform) with
    x2 set to 1, or None if every tried chart degenerates."""
    for k, T in _seeded_transforms(seed):
        f = _apply_transform(G1, 3, T, char)
        g = _apply_transform(G2, 3, T, char)
        if not f[_X3_CUBED] or not g[_X3_CUBED]:
            continue
        N = resultant_x3(f, g)
        if char:
            N = [c % char for c in N]
        if not any(N):
            return {"zero": True, "transform": k}
        # reject a chart where the line x2 = 0 carries the whole nonic
        if all(c == 0 for m, c in zip(monomials(9, 3), N) if m[2] == 0):
            continue
        biv = {}
        for m, c in zip(monomials(9, 3), N):
            if c:
                biv[(m[0], m[1])] = biv.get((m[0], m[1]), 0) + c
        return {"zero": False, "transform": k, "T": T, "bivariate": biv}
    return None


def _bideg(f):
    m = max(k[0] for k in f)
    n = max(k[1] for k in f)
    return m, n


def rg_nullity(f: dict, p: int) -> int:
    """Dimension of the derivative-pairing solution space of a bivariate
    polynomial modulo p: pairs (g, h) with f*g_y - g*f_y = f*h_x - h*f_x
    inside the standard degree boxes.  For squarefree f with p large,
    this counts absolutely irreducible factors."""
    fbar = {k: v % p for k, v in f.items() if v % p}
    if not fbar:
        raise ValueError("polynomial vanishes mod p")
    m, n = _bideg(fbar)
    if m == 0 or n == 0:
        raise ValueError("degenerate bidegree")
    fx = {(i - 1, j): i * c % p for (i, j), c in fbar.items() if i}
    fy = {(i, j - 1): j * c % p for (i, j), c in fbar.items() if j}
    g_cols = [(i, j) for i in range(m) for j in range(n + 1)]
    h_cols = [(i, j) for i in range(m + 1) for j in range(n)]
    ncols = len(g_cols) + len(h_cols)
    row_idx = {}
    rows = []

    def row_of(key):
        if key not in row_idx:
            row_idx[key] = len(rows)
            rows.append([0] * ncols)
        return row_idx[key]

    for ci, (i, j) in enumerate(g_cols):
        # f * g_y : g_y term j*x^i y^(j-1)
        if j:
            for (a, b), c in fbar.items():
                r = row_of((a + i, b + j - 1))
                rows[r][ci] = (rows[r][ci] + j * c) % p
        # - g * f_y
        for (a, b), c in fy.items():
            r = row_of((a + i, b + j))
            rows[r][ci] = (rows[r][ci] - c) % p
    off = len(g_cols)
    for ci, (i, j) in enumerate(h_cols):
        # - f * h_x
        if i:
            for (a, b), c in fbar.items():
                r = row_of((a + i - 1, b + j))
                rows[r][off + ci] = (rows[r][off + ci] - i * c) % p
        # + h * f_x
        for (a, b), c in fx.items():
            r = row_of((a + i, b + j))
            rows[r][off + ci] = (rows[r][off + ci] + c) % p
    return ncols - rank_mod(rows, p)


def _squarefree_mod(f: dict, p: int) -> bool:
    """gcd(f, df/dy) is constant over F_p, via sympy's GF(p) gcd; also
    requires the mod-p bidegree and total degree to match f's."""
    import sympy

    x, y = sympy.symbols("x y")
    fbar = {k: v % p for k, v in f.items() if v % p}
    if not fbar:
        return False
    if _bideg(fbar) != _bideg(f):
        return False
    total = max(i + j for i, j in f)
    if max(i + j for i, j in fbar) != total:
        return False
    expr = sum(c * x**i * y**j for (i, j), c in fbar.items())
    fp = sympy.Poly(expr, x, y, modulus=p)
    g = sympy.gcd(fp, fp.diff(y))
    return sympy.Poly(g, x, y, modulus=p).total_degree() == 0


def nonic_irreducibility(G1, G2, seed: int = 0, char: int = 0) -> NonicReport:
    """Absolute irreducibility test for the curve the pencil projects to.

    Irreducible is exact: a squarefree mod-p image of full degree whose
    derivative-pairing kernel is one-dimensional cannot come from a
    product.  Reducible needs agreement from two independent projection
    centers and is evidence only; everything else is Inconclusive.
    """
    attempts = []
    high_nullity = 0
    primes = [char] if char else _PRIMES[:4]
    for center in range(3):
        res = nonic_resultant(G1, G2, seed=seed + 101 * center, char=char)
        if res is None:
            attempts.append({"center": center, "note": "no usable chart"})
            continue
        if res["zero"]:
            return NonicReport("Reducible", attempts=attempts + [
                {"center": center, "note": "resultant vanishes identically"}
            ])
        biv = res["bivariate"]
        m, n = _bideg(biv)
        if m == 0 or n == 0:
            attempts.append({"center": center, "note": "degenerate bidegree"})
            continue
        for p in primes:
            try:
                if not _squarefree_mod(biv, p):
                    attempts.append({"center": center, "prime": p, "note": "not squarefree"})
                    continue
                nullity = rg_nullity(biv, p)
            except ValueError as e:
                attempts.append({"center": center, "prime": p, "note": str(e)})
                continue
            attempts.append({"center": center, "prime": p, "nullity": nullity})
            if nullity == 1:
                return NonicReport(
                    "Irreducible", 1, p, res["transform"], attempts
                )
            high_nullity += 1
            if high_nullity >= 2:
                return NonicReport("Reducible", nullity, p, res["transform"], attempts)
            break  # try a fresh center rather than more primes
    return NonicReport("Inconclusive", attempts=attempts)


# ---------------------------------------------------------------------------
# residual (linked) ideal of the point set inside the complete intersection

#: kernel dimensions of the full-ideal multiples in degrees 6..10
_W_DIMS = {6: 35, 7: 36, 8: 36, 9: 36, 10: 36}
#: expected dimensions of the residual ideal pieces
RESIDUAL_DIMS = {3: 2, 4: 17, 5: 38, 6: 66}


def quartic_complement_gens(pencil, quartics):
    """Choose generators of the quartic piece beyond the pencil's own
    multiples: walks the canonical quartic basis and keeps the 9 rows
    that extend pencil * linear forms."""
    pr1 = multiples_piece([(pencil[0], 3), (pencil[1], 3)], 4)
    return subspace_complement(pr1, quartics)


class ResidualComputationError(RuntimeError):
    pass


@dataclass
class ResidualIdeal:
    """Degree pieces of a colon ideal in canonical reduced form over
    one prime: the instance's own for finite fields, otherwise the
    reference prime primes[0] (rational canonical bases of these
    spaces are out of reach, see residual_pieces)."""

    pieces: dict
    dims: dict
    b6_hash: str
    primes: list
    char: int
    diagnostics: dict = field(default_factory=dict)


def _condition_kernel_mod(p, W, Ms_cubic, W_next, Ms_quartic):
    """Kernel mod p of the colon conditions in one degree.

    W pairs against the cubic-generator multiplication maps, W_next
    against the quartic ones; the kernel is the degree piece of the
    colon ideal, in canonical RREF parametrization."""
    blocks = []
    for M in Ms_cubic:
        blocks.append(W @ M % p)
    for M in Ms_quartic:
        blocks.append(W_next @ M % p)
    C = np.concatenate(blocks, axis=0)
    basis, pivots = kernel_mod([[int(x) for x in row] for row in C], p)
    return basis, tuple(pivots)


def residual_pieces(G1, G2, G, quartic_gens, char: int = 0,
                    consistency: int = 5, scan_budget: int = 24):
    """Degree 3..6 pieces of the ideal quotient (full ideal : point
    ideal).

    `quartic_gens` are the 9 quartic generators of the point ideal
    beyond the pencil's multiples.  Over a finite field the single-prime
    computation is exact.  Over the rationals the canonical reduced
    bases of these pieces have entries running to thousands of digits
    (ratios of large minors of the generator matrices), so the pieces
    are presented in canonical form modulo a fixed reference prime
    instead, with pivot structure and dimensions re-derived at
    `consistency` further primes as a guard against bad reduction.
    Reduction mod p can only enlarge a colon ideal, so the matching
    dimensions bound the rational dimensions from above; the lower
    bound is carried by the intersection's own multiples, which sit
    inside every piece as exact integer vectors.  Raises
    ResidualComputationError when dimensions never match the
    linked-scheme expectation or the structure is unstable across
    primes.
    """
    if len(quartic_gens) != 9:
        raise ValueError("expected 9 quartic generators")
    J_rows = {d: _ci_rows(G1, G2, G, d) for d in range(6, 11)}
    Mc = {d: [mult_matrix(g, 3, d) for g in (G1, G2)] for d in range(3, 7)}
    Mq = {d: [mult_matrix(q, 4, d) for q in quartic_gens] for d in range(3, 7)}

    def one_prime(p):
        W = {}
        for d in range(6, 11):
            basis, _ = kernel_mod([[int(x) % p for x in r] for r in J_rows[d]], p)
            if len(basis) != _W_DIMS[d]:
                return None
            W[d] = np.array(basis, dtype=np.int64)
        out = {}
        for d in range(3, 7):
            MsC = [np.transpose(_rows_mod(M, p)) for M in Mc[d]]
            MsQ = [np.transpose(_rows_mod(M, p)) for M in Mq[d]]
            basis, pivots = _condition_kernel_mod(p, W[d + 3], MsC, W[d + 4], MsQ)
            if len(basis) != RESIDUAL_DIMS[d]:
                return None
            out[d] = (basis, pivots)
        return out

    if char:
        res = one_prime(char)
        if res is None:
            raise ResidualComputationError("dimensions off over F_%d" % char)
        pieces = {d: [[int(x) for x in row] for row in res[d][0]] for d in res}
        diagnostics = {
            "full_ideal_deg6_contained": _j6_contained(J_rows[6], pieces[6], char),
        }
        return ResidualIdeal(pieces, dict(RESIDUAL_DIMS), _hash_rows(pieces[6]),
                             [char], char, diagnostics)

    reference = None  # (prime, result, pivot tuple)
    agreeing = []
    mismatched = []
    scanned = 0
    for p in _PRIMES:
        scanned += 1
        res = one_prime(p)
        if res is None:
            if scanned >= scan_budget and reference is None:
                raise ResidualComputationError(
                    "no prime within budget gives the linked dimensions")
            continue
        piv = tuple(res[d][1] for d in range(3, 7))
        if reference is None:
            reference = (p, res, piv)
        elif piv == reference[2]:
            agreeing.append(p)
        else:
            mismatched.append(p)
        if reference is not None and len(agreeing) >= consistency:
            break
        if scanned >= scan_budget:
            break
    if reference is None:
        raise ResidualComputationError("no prime gives the linked dimensions")
    if len(agreeing) < consistency:
        raise ResidualComputationError(
            "pivot structure unstable across primes (%d agreeing, %d mismatched)"
            % (len(agreeing), len(mismatched)))

    ref_p, res, _ = reference
    pieces = {d: [[int(x) for x in row] for row in res[d][0]] for d in res}
    diagnostics = {
        "full_ideal_deg6_contained": _j6_contained(J_rows[6], pieces[6], ref_p),
        "mismatched_primes": len(mismatched),
    }
    return ResidualIdeal(
        pieces, dict(RESIDUAL_DIMS), _hash_rows(pieces[6]),
        [ref_p] + agreeing, 0, diagnostics
    )


def residual_sextics_mod(G1, G2, G, quartic_gens, p):
    """Degree-6 piece of the ideal quotient modulo a single prime, or
    None when the dimensions miss the linked-scheme expectation.
    Cheap re-derivation used to corroborate pairing identities at
    primes beyond the reference one."""
    W = {}
    for d in (9, 10):
        rows = _ci_rows(G1, G2, G, d)
        basis, _ = kernel_mod([[int(x) % p for x in r] for r in rows], p)
        if len(basis) != _W_DIMS[d]:
            return None
        W[d] = np.array(basis, dtype=np.int64)
    MsC = [np.transpose(_rows_mod(mult_matrix(g, 3, 6), p)) for g in (G1, G2)]
    MsQ = [np.transpose(_rows_mod(mult_matrix(q, 4, 6), p)) for q in quartic_gens]
    basis, _ = _condition_kernel_mod(p, W[9], MsC, W[10], MsQ)
    if len(basis) != RESIDUAL_DIMS[6]:
        return None
    return [[int(x) for x in row] for row in basis]


def primitive_int_vector_mod(row, p):
    """Scale a mod-p vector so its first nonzero entry is 1."""
    lead = next((c for c in row if c % p), None)
    if lead is None:
        return [0] * len(row)
    inv = pow(lead % p, -1, p)
    return [c * inv % p for c in row]


def _normalize_mod(int_row, p):
    return tuple(c % p for c in primitive_int_vector_mod([c % p for c in int_row], p))


def _hash_rows(rows):
    payload = ";".join(",".join(str(int(c)) for c in row) for row in rows)
    return hashlib.sha256(payload.encode()).hexdigest()


def _j6_contained(j6_rows, piece6, p):
    """The full ideal's sextics (exact integer multiples of the three
    generators) reduce into the degree-6 residual piece mod p.  The
    containment holds over the rationals by the definition of the
    colon ideal; this guards the computed basis against a bad prime."""
    ech, piv = rref_mod_pair(piece6, p)
    return all(_in_rowspace_mod(r, ech, piv, p) for r in j6_rows)


def double_colon_check(G1, G2, G, a_quartics, residual: ResidualIdeal):
    """Colon back: quotient the full ideal by the residual scheme and
    compare with the original point ideal in degrees 3 and 4.  Runs
    over the residual's own field (the instance prime, or the
    reference prime of a rational instance).  Both schemes share the
    cubic pencil, so multiplication by G1 and G2 covers the residual's
    degree-3 generators."""
    p = residual.char or residual.primes[0]
    if len(residual.pieces[3]) != 2:
        return {"ok": False, "stage": "degree 3 dimension"}
    b_quartics = _complement_mod(residual, p)
    if len(b_quartics) != 9:
        return {"ok": False, "stage": "quartic complement"}
    back = residual_pieces(G1, G2, G, b_quartics, char=p)
    ech3, piv3 = rref_mod_pair(back.pieces[3], p)
    ok3 = all(_in_rowspace_mod(c, ech3, piv3, p) for c in (G1, G2))
    ech, piv = rref_mod_pair(back.pieces[4], p)
    ok4 = all(_in_rowspace_mod(q, ech, piv, p) for q in a_quartics)
    return {
        "ok": ok3 and ok4 and back.dims == residual.dims,
        "prime": p,
        "dims": back.dims,
        "contains_point_cubics": ok3,
        "contains_point_quartics": ok4,
    }


def _complement_mod(residual, p):
    from .linalg import rref_mod

    pr1 = multiples_piece(
        [(residual.pieces[3][0], 3), (residual.pieces[3][1], 3)], 4
    )
    pr1 = [[c % p for c in r] for r in pr1]
    R, piv = rref_mod(pr1, p)
    chosen = []
    for v in residual.pieces[4]:
        w = [c % p for c in v]
        for r, c in zip(R, piv):
            if w[c]:
                f = w[c]
                w = [(a - f * b) % p for a, b in zip(w, r)]
        lead = next((j for j, x in enumerate(w) if x), None)
        if lead is None:
            continue
        inv = pow(w[lead], -1, p)
        w = [x * inv % p for x in w]
        lo = 0
        while lo < len(piv) and piv[lo] < lead:
            lo += 1
        R.insert(lo, w)
        piv.insert(lo, lead)
        chosen.append(list(v))
        if len(chosen) == 9:
            break
    return chosen


def rref_mod_pair(rows, p):
    from .linalg import rref_mod

    return rref_mod([[c % p for c in r] for r in rows], p)


def _in_rowspace_mod(v, R, piv, p):
    w = [int(c) % p for c in v]
    for r, c in zip(R, piv):
        if w[c]:
            f = w[c]
            w = [(a - f * b) % p for a, b in zip(w, r)]
    return not any(w)


# ---------------------------------------------------------------------------
# resolution shape diagnostic


def betti_diagnostic(cubics, quartics, h5: int, h6: int):
    """Measured resolution shape of a point ideal with 2 cubic and 9
    quartic generators: degree-5 first syzygies by exact kernel count
    and the degree-6 second-syzygy count by Euler characteristic.

    Returns the tuple (cubic gens, quartic gens, syzygies, second
    syzygies); the linked-18-point expectation is (2, 9, 18, 8).
    """
    gens9 = quartic_complement_gens(cubics, quartics) if len(quartics) == 17 else quartics
    if len(cubics) != 2 or len(gens9) != 9:
        return {"ok": False, "reason": "generator counts %d, %d" % (len(cubics), len(gens9))}
    rows = multiples_piece([(c, 3) for c in cubics] + [(q, 4) for q in gens9], 5)
    dim_i5 = n_monomials(5) - h5
    r = rank_mod(rows, _PRIMES[0])
    if r != dim_i5:
        r = rank(rows)
    syz5 = len(rows) - r
    dim_i6 = n_monomials(6) - h6
    b3 = dim_i6 - (2 * n_monomials(3) + 9 * n_monomials(2)) + 4 * syz5
    shape = (2, 9, syz5, b3)
    return {"ok": shape == (2, 9, 18, 8), "shape": shape, "dim_I5": dim_i5, "dim_I6": dim_i6}
