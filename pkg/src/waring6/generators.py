"""Seeded instance generators.

Every generator is deterministic in (name, seed, field), draws all of
its entropy from one `random.Random` stream, and self-certifies: the
returned diagnostics are computed, not assumed, and a configuration
that fails its own checks is resampled rather than emitted.  Finite
field instances are labeled by their characteristic; nothing generated
over F_p is ever described as a characteristic-zero certificate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np
from sympy import isprime

from . import geometry
from .certify import CertifyConfig, transversality_weights, verify_witness
from .linalg import (
    det_bareiss,
    kernel_basis,
    kernel_lll,
    kernel_mod,
    p_saturate,
    primitive_int_vector,
    rank_mod,
    rref,
    rref_mod,
)
from .pointconfig import (
    PointConfiguration,
    cayley_bacharach_check,
    is_general_position,
    kruskal_rank_v2,
    terracini_rank,
)
from .polyring import monomials, multiples_piece, n_monomials, veronese_dual


@dataclass
class GeneratorOutput:
    name: str
    seed: int
    points: PointConfiguration
    phi: list | None
    char: int
    expected_status: str
    diagnostics: dict = field(default_factory=dict)
    witness: dict | None = None


class GenerationError(RuntimeError):
    pass


def _rng(name, seed):
    return random.Random("%s:%d" % (name, seed))


def _draw_point(rng, char, bound=9):
    # callers that only need position checks pass a wider bound: at +-9
    # some 4-subset of 15+ random points is coplanar most of the time,
    # so narrow draws burn many retries
    while True:
        if char:
            P = [rng.randrange(char) for _ in range(4)]
        else:
            P = [rng.randint(-bound, bound) for _ in range(4)]
        if any(P):
            return P


def _draw_weights(rng, n, char):
    out = []
    for _ in range(n):
        if char:
            out.append(rng.randrange(1, char))
        else:
            w = 0
            while w == 0:
                w = rng.randint(-9, 9)
            out.append(w)
    return out


def _phi_from_weights(points: PointConfiguration, a):
    char = points.char
    n = n_monomials(6)
    out = [0] * n
    for P, w in zip(points.points, a):
        v = veronese_dual(P, 6)
        for i in range(n):
            out[i] += int(w) * v[i]
    if char:
        return [x % char for x in out]
    return out


def _try_config(pts, char):
    try:
        return PointConfiguration(pts, char=char)
    except ValueError:
        return None


# ---------------------------------------------------------------------------
# general instances


def gen_general_instance(r: int, seed: int, field: int = 0) -> GeneratorOutput:
    """r random points in general position with random nonzero weights.

    Resamples until the route the certifier will take is actually open:
    full degree-2 subset independence for r <= 14, a certified-finite
    cubic base locus for r = 15..17, and plain general position for
    r = 18.  Over a finite field the same checks run as analogues.
    """
    if not 1 <= r <= 18:
        raise ValueError("r must be between 1 and 18")
    if field and (field < 101 or not isprime(field)):
        raise ValueError("field must be 0 or a prime >= 101")
    rng = _rng("general", seed * 97 + r + field)
    bound = 29 if r >= 15 else 9
    for _ in range(400):
        config = _try_config([_draw_point(rng, field, bound) for _ in range(r)], field)
        if config is None:
            continue
        if config.hilbert_function(6) != r:
            continue
        if not is_general_position(config):
            continue
        if r <= 14 and kruskal_rank_v2(config) < min(r, 10):
            continue
        bl_verdict = None
        if 15 <= r <= 17:
            bl = geometry.base_locus_curve_test(
                config.ideal_piece(3), planes=8, seed=seed, char=field
            )
            bl_verdict = bl.verdict
            if bl.verdict != "CertifiedFinite":
                continue
        a = _draw_weights(rng, r, field)
        phi = _phi_from_weights(config, a)
        if field and r <= 17:
            expected = "Undecided"
        elif r <= 17:
            expected = "Identifiable"
        else:
            expected = "Undecided"
        diag = {
            "difference_hilbert": config.difference_hilbert(3),
            "hilbert6": r,
        }
        if bl_verdict:
            diag["base_locus"] = bl_verdict
        return GeneratorOutput("general", seed, config, phi, field, expected, diag)
    raise GenerationError("no general configuration found for r=%d seed=%d" % (r, seed))


# ---------------------------------------------------------------------------
# planted degeneracies (for negative-path tests and reports)


def plant_coplanar_config(seed: int, r: int = 18):
    """r points with points 0..3 forced coplanar; returns the
    configuration and the planted index tuple."""
    rng = _rng("plant-coplanar", seed)
    for _ in range(200):
        pts = [_draw_point(rng, 0, 29) for _ in range(3)]
        c = [rng.randint(1, 4) for _ in range(3)]
        fourth = [
            c[0] * pts[0][i] + c[1] * pts[1][i] + c[2] * pts[2][i] for i in range(4)
        ]
        pts.append(fourth)
        pts.extend(_draw_point(rng, 0, 29) for _ in range(r - 4))
        config = _try_config(pts, 0)
        if config is None:
            continue
        M = [list(veronese_dual(config.points[i], 1)) for i in range(4)]
        if len(rref(M)[0]) <= 3:
            return config, (0, 1, 2, 3)
    raise GenerationError("no coplanar plant for seed %d" % seed)


def plant_quadric_config(seed: int, r: int = 18, k: int = 10):
    """r points with the first k on the quadric x0*x3 = x1*x2; returns
    the configuration and the planted index tuple."""
    rng = _rng("plant-quadric", seed)
    for _ in range(200):
        pts = []
        for _ in range(k):
            s, t = rng.randint(-6, 6), rng.randint(-6, 6)
            u, v = rng.randint(-6, 6), rng.randint(-6, 6)
            P = [s * u, s * v, t * u, t * v]
            if not any(P):
                P = [1, 0, 0, 0]
            pts.append(P)
        pts.extend(_draw_point(rng, 0, 29) for _ in range(r - k))
        config = _try_config(pts, 0)
        if config is None:
            continue
        if not all(P[0] * P[3] - P[1] * P[2] == 0 for P in config.points[:k]):
            continue
        report = is_general_position(config)
        if report.ok or report.witness is None:
            continue
        if report.witness == (2, tuple(range(k))):
            return config, tuple(range(k))
    raise GenerationError("no quadric plant for seed %d" % seed)


# ---------------------------------------------------------------------------
# sixteen points on a rational quintic curve


def _binary_eval(f, s, t=1):
    d = len(f) - 1
    return sum(c * s**i * t ** (d - i) for i, c in enumerate(f))


def _binary_mul(f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def _sylvester_det(f, g):
    """Resultant of two binary quintics: nonzero iff no common
    projective root, so the induced map from the line is everywhere
    defined."""
    n = 10
    rows = []
    for k in range(5):
        rows.append([0] * k + list(f) + [0] * (n - 6 - k))
    for k in range(5):
        rows.append([0] * k + list(g) + [0] * (n - 6 - k))
    return det_bareiss(rows)


def gen_rational_quintic_config(seed: int, n: int = 16) -> GeneratorOutput:
    """n = 16 points on a rational quintic curve in P^3.

    Sixteen points cut out the full cubic system of the curve: a cubic
    through them pulls back to a degree-15 binary form with 16 roots.
    The returned diagnostics verify that equality exactly, so the
    configuration is a guaranteed curve case for the base-locus test.
    """
    rng = _rng("rat5", seed)
    for _ in range(300):
        quintics = [[rng.randint(-5, 5) for _ in range(6)] for _ in range(4)]
        if _sylvester_det(quintics[0], quintics[1]) == 0:
            continue
        params = rng.sample(range(-30, 31), n)
        pts = []
        for a in params:
            P = [_binary_eval(f, a) for f in quintics]
            if not any(P):
                break
            pts.append(primitive_int_vector(P))
        else:
            config = _try_config(pts, 0)
            if config is None:
                continue
            pull = []
            for mono in monomials(3):
                prod = [1]
                for v in range(4):
                    for _ in range(mono[v]):
                        prod = _binary_mul(prod, quintics[v])
                prod = prod + [0] * (16 - len(prod))
                pull.append(prod)
            curve_cubics = kernel_basis([list(col) for col in zip(*pull)])
            if len(curve_cubics) != 4:
                continue
            point_cubics = config.ideal_piece(3)
            if len(point_cubics) != 4:
                continue
            same = rref(list(curve_cubics))[0] == rref(list(point_cubics))[0]
            if not same:
                continue
            if config.hilbert_function(6) != n:
                continue
            if not is_general_position(config):
                continue
            terr = terracini_rank(config)
            a = _draw_weights(rng, n, 0)
            phi = _phi_from_weights(config, a)
            diag = {
                "curve_cubics_dim": 4,
                "point_cubics_match_curve": True,
                "terracini": terr,
                "parameters": params,
            }
            return GeneratorOutput("rat5", seed, config, phi, 0, "Undecided", diag)
    raise GenerationError("no rational quintic configuration for seed %d" % seed)


# ---------------------------------------------------------------------------
# fifteen points on an elliptic quintic curve over F_p


def _ideal_span_perp_mod(C1, C2, e, p, cache):
    if e not in cache:
        rows = multiples_piece([(C1, 3), (C2, 3)], e)
        basis, _ = kernel_mod([[c % p for c in r] for r in rows], p)
        cache[e] = basis
    return cache[e]


def _colon_piece_mod(C1, C2, quadric, cubics, d, p, cache):
    """Degree-d piece of the ideal linked to the quartic curve inside
    the cubic pencil: conditions say multiplication by each curve
    generator lands in the pencil ideal."""
    blocks = []
    W2 = _ideal_span_perp_mod(C1, C2, d + 2, p, cache)
    M = geometry.mult_matrix(quadric, 2, d)
    Mp = np.array([[c % p for c in r] for r in M], dtype=np.int64)
    if W2:
        blocks.append(np.array(W2, dtype=np.int64) @ Mp.T % p)
    W3 = _ideal_span_perp_mod(C1, C2, d + 3, p, cache)
    for cb in cubics:
        M = geometry.mult_matrix(cb, 3, d)
        Mp = np.array([[c % p for c in r] for r in M], dtype=np.int64)
        if W3:
            blocks.append(np.array(W3, dtype=np.int64) @ Mp.T % p)
    stacked = np.concatenate(blocks, axis=0)
    basis, _ = kernel_mod([[int(c) for c in row] for row in stacked], p)
    return basis


def _scan_block(gens, coords, p, exps, exclude, found):
    ok = np.ones(coords.shape[1], dtype=bool)
    pows = {}
    for v in range(4):
        pows[v] = [np.ones_like(coords[v])]
        for _ in range(3):
            pows[v].append(pows[v][-1] * coords[v] % p)
    for g in gens:
        acc = np.zeros(coords.shape[1], dtype=np.int64)
        for c, e in zip(g, exps):
            c = int(c) % p
            if c == 0:
                continue
            term = c * pows[0][e[0]] % p
            term = term * pows[1][e[1]] % p
            term = term * pows[2][e[2]] % p
            term = term * pows[3][e[3]] % p
            acc = (acc + term) % p
        ok &= acc == 0
        if not ok.any():
            return
    for idx in np.nonzero(ok)[0]:
        t = tuple(int(coords[v][idx]) for v in range(4))
        if t not in exclude:
            found.append(t)


def _scan_cubic_locus(gens, p, exclude):
    """All F_p points of the common zero locus of the given cubics, by
    chart-by-chart vectorized enumeration of normalized representatives.
    Charts with p^3 points are walked one slice at a time to bound
    memory at large p."""
    exps = monomials(3)
    found = []
    for lead in range(4):
        nfree = 3 - lead
        if nfree == 0:
            P = [0] * 4
            P[lead] = 1
            if all(_eval_cubic_int(g, P, p) == 0 for g in gens):
                found.append(tuple(P))
            continue
        if nfree == 3:
            grids = np.indices((p, p), dtype=np.int64).reshape(2, -1)
            for first in range(p):
                coords = np.zeros((4, grids.shape[1]), dtype=np.int64)
                coords[lead] = 1
                coords[lead + 1] = first
                coords[lead + 2] = grids[0]
                coords[lead + 3] = grids[1]
                _scan_block(gens, coords, p, exps, exclude, found)
            continue
        grids = np.indices((p,) * nfree, dtype=np.int64).reshape(nfree, -1)
        coords = np.zeros((4, grids.shape[1]), dtype=np.int64)
        coords[lead] = 1
        for j in range(nfree):
            coords[lead + 1 + j] = grids[j]
        _scan_block(gens, coords, p, exps, exclude, found)
    return found


def _eval_cubic_int(g, P, p):
    exps = monomials(3)
    s = 0
    for c, e in zip(g, exps):
        s += int(c) * P[0] ** e[0] * P[1] ** e[1] * P[2] ** e[2] * P[3] ** e[3]
    return s % p


def gen_elliptic_quintic_config(seed: int, p: int = 101, n: int = 15) -> GeneratorOutput:
    """n = 15 points on an elliptic quintic curve over F_p.

    The curve is produced by linkage: a rational quartic curve (image of
    the line under four binary quartics, with all p+1 rational
    parameter points recorded) sits inside the complete intersection of
    two of its cubics; the linked curve is the degree-5 residual.  Its
    ideal comes out degree by degree from the multiplication
    conditions, and the points are harvested from a full chart scan of
    the cubic locus.
    """
    if not (isprime(p) and 101 <= p <= 499):
        raise ValueError("p must be a prime in [101, 499]")
    if n > 15:
        raise ValueError("at most 15 points are guaranteed on the curve")
    rng = _rng("ell5", seed * 1009 + p)
    for _ in range(100):
        quartics = [[rng.randrange(p) for _ in range(5)] for _ in range(4)]
        images = set()
        pts = []
        degenerate = False
        for a in range(p):
            P = [_binary_eval(f, a) % p for f in quartics]
            P = _normalize_modp(P, p)
            if P is None or P in images:
                degenerate = True
                break
            images.add(P)
            pts.append(P)
        if not degenerate:
            P = [f[-1] % p for f in quartics]
            P = _normalize_modp(P, p)
            if P is None or P in images:
                degenerate = True
            else:
                images.add(P)
                pts.append(P)
        if degenerate:
            continue
        ev2 = [list(veronese_dual(P, 2)) for P in pts]
        q_basis, _ = kernel_mod(ev2, p)
        if len(q_basis) != 1:
            continue
        ev3 = [list(veronese_dual(P, 3)) for P in pts]
        c_basis, _ = kernel_mod(ev3, p)
        if len(c_basis) != 7:
            continue
        quadric = q_basis[0]
        pencil = None
        for _try in range(20):
            co1 = [rng.randrange(p) for _ in range(7)]
            co2 = [rng.randrange(p) for _ in range(7)]
            C1 = [sum(co1[j] * c_basis[j][i] for j in range(7)) % p for i in range(20)]
            C2 = [sum(co2[j] * c_basis[j][i] for j in range(7)) % p for i in range(20)]
            if rank_mod([C1, C2], p) != 2:
                continue
            if geometry.pencil_regular_sequence_check(C1, C2, char=p):
                pencil = (C1, C2)
                break
        if pencil is None:
            continue
        C1, C2 = pencil
        cache = {}
        dims_ok = True
        pieces = {}
        for d, expect in ((2, 0), (3, 5), (4, 15), (5, 31), (6, 54)):
            basis = _colon_piece_mod(C1, C2, quadric, c_basis, d, p, cache)
            pieces[d] = basis
            if len(basis) != expect:
                dims_ok = False
                break
        if not dims_ok:
            continue
        locus = _scan_cubic_locus(pieces[3], p, images)
        if len(locus) < n:
            continue
        locus.sort()
        for _try in range(60):
            sample = rng.sample(locus, n)
            config = _try_config([list(P) for P in sample], p)
            if config is None:
                continue
            if config.hilbert_function(6) != n:
                continue
            i3 = config.ideal_piece(3)
            if len(i3) != 20 - n:
                continue
            if n == 15:
                same = rref_mod([list(r) for r in pieces[3]], p)[0] == rref_mod(
                    [list(r) for r in i3], p
                )[0]
                if not same:
                    continue
            # points of a space curve over a small field always pick up
            # coplanar four-tuples from plane sections, so position is
            # reported rather than demanded
            gp = is_general_position(config)
            a = _draw_weights(rng, n, p)
            phi = _phi_from_weights(config, a)
            diag = {
                "curve_ideal_dims": {d: len(pieces[d]) for d in pieces},
                "curve_hilbert": [n_monomials(d) - len(pieces[d]) for d in (3, 4, 5, 6)],
                "rational_points_on_curve": len(locus),
                "curve_cubics": [list(r) for r in pieces[3]],
                "point_cubics_match_curve": n == 15,
                "general_position": bool(gp),
            }
            return GeneratorOutput("ell5", seed, config, phi, p, "Undecided", diag)
    raise GenerationError("no elliptic quintic configuration for seed %d" % seed)


def _normalize_modp(P, p):
    lead = next((i for i, x in enumerate(P) if x % p), None)
    if lead is None:
        return None
    inv = pow(P[lead] % p, -1, p)
    return tuple(x * inv % p for x in P)


_SWEEP_PRIMES = CertifyConfig().primes


def _pencil_sweep_ok(G1, G2):
    # the enumeration layer refuses primes where the pencil ideal drops
    # rank, and whether it does at 2 or 3 is luck of the draw (roughly
    # a third of the draws survive both), so resample until the
    # instance supports the default sweeps; full degree-9 rank means
    # the two reductions stay coprime, which covers every degree
    p9 = multiples_piece([(G1, 3), (G2, 3)], 9)
    return all(rank_mod(p9, p) == 148 for p in _SWEEP_PRIMES)




# ---------------------------------------------------------------------------
# eighteen points with a known second decomposition


def gen_example18(seed: int, field: int = 0) -> GeneratorOutput:
    """18 general points whose sextic has a certified second length-18
    apolar scheme.

    The sextic is not drawn at random: its weights are the reciprocals
    of the transversality scalars of a seeded quartic through the
    points, which is exactly the condition making the weighted
    evaluation functional vanish on the linked scheme's sextics.  The
    quartic is stored as a known witness and the full verification
    chain is run before the instance is emitted.
    """
    if field and (field < 101 or not isprime(field)):
        raise ValueError("field must be 0 or a prime >= 101")
    char = field
    rng = _rng("example18", seed * 31 + field)
    gp_rejections = 0
    for _attempt in range(200):
        # +-9 keeps lattice reductions and the emitted functional small;
        # the position checks reject enough draws that wider coordinates
        # were tried, but they doubled the basis heights for nothing
        config = _try_config([_draw_point(rng, char, 9) for _ in range(18)], char)
        if config is None:
            continue
        if config.hilbert_function(6) != 18:
            continue
        if not is_general_position(config):
            gp_rejections += 1
            continue
        ev3 = config.evaluation_matrix(3)
        if char:
            pencil, _ = kernel_mod([list(r) for r in ev3], char)
        else:
            # every pencil-level gate below is a property of the span,
            # so run them on a cheap echelon kernel and pay for the
            # lattice-reduced basis only once the draw is accepted; the
            # echelon lattice is rarely saturated at 2 or 3, which
            # would fail the reduction gate spuriously
            pencil = [
                primitive_int_vector(v)
                for v in kernel_basis([list(r) for r in ev3])
            ]
            if len(pencil) == 2:
                for p in _SWEEP_PRIMES:
                    pencil = p_saturate(pencil, p)
        if len(pencil) != 2:
            continue
        G1, G2 = list(pencil[0]), list(pencil[1])
        pr = geometry.pencil_regular_sequence_check(G1, G2, char=char)
        if not pr:
            continue
        if not char and not _pencil_sweep_ok(G1, G2):
            continue
        nonic = geometry.nonic_irreducibility(G1, G2, seed=seed, char=char)
        if nonic.verdict != "Irreducible":
            continue
        if not char:
            try:
                pencil = kernel_lll([list(r) for r in ev3], 2)
            except RuntimeError:
                continue
            if len(pencil) != 2:
                continue
            G1, G2 = list(pencil[0]), list(pencil[1])
        ev4 = config.evaluation_matrix(4)
        if char:
            quartics, _ = kernel_mod([list(r) for r in ev4], char)
        else:
            try:
                quartics = kernel_lll([list(r) for r in ev4], 17)
            except RuntimeError:
                continue
        if len(quartics) != 17:
            continue
        if char:
            gens = geometry._complement_mod(_PiecesBox({3: [G1, G2], 4: quartics}), char)
        else:
            gens = geometry.quartic_complement_gens([G1, G2], quartics)
        if len(gens) != 9:
            continue
        for _try in range(40):
            t = [rng.randint(-3, 3) for _ in range(9)]
            if not any(t):
                continue
            G = [sum(t[j] * int(gens[j][i]) for j in range(9)) for i in range(35)]
            if char:
                G = [x % char for x in G]
            ci = geometry.ci_validate(G1, G2, G, char=char)
            if not ci:
                continue
            mus = transversality_weights(config, G1, G2, G)
            if mus is None or any(m == 0 for m in mus):
                continue
            phi = _phi_from_reciprocal_weights(config, mus, char)
            if phi is None:
                continue
            ver = verify_witness(phi, config, G, seed=seed)
            if not ver:
                continue
            diag = _example18_diagnostics(config, [G1, G2], ci)
            witness = {
                "quartic": [int(x) for x in G],
                "t_coords": [int(x) for x in t],
                "pencil": [[int(x) for x in G1], [int(x) for x in G2]],
                "b6_dims": ver.residual.dims,
                "b6_hash": ver.residual.b6_hash,
                "b6_prime": ver.residual.primes[0],
                "expected": "NotIdentifiable",
            }
            return GeneratorOutput(
                "example18", seed, config, phi, char, "NotIdentifiable", diag, witness
            )
    if char and gp_rejections >= 150:
        raise GenerationError(
            "no linked-pair instance for seed %d: 18 random points over "
            "F_%d essentially never avoid coplanar or quadric-bound "
            "subsets (expect success only for primes above roughly 1e5)"
            % (seed, char)
        )
    raise GenerationError("no linked-pair instance for seed %d" % seed)


class _PiecesBox:
    def __init__(self, pieces):
        self.pieces = pieces


def _phi_from_reciprocal_weights(config, mus, char):
    n = n_monomials(6)
    out = [0] * n
    from .linalg import QQ

    for P, mu in zip(config.points, mus):
        v = veronese_dual(P, 6)
        if char:
            inv = pow(int(mu), -1, char)
            for i in range(n):
                out[i] = (out[i] + v[i] * inv) % char
        else:
            inv = 1 / QQ(mu)
            for i in range(n):
                out[i] = out[i] + v[i] * inv
    if char:
        return out if any(out) else None
    out = primitive_int_vector(out)
    return out if any(out) else None


def _example18_diagnostics(config, pencil, ci):
    h_points = [config.hilbert_function(d) for d in range(7)]
    h_scheme = list(geometry.CI_H_TABLE)
    cb = cayley_bacharach_check(h_scheme)
    i3 = config.ideal_piece(3)
    char = config.char
    if char:
        same = rref_mod([list(r) for r in i3], char)[0] == rref_mod(
            [[int(x) % char for x in r] for r in pencil], char
        )[0]
    else:
        same = rref(list(i3))[0] == rref([list(r) for r in pencil])[0]
    return {
        "point_hilbert": h_points,
        "scheme_hilbert": h_scheme,
        "scheme_superabundance_6": 36 - h_scheme[6],
        "difference_hilbert_symmetric": cb["symmetric"],
        "cayley_bacharach": cb,
        "point_cubics_equal_scheme_cubics": same,
        "ci_dims": ci.dims,
    }


# ---------------------------------------------------------------------------
# seventeen points: curve core plus two general points


def gen_nodisj17(seed: int, p: int = 101) -> GeneratorOutput:
    """15 points on an elliptic quintic over F_p plus 2 general points.

    The 17-point ideal keeps three of the curve's cubics, so the cubic
    base locus still contains the quintic curve and the certifier's
    r = 17 route must stop at the curve report.
    """
    core = gen_elliptic_quintic_config(seed, p)
    rng = _rng("nodisj17", seed * 53 + p)
    curve_cubics = core.diagnostics["curve_cubics"]
    for _ in range(300):
        extras = []
        while len(extras) < 2:
            P = [rng.randrange(p) for _ in range(4)]
            if not any(P):
                continue
            if all(_eval_cubic_int(g, P, p) == 0 for g in curve_cubics):
                continue
            extras.append(P)
        config = _try_config([list(P) for P in core.points.points] + extras, p)
        if config is None:
            continue
        if config.hilbert_function(6) != 17:
            continue
        if len(config.ideal_piece(3)) != 3:
            continue
        # position over a small field is reported, not demanded: the
        # core's plane sections force coplanar four-tuples
        gp = is_general_position(config)
        bl = geometry.base_locus_curve_test(
            config.ideal_piece(3), planes=8, seed=seed, char=p
        )
        a = _draw_weights(rng, 17, p)
        phi = _phi_from_weights(config, a)
        diag = {
            "core_points": 15,
            "core_seed": seed,
            "base_locus": bl.verdict,
            "cubic_system_dim": 3,
            "general_position": bool(gp),
        }
        return GeneratorOutput("nodisj17", seed, config, phi, p, "Undecided", diag)
    raise GenerationError("no 17-point extension for seed %d" % seed)
