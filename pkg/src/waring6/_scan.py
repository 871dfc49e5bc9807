"""Hot loops: batched modular eliminations and the candidate sweep.

Two interchangeable backends compute identical results:

* "numba"  - jit-compiled kernels (default when numba imports cleanly)
* "numpy"  - vectorized fallback, no compilation step

Selection: WARING_BACKEND environment variable, else auto-detection.
Everything here works modulo a prime below 1e8 so that products of two
residues stay far inside int64.
"""

from __future__ import annotations

import os

import numpy as np

_FORCED = None


def backend() -> str:
    if _FORCED is not None:
        return _FORCED
    env = os.environ.get("WARING_BACKEND", "").strip().lower()
    if env in ("numba", "numpy"):
        if env == "numba" and not _numba_ok():
            raise RuntimeError("WARING_BACKEND=numba but numba is not importable")
        return env
    return "numba" if _numba_ok() else "numpy"


def set_backend(name):
    """Force a backend ("numba"/"numpy"/None to restore auto)."""
    global _FORCED
    if name not in (None, "numba", "numpy"):
        raise ValueError(name)
    _FORCED = name


_NUMBA_OK = None


def _numba_ok() -> bool:
    global _NUMBA_OK
    if _NUMBA_OK is None:
        try:
            import numba  # noqa: F401

            _NUMBA_OK = True
        except ImportError:  # pragma: no cover
            _NUMBA_OK = False
    return _NUMBA_OK


# ---------------------------------------------------------------------------
# full reduced echelon form mod p


def gf_rref(rows, p):
    """RREF mod p of a list-of-lists; returns (rows, pivots).

    Output is bit-identical to the small-matrix pure-python path in
    linalg.rref_mod: unit pivots, eliminated above and below, pivot =
    first nonzero scanning rows in order.
    """
    A = np.asarray(rows, dtype=np.int64) % p
    if backend() == "numba":
        A = np.ascontiguousarray(A)
        r, piv = _numba_mod().rref(A, p)
        R = [[int(x) for x in A[i]] for i in range(r)]
        return R, [int(c) for c in piv[:r]]
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            A[mask] = (A[mask] - col[mask, None] * A[r][None, :]) % p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return [[int(x) for x in A[i]] for i in range(r)], pivots


# ---------------------------------------------------------------------------
# batched subset rank checks (general-position, Kruskal)


def batch_ranks(mats, p):
    """Ranks mod p of a (B, k, n) int64 stack, k <= n."""
    A = np.ascontiguousarray(np.asarray(mats, dtype=np.int64) % p)
    if A.ndim != 3:
        raise ValueError("expected a 3d stack")
    if backend() == "numba":
        return np.asarray(_numba_mod().batch_ranks(A, p))
    B, k, n = A.shape
    ranks = np.empty(B, dtype=np.int64)
    for b in range(B):
        ranks[b] = _rank_one(A[b], p)
    return ranks


def _rank_one(M, p):
    A = M.copy()
    k, n = A.shape
    r = 0
    for c in range(n):
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        row = A[r] * inv % p
        A[r] = row
        below = A[r + 1 :, c]
        mask = below != 0
        if mask.any():
            A[r + 1 :][mask] = (A[r + 1 :][mask] - below[mask, None] * row[None, :]) % p
        r += 1
        if r == k:
            break
    return r


# ---------------------------------------------------------------------------
# candidate sweep over P^8(F_p)


def candidate_reps(p: int) -> np.ndarray:
    """All projective representatives of F_p^9 with first nonzero = 1.

    Deterministic order: leading index 0..8, then lex ascending on the
    free tail.  Count is (p^9 - 1) / (p - 1).
    """
    blocks = []
    for lead in range(9):
        free = 8 - lead
        count = p**free
        tail = np.zeros((count, free), dtype=np.int64)
        idx = np.arange(count)
        for j in range(free - 1, -1, -1):
            tail[:, j] = idx % p
            idx //= p
        block = np.zeros((count, 9), dtype=np.int64)
        block[:, lead] = 1
        if free:
            block[:, lead + 1 :] = tail
        blocks.append(block)
    return np.concatenate(blocks, axis=0)


def sweep(p, D9, D10, Q1, Q2, Q10, phi, reps):
    """Run the residual-orthogonality test for every candidate row of
    `reps`; returns a uint8 pass-flag array.

    Per candidate t: the degree-9 and degree-10 perp spaces of the full
    ideal are cut out of the precomputed pencil-perp bases by the kernels
    of sum(t_i * D9_i) and sum(t_i * D10_i); their pairings Q* give the
    condition rows on sextics, and t passes iff phi reduces to zero
    against those rows.
    """
    D9 = np.ascontiguousarray(np.asarray(D9, dtype=np.int64) % p)
    D10 = np.ascontiguousarray(np.asarray(D10, dtype=np.int64) % p)
    Q1 = np.ascontiguousarray(np.asarray(Q1, dtype=np.int64) % p)
    Q2 = np.ascontiguousarray(np.asarray(Q2, dtype=np.int64) % p)
    Q10 = np.ascontiguousarray(np.asarray(Q10, dtype=np.int64) % p)
    phi = np.ascontiguousarray(np.asarray(phi, dtype=np.int64) % p)
    reps = np.ascontiguousarray(np.asarray(reps, dtype=np.int64) % p)
    if backend() == "numba":
        mod = _numba_mod()
        if p <= 64:
            # residues this small let dot products accumulate raw in
            # int64 and turn every elimination step's reduction into a
            # table lookup, which is most of the per-candidate cost
            off = (p - 1) * (p - 1)
            red = np.arange(-off, off + 1, dtype=np.int64) % p
            return np.asarray(
                mod.sweep_small(p, D9, D10, Q1, Q2, Q10, phi, reps, red, off)
            )
        return np.asarray(mod.sweep(p, D9, D10, Q1, Q2, Q10, phi, reps))
    return _sweep_numpy(p, D9, D10, Q1, Q2, Q10, phi, reps)


def _kernel_np(M, p):
    A = M.copy()
    k, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            A[mask] = (A[mask] - col[mask, None] * A[r][None, :]) % p
        pivots.append(c)
        r += 1
        if r == k:
            break
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    K = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        K[i, f] = 1
        for j, c in enumerate(pivots):
            K[i, c] = (-A[j, f]) % p
    return K


def _sweep_numpy(p, D9, D10, Q1, Q2, Q10, phi, reps):
    nc = reps.shape[0]
    out = np.zeros(nc, dtype=np.uint8)
    for i in range(nc):
        t = reps[i]
        W9 = _kernel_np(np.tensordot(t, D9, axes=1) % p, p)
        W10 = _kernel_np(np.tensordot(t, D10, axes=1) % p, p)
        rows = [W9 @ Q1 % p, W9 @ Q2 % p]
        for k in range(Q10.shape[0]):
            rows.append(W10 @ Q10[k] % p)
        C = np.concatenate(rows, axis=0)
        out[i] = 1 if _in_rowspace_np(C, phi, p) else 0
    return out


def _in_rowspace_np(C, phi, p):
    A = C.copy()
    m, n = A.shape
    v = phi.copy()
    r = 0
    for c in range(n):
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = A[r] * inv % p
        below = A[r + 1 :, c]
        mask = below != 0
        if mask.any():
            A[r + 1 :][mask] = (A[r + 1 :][mask] - below[mask, None] * A[r][None, :]) % p
        if v[c]:
            v = (v - v[c] * A[r]) % p
        r += 1
        if r == m:
            break
    return not v.any()


# ---------------------------------------------------------------------------
# numba kernel compilation (lazy, cached across processes)

_NUMBA_MOD = None


def _numba_mod():
    global _NUMBA_MOD
    if _NUMBA_MOD is not None:
        return _NUMBA_MOD
    import numba
    from numba import njit, prange

    threads = os.environ.get("WARING_THREADS", "").strip()
    if threads:
        numba.set_num_threads(max(1, int(threads)))

    @njit("int64(int64, int64)", cache=True, inline="always")
    def modinv(a, p):
        # Fermat; p prime, a != 0 mod p
        e = p - 2
        b = a % p
        acc = 1
        while e:
            if e & 1:
                acc = acc * b % p
            b = b * b % p
            e >>= 1
        return acc

    @njit(cache=True)
    def rref(A, p):
        m, n = A.shape
        piv = np.empty(n, dtype=np.int64)
        r = 0
        for c in range(n):
            sel = -1
            for i in range(r, m):
                if A[i, c] != 0:
                    sel = i
                    break
            if sel < 0:
                continue
            if sel != r:
                for j in range(n):
                    t = A[r, j]
                    A[r, j] = A[sel, j]
                    A[sel, j] = t
            inv = modinv(A[r, c], p)
            for j in range(n):
                A[r, j] = A[r, j] * inv % p
            for i in range(m):
                if i != r and A[i, c] != 0:
                    f = A[i, c]
                    for j in range(n):
                        A[i, j] = (A[i, j] - f * A[r, j]) % p
            piv[r] = c
            r += 1
            if r == m:
                break
        return r, piv

    @njit(cache=True, parallel=True)
    def batch_ranks(A, p):
        B, k, n = A.shape
        ranks = np.empty(B, dtype=np.int64)
        for b in prange(B):
            r = 0
            for c in range(n):
                if r == k:
                    break
                sel = -1
                for i in range(r, k):
                    if A[b, i, c] != 0:
                        sel = i
                        break
                if sel < 0:
                    continue
                if sel != r:
                    for j in range(n):
                        t = A[b, r, j]
                        A[b, r, j] = A[b, sel, j]
                        A[b, sel, j] = t
                inv = modinv(A[b, r, c], p)
                for j in range(c, n):
                    A[b, r, j] = A[b, r, j] * inv % p
                for i in range(r + 1, k):
                    f = A[b, i, c]
                    if f != 0:
                        for j in range(c, n):
                            A[b, i, j] = (A[b, i, j] - f * A[b, r, j]) % p
                r += 1
            ranks[b] = r
        return ranks

    @njit(cache=True)
    def _kernel_into(M, p, K):
        # RREF of M (k x n), kernel rows written into K; returns nullity
        k, n = M.shape
        piv = np.empty(n, dtype=np.int64)
        r = 0
        for c in range(n):
            sel = -1
            for i in range(r, k):
                if M[i, c] != 0:
                    sel = i
                    break
            if sel < 0:
                continue
            if sel != r:
                for j in range(n):
                    t = M[r, j]
                    M[r, j] = M[sel, j]
                    M[sel, j] = t
            inv = modinv(M[r, c], p)
            for j in range(n):
                M[r, j] = M[r, j] * inv % p
            for i in range(k):
                if i != r and M[i, c] != 0:
                    f = M[i, c]
                    for j in range(n):
                        M[i, j] = (M[i, j] - f * M[r, j]) % p
            piv[r] = c
            r += 1
            if r == k:
                break
        nv = 0
        ispiv = np.zeros(n, dtype=np.uint8)
        for j in range(r):
            ispiv[piv[j]] = 1
        for f in range(n):
            if ispiv[f]:
                continue
            for j in range(n):
                K[nv, j] = 0
            K[nv, f] = 1
            for j in range(r):
                K[nv, piv[j]] = (-M[j, f]) % p
            nv += 1
        return nv

    @njit(cache=True)
    def _rank_fwd(M, p, red, off):
        # forward elimination only; destroys M
        k, n = M.shape
        r = 0
        for c in range(n):
            sel = -1
            for i in range(r, k):
                if M[i, c] != 0:
                    sel = i
                    break
            if sel < 0:
                continue
            if sel != r:
                for j in range(c, n):
                    t = M[r, j]
                    M[r, j] = M[sel, j]
                    M[sel, j] = t
            inv = modinv(M[r, c], p)
            for j in range(c, n):
                M[r, j] = red[M[r, j] * inv + off]
            for i in range(r + 1, k):
                f = M[i, c]
                if f != 0:
                    for j in range(c, n):
                        M[i, j] = red[M[i, j] - f * M[r, j] + off]
            r += 1
            if r == k:
                break
        return r

    @njit(cache=True)
    def _kernel_into_small(M, p, K, red, off):
        # same contract as _kernel_into, reductions through the table
        k, n = M.shape
        piv = np.empty(n, dtype=np.int64)
        r = 0
        for c in range(n):
            sel = -1
            for i in range(r, k):
                if M[i, c] != 0:
                    sel = i
                    break
            if sel < 0:
                continue
            if sel != r:
                for j in range(n):
                    t = M[r, j]
                    M[r, j] = M[sel, j]
                    M[sel, j] = t
            inv = modinv(M[r, c], p)
            for j in range(n):
                M[r, j] = red[M[r, j] * inv + off]
            for i in range(k):
                if i != r and M[i, c] != 0:
                    f = M[i, c]
                    for j in range(n):
                        M[i, j] = red[M[i, j] - f * M[r, j] + off]
            piv[r] = c
            r += 1
            if r == k:
                break
        nv = 0
        ispiv = np.zeros(n, dtype=np.uint8)
        for j in range(r):
            ispiv[piv[j]] = 1
        for f in range(n):
            if ispiv[f]:
                continue
            for j in range(n):
                K[nv, j] = 0
            K[nv, f] = 1
            for j in range(r):
                K[nv, piv[j]] = red[off - M[j, f]]
            nv += 1
        return nv

    @njit(cache=True, parallel=True)
    def sweep_small(p, D9, D10, Q1, Q2, Q10, phi, reps, red, off):
        nc = reps.shape[0]
        m9 = D9.shape[1]
        n9 = D9.shape[2]
        m10 = D10.shape[1]
        n10 = D10.shape[2]
        ncol = Q1.shape[1]
        ng = Q10.shape[0]
        out = np.zeros(nc, dtype=np.uint8)
        for ci in prange(nc):
            t = reps[ci]
            M9 = np.empty((m9, n9), dtype=np.int64)
            for a in range(m9):
                for b in range(n9):
                    s = 0
                    for g in range(9):
                        s += t[g] * D9[g, a, b]
                    M9[a, b] = s % p
            K9 = np.zeros((n9, n9), dtype=np.int64)
            nv9 = _kernel_into_small(M9, p, K9, red, off)
            # the degree-10 block generically has full column rank and
            # contributes nothing, so pay for kernel extraction only
            # when a cheap forward pass sees the rank drop
            M10 = np.empty((m10, n10), dtype=np.int64)
            for a in range(m10):
                for b in range(n10):
                    s = 0
                    for g in range(9):
                        s += t[g] * D10[g, a, b]
                    M10[a, b] = s % p
            K10 = np.zeros((n10, n10), dtype=np.int64)
            nv10 = 0
            if _rank_fwd(M10, p, red, off) < n10:
                for a in range(m10):
                    for b in range(n10):
                        s = 0
                        for g in range(9):
                            s += t[g] * D10[g, a, b]
                        M10[a, b] = s % p
                nv10 = _kernel_into_small(M10, p, K10, red, off)
            ech = np.zeros((ncol, ncol), dtype=np.int64)
            pivcol = np.zeros(ncol, dtype=np.int64)
            nech = 0
            v = phi.copy()
            row = np.zeros(ncol, dtype=np.int64)
            nrows = 2 * nv9 + ng * nv10
            for ri in range(nrows):
                if ri < nv9:
                    kr = ri
                    for j in range(ncol):
                        s = 0
                        for a in range(n9):
                            s += K9[kr, a] * Q1[a, j]
                        row[j] = s % p
                elif ri < 2 * nv9:
                    kr = ri - nv9
                    for j in range(ncol):
                        s = 0
                        for a in range(n9):
                            s += K9[kr, a] * Q2[a, j]
                        row[j] = s % p
                else:
                    rr = ri - 2 * nv9
                    g = rr // nv10
                    kq = rr % nv10
                    for j in range(ncol):
                        s = 0
                        for a in range(n10):
                            s += K10[kq, a] * Q10[g, a, j]
                        row[j] = s % p
                for e in range(nech):
                    c = pivcol[e]
                    if row[c]:
                        f = row[c]
                        for j in range(ncol):
                            row[j] = red[row[j] - f * ech[e, j] + off]
                lead = -1
                for j in range(ncol):
                    if row[j]:
                        lead = j
                        break
                if lead >= 0:
                    inv = modinv(row[lead], p)
                    for j in range(ncol):
                        ech[nech, j] = red[row[j] * inv + off]
                    pivcol[nech] = lead
                    nech += 1
            for e in range(nech):
                c = pivcol[e]
                if v[c]:
                    f = v[c]
                    for j in range(ncol):
                        v[j] = red[v[j] - f * ech[e, j] + off]
            good = 1
            for j in range(ncol):
                if v[j]:
                    good = 0
                    break
            out[ci] = good
        return out

    @njit(cache=True, parallel=True)
    def sweep(p, D9, D10, Q1, Q2, Q10, phi, reps):
        nc = reps.shape[0]
        n9 = D9.shape[2]
        n10 = D10.shape[2]
        ncol = Q1.shape[1]
        ng = Q10.shape[0]
        out = np.zeros(nc, dtype=np.uint8)
        for ci in prange(nc):
            t = reps[ci]
            M9 = np.zeros((D9.shape[1], n9), dtype=np.int64)
            for g in range(9):
                tg = t[g]
                if tg:
                    for a in range(D9.shape[1]):
                        for b in range(n9):
                            M9[a, b] = (M9[a, b] + tg * D9[g, a, b]) % p
            K9 = np.zeros((n9, n9), dtype=np.int64)
            nv9 = _kernel_into(M9, p, K9)
            M10 = np.zeros((D10.shape[1], n10), dtype=np.int64)
            for g in range(9):
                tg = t[g]
                if tg:
                    for a in range(D10.shape[1]):
                        for b in range(n10):
                            M10[a, b] = (M10[a, b] + tg * D10[g, a, b]) % p
            K10 = np.zeros((n10, n10), dtype=np.int64)
            nv10 = _kernel_into(M10, p, K10)
            # echelon of the condition rows, phi reduced on the fly
            ech = np.zeros((ncol, ncol), dtype=np.int64)
            pivcol = np.zeros(ncol, dtype=np.int64)
            nech = 0
            v = phi.copy()
            nrows = 2 * nv9 + ng * nv10
            row = np.zeros(ncol, dtype=np.int64)
            for ri in range(nrows):
                if ri < nv9:
                    for j in range(ncol):
                        s = 0
                        for a in range(n9):
                            s = (s + K9[ri, a] * Q1[a, j]) % p
                        row[j] = s
                elif ri < 2 * nv9:
                    rr = ri - nv9
                    for j in range(ncol):
                        s = 0
                        for a in range(n9):
                            s = (s + K9[rr, a] * Q2[a, j]) % p
                        row[j] = s
                else:
                    rr = ri - 2 * nv9
                    g = rr // nv10
                    k = rr % nv10
                    for j in range(ncol):
                        s = 0
                        for a in range(n10):
                            s = (s + K10[k, a] * Q10[g, a, j]) % p
                        row[j] = s
                # reduce against echelon
                for e in range(nech):
                    c = pivcol[e]
                    if row[c]:
                        f = row[c]
                        for j in range(ncol):
                            row[j] = (row[j] - f * ech[e, j]) % p
                lead = -1
                for j in range(ncol):
                    if row[j]:
                        lead = j
                        break
                if lead >= 0:
                    inv = modinv(row[lead], p)
                    for j in range(ncol):
                        ech[nech, j] = row[j] * inv % p
                    pivcol[nech] = lead
                    nech += 1
            for e in range(nech):
                c = pivcol[e]
                if v[c]:
                    f = v[c]
                    for j in range(ncol):
                        v[j] = (v[j] - f * ech[e, j]) % p
            good = 1
            for j in range(ncol):
                if v[j]:
                    good = 0
                    break
            out[ci] = good
        return out

    class _Mod:
        pass

    m = _Mod()
    m.rref = rref
    m.batch_ranks = batch_ranks
    m.sweep = sweep
    m.sweep_small = sweep_small
    _NUMBA_MOD = m
    return m
