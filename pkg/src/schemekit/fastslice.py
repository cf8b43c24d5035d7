"""Compiled reduced-degree evaluation for hyperplane sections of a curve.

Setting: S₀ ⊂ P^{n-1} is a curve over F_p whose homogeneous coordinate
ring A = F_p[z]/I(S₀) is Cohen–Macaulay (checked with a regular sequence
of two linear forms).  For a linear form h that is a nonzerodivisor on A,
Z = S₀ ∩ V(h) is zero-dimensional of length δ = deg S₀ and, in any degree
m past the h-vector,

    W_m = A_m / h·A_{m-1}  ≅  O_Z        (f ↦ f / λ^m)

for every linear λ that does not vanish on Z.  Multiplication by z_j/λ
becomes L_j = Y_λ^{-1} Y_j where Y_j : W_m → W_{m+1} is multiplication by
z_j.  The class w of λ^m is the unit of O_Z.

Over the prime field the Frobenius x ↦ x^p is F_p-linear on O_Z and its
e-th power (p^e ≥ δ) kills exactly the nilradical, so

    #points of Z = rank span{ M(L^{p^e}) w : M(L) w runs over a basis }.

Most sections are reduced; a separable characteristic polynomial of one
multiplication operator certifies that in O(δ³) and skips the rest.

Return codes: ≥ 0 reduced degree; −1 numerical dead end (use Gröbner
bases); −2 h is a zero divisor on A (positive-dimensional section);
−3 the candidate form is zero.
"""

from __future__ import annotations

import random

import numpy as np
from numba import njit

from .groebner import normal_form
from .idealops import Ideal, hilbert_numerator
from .polyring import divides

FALLBACK = -1
ZERO_DIVISOR = -2
ZERO_FORM = -3


# ---------------------------------------------------------------------------
# kernels


@njit(cache=True, nogil=True)
def _inv(a, p):
    r = 1
    b = a % p
    e = p - 2
    while e:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


@njit(cache=True, nogil=True)
def _left_null(A, p):
    """Rows N with N·A = 0 (a basis of the left kernel) and the positions
    where N is the identity.  Also returns rank(A).

    Entries are reduced lazily: a row only receives multiples of a fully
    reduced pivot row, so magnitudes stay below rank·p² and the modulus is
    taken when a column is inspected.
    """
    r = A.shape[0]
    c = A.shape[1]
    M = A.T.copy()
    piv = np.empty(c, np.int64)
    rank = 0
    for col in range(r):
        if rank == c:
            break
        pr = -1
        for i in range(rank, c):
            v = M[i, col] % p
            M[i, col] = v
            if v != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != rank:
            for k in range(r):
                t = M[pr, k]
                M[pr, k] = M[rank, k]
                M[rank, k] = t
        s = _inv(M[rank, col], p)
        for k in range(r):
            M[rank, k] = M[rank, k] % p * s % p
        for i in range(c):
            if i != rank:
                f = M[i, col] % p
                if f != 0:
                    for k in range(col + 1, r):
                        M[i, k] -= f * M[rank, k]
                M[i, col] = 0
        piv[rank] = col
        rank += 1
    is_piv = np.zeros(r, np.bool_)
    for i in range(rank):
        is_piv[piv[i]] = True
    nfree = r - rank
    free = np.empty(nfree, np.int64)
    k = 0
    for col in range(r):
        if not is_piv[col]:
            free[k] = col
            k += 1
    N = np.zeros((nfree, r), np.int64)
    for k in range(nfree):
        f = free[k]
        N[k, f] = 1
        for i in range(rank):
            N[k, piv[i]] = (-M[i, f]) % p
    return N, free, rank


@njit(cache=True, nogil=True)
def _matmul(A, B, p):
    n = A.shape[0]
    m = B.shape[1]
    kk = A.shape[1]
    C = np.zeros((n, m), np.int64)
    for i in range(n):
        for k in range(kk):
            a = A[i, k]
            if a != 0:
                for j in range(m):
                    C[i, j] += a * B[k, j]
        for j in range(m):
            C[i, j] %= p
    return C


@njit(cache=True, nogil=True)
def _matvec(A, v, p):
    n = A.shape[0]
    out = np.zeros(n, np.int64)
    for i in range(n):
        s = 0
        for k in range(A.shape[1]):
            s += A[i, k] * v[k]
        out[i] = s % p
    return out


@njit(cache=True, nogil=True)
def _inverse(A, p):
    n = A.shape[0]
    M = np.zeros((n, 2 * n), np.int64)
    for i in range(n):
        for j in range(n):
            M[i, j] = A[i, j]
        M[i, n + i] = 1
    for col in range(n):
        pr = -1
        for i in range(col, n):
            if M[i, col] != 0:
                pr = i
                break
        if pr < 0:
            return M[:, :n].copy(), False
        if pr != col:
            for k in range(2 * n):
                t = M[pr, k]
                M[pr, k] = M[col, k]
                M[col, k] = t
        s = _inv(M[col, col], p)
        for k in range(2 * n):
            M[col, k] = M[col, k] * s % p
        for i in range(n):
            if i != col:
                f = M[i, col]
                if f != 0:
                    for k in range(2 * n):
                        M[i, k] = (M[i, k] - f * M[col, k]) % p
    return M[:, n:].copy(), True


@njit(cache=True, nogil=True)
def _matpow(A, e, p):
    n = A.shape[0]
    R = np.zeros((n, n), np.int64)
    for i in range(n):
        R[i, i] = 1
    B = A.copy()
    while e:
        if e & 1:
            R = _matmul(R, B, p)
        e >>= 1
        if e:
            B = _matmul(B, B, p)
    return R


@njit(cache=True, nogil=True)
def _reduce_against(v, rows, pivs, count, p):
    for r in range(count):
        c = v[pivs[r]]
        if c != 0:
            for k in range(v.shape[0]):
                v[k] = (v[k] - c * rows[r, k]) % p
    for k in range(v.shape[0]):
        if v[k] != 0:
            return k
    return -1


@njit(cache=True, nogil=True)
def _insert(v, pivot, rows, pivs, count, p):
    s = _inv(v[pivot], p)
    for k in range(v.shape[0]):
        rows[count, k] = v[k] * s % p
    pivs[count] = pivot
    return count + 1


@njit(cache=True, nogil=True)
def _poly_rem(a, da, b, db, p):
    # a := a mod b in place (coefficient arrays, constant term first); returns new degree
    inv = _inv(b[db], p)
    while da >= db and da >= 0:
        c = a[da] * inv % p
        if c != 0:
            sh = da - db
            for i in range(db + 1):
                a[sh + i] = (a[sh + i] - c * b[i]) % p
        da -= 1
        while da >= 0 and a[da] == 0:
            da -= 1
    return da


@njit(cache=True, nogil=True)
def _separable(f, df_deg, p):
    """gcd(f, f') == 1 for a monic f of degree df_deg."""
    n = df_deg
    d = np.zeros(n + 1, np.int64)
    for i in range(1, n + 1):
        d[i - 1] = i % p * f[i] % p
    dd = n - 1
    while dd >= 0 and d[dd] == 0:
        dd -= 1
    if dd < 0:
        return False
    a = f.copy()
    da = n
    b = d
    db = dd
    while db >= 0:
        da = _poly_rem(a, da, b, db, p)
        a, b = b, a
        da, db = db, da
    return da == 0


@njit(cache=True, nogil=True)
def _cyclic_separable(L, w, p):
    """True when w is cyclic for L and the minimal polynomial is separable."""
    n = L.shape[0]
    rows = np.zeros((n, n), np.int64)
    pivs = np.zeros(n, np.int64)
    # track combinations to express the (n)-th Krylov vector
    combo = np.zeros((n, n + 1), np.int64)
    v = w.copy()
    count = 0
    for step in range(n + 1):
        vv = v.copy()
        cmb = np.zeros(n + 1, np.int64)
        cmb[step] = 1
        for r in range(count):
            c = vv[pivs[r]]
            if c != 0:
                for k in range(n):
                    vv[k] = (vv[k] - c * rows[r, k]) % p
                for k in range(n + 1):
                    cmb[k] = (cmb[k] - c * combo[r, k]) % p
        piv = -1
        for k in range(n):
            if vv[k] != 0:
                piv = k
                break
        if piv < 0:
            if step < n:
                return False
            # cmb is the minimal polynomial (coefficients of L^k w summing to 0)
            lead = cmb[n]
            s = _inv(lead, p)
            f = np.zeros(n + 1, np.int64)
            for k in range(n + 1):
                f[k] = cmb[k] * s % p
            return _separable(f, n, p)
        if step == n:
            return False
        s = _inv(vv[piv], p)
        for k in range(n):
            rows[count, k] = vv[k] * s % p
        for k in range(n + 1):
            combo[count, k] = cmb[k] * s % p
        pivs[count] = piv
        count += 1
        v = _matvec(L, v, p)
    return False


@njit(cache=True, nogil=True)
def _evaluate(h, Z3, Z4, lam, lampow, ells, p, pe, delta):
    n = h.shape[0]
    nz = False
    for i in range(n):
        if h[i] != 0:
            nz = True
    if not nz:
        return ZERO_FORM
    Rm = Z3.shape[1]
    Rm1 = Z3.shape[2]
    Rn = Z4.shape[1]
    A1 = np.zeros((Rm, Rm1), np.int64)
    for i in range(n):
        c = h[i]
        if c != 0:
            for a in range(Rm):
                for b in range(Rm1):
                    A1[a, b] += c * Z3[i, a, b]
    for a in range(Rm):
        for b in range(Rm1):
            A1[a, b] %= p
    N1, free1, rank1 = _left_null(A1, p)
    if rank1 < Rm1:
        return ZERO_DIVISOR
    if free1.shape[0] != delta:
        return FALLBACK
    A2 = np.zeros((Rn, Rm), np.int64)
    for i in range(n):
        c = h[i]
        if c != 0:
            for a in range(Rn):
                for b in range(Rm):
                    A2[a, b] += c * Z4[i, a, b]
    for a in range(Rn):
        for b in range(Rm):
            A2[a, b] %= p
    N2, free2, rank2 = _left_null(A2, p)
    if rank2 < Rm or free2.shape[0] != delta:
        return FALLBACK
    # Y_j = N2 · Z4[j][:, free1]
    Y = np.zeros((n, delta, delta), np.int64)
    for j in range(n):
        for a in range(delta):
            for k in range(Rn):
                c = N2[a, k]
                if c != 0:
                    for b in range(delta):
                        Y[j, a, b] += c * Z4[j, k, free1[b]]
            for b in range(delta):
                Y[j, a, b] %= p
    chosen = -1
    Yinv = np.zeros((delta, delta), np.int64)
    for li in range(lam.shape[0]):
        Yl = np.zeros((delta, delta), np.int64)
        for j in range(n):
            c = lam[li, j]
            if c != 0:
                for a in range(delta):
                    for b in range(delta):
                        Yl[a, b] += c * Y[j, a, b]
        for a in range(delta):
            for b in range(delta):
                Yl[a, b] %= p
        Yinv, ok = _inverse(Yl, p)
        if ok:
            chosen = li
            break
    if chosen < 0:
        return FALLBACK
    L = np.zeros((n, delta, delta), np.int64)
    for j in range(n):
        L[j] = _matmul(Yinv, Y[j], p)
    w = _matvec(N1, lampow[chosen], p)
    # cheap certificate of reducedness
    for ei in range(ells.shape[0]):
        Le = np.zeros((delta, delta), np.int64)
        for j in range(n):
            c = ells[ei, j]
            if c != 0:
                for a in range(delta):
                    for b in range(delta):
                        Le[a, b] += c * L[j, a, b]
        for a in range(delta):
            for b in range(delta):
                Le[a, b] %= p
        if _cyclic_separable(Le, w, p):
            return delta
    # full Frobenius rank
    P = np.zeros((n, delta, delta), np.int64)
    for j in range(n):
        P[j] = _matpow(L[j], pe, p)
    V = np.zeros((delta, delta), np.int64)
    U = np.zeros((delta, delta), np.int64)
    rows = np.zeros((delta, delta), np.int64)
    pivs = np.zeros(delta, np.int64)
    count = 0
    v0 = w.copy()
    piv = _reduce_against(v0, rows, pivs, 0, p)
    if piv < 0:
        return FALLBACK
    count = _insert(v0, piv, rows, pivs, 0, p)
    V[0] = w
    U[0] = w
    nb = 1
    head = 0
    while head < nb and nb < delta:
        for j in range(n):
            nv = _matvec(L[j], V[head], p)
            tmp = nv.copy()
            piv = _reduce_against(tmp, rows, pivs, count, p)
            if piv >= 0:
                count = _insert(tmp, piv, rows, pivs, count, p)
                V[nb] = nv
                U[nb] = _matvec(P[j], U[head], p)
                nb += 1
                if nb == delta:
                    break
        head += 1
    if nb < delta:
        return FALLBACK
    rows2 = np.zeros((delta, delta), np.int64)
    pivs2 = np.zeros(delta, np.int64)
    rk = 0
    for i in range(delta):
        tmp = U[i].copy()
        piv = _reduce_against(tmp, rows2, pivs2, rk, p)
        if piv >= 0:
            rk = _insert(tmp, piv, rows2, pivs2, rk, p)
    return rk


@njit(cache=True, nogil=True)
def _decode(idx, q, k, projective, out):
    if projective:
        s = 0
        size = 1
        for _ in range(k - 1):
            size *= q
        while idx >= size:
            idx -= size
            s += 1
            size //= q
        for i in range(s):
            out[i] = 0
        out[s] = 1
        for i in range(k - 1, s, -1):
            out[i] = idx % q
            idx //= q
    else:
        for i in range(k - 1, -1, -1):
            out[i] = idx % q
            idx //= q


@njit(cache=True, nogil=True)
def _sweep(start, stop, q, projective, free_forms, fixed, Z3, Z4, lam, lampow, ells, p, pe, delta, out):
    k = free_forms.shape[0]
    n = free_forms.shape[1]
    a = np.zeros(k, np.int64)
    h = np.zeros(n, np.int64)
    for idx in range(start, stop):
        _decode(idx, q, k, projective, a)
        for i in range(n):
            s = fixed[i]
            for t in range(k):
                s += a[t] * free_forms[t, i]
            h[i] = s % p
        out[idx - start] = _evaluate(h, Z3, Z4, lam, lampow, ells, p, pe, delta)


# ---------------------------------------------------------------------------
# Python-side setup


def decode_index(idx: int, q: int, k: int, projective: bool) -> list[int]:
    """Digits of candidate ``idx`` (same order as the compiled sweep)."""
    out = np.zeros(k, np.int64)
    _decode(idx, q, k, projective, out)
    return [int(x) for x in out]


def _deterministic_forms(n: int, count: int, p: int, seed: int) -> np.ndarray:
    out = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            out.append(tuple(1 if t in (i, j) else 0 for t in range(n)))
    rng = random.Random(seed)
    while len(out) < count:
        out.append(tuple(rng.randrange(p) for _ in range(n)))
    return np.array(out[:count], dtype=np.int64) % p


class FastSlice:
    """Precomputed multiplication tables of A = F_p[z]/I(S₀) in degrees
    m−1 → m → m+1.  Construction raises ``ValueError`` whenever the
    preconditions cannot be certified; callers then use Gröbner bases."""

    def __init__(self, S0: Ideal, *, num_lambdas: int = 48, num_ells: int = 3):
        ring = S0.ring
        fld = ring.field
        if fld.size is None or fld.size != getattr(fld, "p", None):
            raise ValueError("fast path needs a prime field")
        if not S0.is_homogeneous():
            raise ValueError("fast path needs a homogeneous ideal")
        p = fld.p
        n = ring.nvars
        num = hilbert_numerator(S0)
        h = _strip_factor(num, n - 2)
        if h is None or sum(h) == 0 or _divisible_by_one_minus_t(h):
            raise ValueError("fast path needs a curve")
        self.h_vector = h
        self.delta = delta = sum(h)
        self.m = m = max(len(h) - 1, 1)
        gb = S0.basis()
        lms = [g.lm() for g in gb]

        def std(d):
            return [e for e in ring.monomials_of_degree(d) if not any(divides(a, e) for a in lms)]

        s_prev, s_cur, s_next = std(m - 1), std(m), std(m + 1)
        if len(s_cur) - len(s_prev) != delta or len(s_next) - len(s_cur) != delta:
            raise ValueError("Hilbert function has not settled at the chosen degree")
        self._check_cohen_macaulay(S0, num, p)
        self.p = p
        self.n = n
        idx_cur = {e: i for i, e in enumerate(s_cur)}
        idx_next = {e: i for i, e in enumerate(s_next)}

        def table(src, dst_index, rows):
            T = np.zeros((n, rows, len(src)), dtype=np.int64)
            for i in range(n):
                for b, e in enumerate(src):
                    mono = e[:i] + (e[i] + 1,) + e[i + 1 :]
                    nf = normal_form(ring.monomial(mono), gb)
                    for ee, c in nf.terms.items():
                        T[i, dst_index[ee], b] = c
            return T

        self.Z3 = table(s_prev, idx_cur, len(s_cur))
        self.Z4 = table(s_cur, idx_next, len(s_next))
        self.lam = _deterministic_forms(n, num_lambdas, p, seed=20240601)
        lampow = np.zeros((len(self.lam), len(s_cur)), dtype=np.int64)
        for li, vec in enumerate(self.lam):
            lf = ring.linear_form([int(x) for x in vec])
            nf = normal_form(lf**m, gb)
            for e, c in nf.terms.items():
                lampow[li, idx_cur[e]] = c
        self.lampow = lampow
        rng = random.Random(7)
        self.ells = np.array(
            [[rng.randrange(p) for _ in range(n)] for _ in range(num_ells)], dtype=np.int64
        )
        pe = p
        while pe < delta:
            pe *= p
        self.pe = pe

    @staticmethod
    def _check_cohen_macaulay(S0: Ideal, num: list[int], p: int):
        """Depth 2 via a regular sequence of two linear forms: the Hilbert
        numerator must pick up exactly (1−T)²."""
        ring = S0.ring
        target = _poly_mul(num, [1, -2, 1])
        forms = _deterministic_forms(ring.nvars, 12, p, seed=99)
        for i in range(0, len(forms) - 1, 2):
            l1 = ring.linear_form([int(x) for x in forms[i]])
            l2 = ring.linear_form([int(x) for x in forms[i + 1]])
            got = hilbert_numerator(S0.with_generators([l1, l2]))
            if _trim(got) == _trim(target):
                return
        raise ValueError("could not certify the Cohen–Macaulay property")

    def evaluate(self, hvec) -> int:
        h = np.array([int(x) % self.p for x in hvec], dtype=np.int64)
        return int(_evaluate(h, self.Z3, self.Z4, self.lam, self.lampow, self.ells, self.p, self.pe, self.delta))

    def sweep(self, start: int, stop: int, q: int, projective: bool, free_forms, fixed) -> np.ndarray:
        out = np.zeros(stop - start, dtype=np.int64)
        _sweep(
            start,
            stop,
            q,
            projective,
            np.asarray(free_forms, dtype=np.int64),
            np.asarray(fixed, dtype=np.int64),
            self.Z3,
            self.Z4,
            self.lam,
            self.lampow,
            self.ells,
            self.p,
            self.pe,
            self.delta,
            out,
        )
        return out


def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _divisible_by_one_minus_t(a) -> bool:
    return sum(a) == 0


def _strip_factor(num: list[int], k: int):
    """num / (1−T)^k when exact, else None."""
    cur = list(num)
    for _ in range(k):
        if sum(cur) != 0:
            return None
        out, acc = [], 0
        for c in cur[:-1]:
            acc += c
            out.append(acc)
        cur = out or [0]
    return _trim(cur)
