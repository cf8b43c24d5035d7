"""The Veronese surface v₂(P²) ⊂ P⁵ and a census curve on it.

Coordinates on P⁵ are z_ij (i ≤ j) with z_ij ↦ x_i·x_j pulling back to
the plane.  A hyperplane Σ c_ij z_ij = 0 therefore corresponds to the
plane conic Σ c_ij x_i x_j, and the hyperplanes dual to rank-1 quadrics
(squares of linear forms) are exactly those cutting v₂ of a double line.

The census curve.  Over F_q take a degree-7 irreducible g with root α in
F_{q^7} and β = h(α).  The seven conjugate lines ℓ_i = x + α_i y + β_i z
multiply to a plane septic D defined over F_q, and S₀ = v₂(D).  If

* no three of the dual points (1 : α_i : β_i) are collinear,
* the seven dual points do not lie on a conic, and
* for s = 1, 2, 3 the seven vertices ℓ_i ∩ ℓ_{i+s} do not lie on a conic,

then for every F_q-conic Q the section S₀ ∩ V(Q) has exactly 7 geometric
points when Q = L² and at least 13 otherwise: Frobenius permutes the
lines cyclically, so all lines meet Q the same way, no conic passes
through a whole vertex orbit, and a conic tangent to all seven lines
would put the dual points on the dual conic (or, for a line pair, all
seven lines through one point).  Threshold 7 thus isolates the q²+q+1
double lines exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fields import GaloisField, PrimeField, QQ
from .idealops import Ideal, _u_gcd, _u_trim
from .linalg import rank
from .polyring import Polynomial, PolyRing

PLANE_NAMES = ("x", "y", "z")
VERONESE_NAMES = ("z00", "z01", "z02", "z11", "z12", "z22")
PAIRS = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]
PAIR_INDEX = {pq: i for i, pq in enumerate(PAIRS)}


def plane_ring(field=QQ) -> PolyRing:
    return PolyRing(field, PLANE_NAMES)


def veronese_ring(field=QQ) -> PolyRing:
    return PolyRing(field, VERONESE_NAMES)


def veronese_ideal(ring: PolyRing) -> Ideal:
    """2×2 minors of the symmetric matrix (z_ij)."""
    z = {pq: ring.gen(i) for pq, i in PAIR_INDEX.items()}

    def Z(i, j):
        return z[(min(i, j), max(i, j))]

    minors = []
    for r in itertools.combinations(range(3), 2):
        for c in itertools.combinations(range(3), 2):
            if r <= c:
                f = Z(r[0], c[0]) * Z(r[1], c[1]) - Z(r[0], c[1]) * Z(r[1], c[0])
                if f.terms and not any(f == g or f == -g for g in minors):
                    minors.append(f)
    return Ideal(ring, minors)


def pullback(f: Polynomial, plane: PolyRing) -> Polynomial:
    """Substitute z_ij = x_i x_j."""
    x = plane.gens()
    return f.substitute([x[i] * x[j] for i, j in PAIRS])


def pushforward(F: Polynomial, ring: PolyRing) -> Polynomial:
    """A z-form whose pullback is the even-degree plane form F."""
    out = ring.zero()
    for e, c in F.terms.items():
        if sum(e) % 2:
            raise ValueError("only even-degree plane forms descend to the Veronese")
        seq = [i for i, k in enumerate(e) for _ in range(k)]
        mono = [0] * 6
        for a, b in zip(seq[::2], seq[1::2]):
            mono[PAIR_INDEX[(a, b)]] += 1
        out = out + ring.monomial(mono, c)
    return out


def hyperplane_of_conic(coeffs: dict, ring: PolyRing) -> Polynomial:
    """Hyperplane for the plane conic given as {(i, j): coefficient}."""
    return ring.linear_form([coeffs.get(pq, 0) for pq in PAIRS])


def square_hyperplanes(q: int) -> set[tuple[int, ...]]:
    """Brute force: normalized coefficient vectors of all hyperplanes dual to
    squares of F_q-linear forms (first nonzero coordinate 1)."""
    out = set()
    for a in itertools.product(range(q), repeat=3):
        if not any(a):
            continue
        vec = []
        for i, j in PAIRS:
            vec.append(a[i] * a[i] % q if i == j else 2 * a[i] * a[j] % q)
        out.add(normalize(vec, q))
    return out


def normalize(vec, q: int) -> tuple[int, ...]:
    lead = next(c for c in vec if c % q)
    inv = pow(lead, -1, q)
    return tuple(c * inv % q for c in vec)


# ---------------------------------------------------------------------------
# census curve


def _irreducible_septic(q: int) -> tuple[int, ...]:
    """First monic degree-7 irreducible over F_q in a fixed enumeration."""
    Fq = PrimeField(q)
    for idx in range(1, q**7):
        low = [(idx // q**k) % q for k in range(7)]
        if low[0] == 0:
            continue
        modulus = tuple(low) + (1,)
        K = GaloisField(q, modulus)
        t = K.generator()
        # degree 7 is prime: irreducible iff no roots in F_q and t^(q^7) = t
        tq = K.pow(t, q)
        diff = list(K.sub(tq, t)) + [0]
        if len(_u_gcd(list(modulus), _u_trim(diff, Fq), Fq)) != 1:
            continue
        if K.pow(t, q**7) == t:
            return modulus
    raise AssertionError("no irreducible septic found")


def _det3(K, a, b, c):
    m, s, ad = K.mul, K.sub, K.add
    t1 = m(a[0], s(m(b[1], c[2]), m(b[2], c[1])))
    t2 = m(a[1], s(m(b[0], c[2]), m(b[2], c[0])))
    t3 = m(a[2], s(m(b[0], c[1]), m(b[1], c[0])))
    return ad(s(t1, t2), t3)


def _cross(K, a, b):
    m, s = K.mul, K.sub
    return (
        s(m(a[1], b[2]), m(a[2], b[1])),
        s(m(a[2], b[0]), m(a[0], b[2])),
        s(m(a[0], b[1]), m(a[1], b[0])),
    )


def _on_a_conic(K, pts) -> bool:
    rows = [[K.mul(P[i], P[j]) for i, j in PAIRS] for P in pts]
    return rank(rows, K) < 6


@dataclass
class CensusCurve:
    q: int
    modulus: tuple  # g, constant term first
    beta_poly: tuple  # h with β = h(α), constant term first
    septic: Polynomial  # D over F_q in the plane ring
    ideal: Ideal  # I(S₀) in the Veronese ring over F_q

    def certificate(self) -> dict:
        return check_census_conditions(self.q, self.modulus, self.beta_poly)


def check_census_conditions(q: int, modulus, beta_poly) -> dict:
    K = GaloisField(q, modulus)
    alpha = K.generator()
    beta = K.zero
    for c in reversed(beta_poly):
        beta = K.add(K.mul(beta, alpha), K.from_int(c))
    pts = []
    a, b = alpha, beta
    for _ in range(7):
        pts.append((K.one, a, b))
        a, b = K.frobenius(a), K.frobenius(b)
    distinct = len(set(pts)) == 7
    no_collinear = all(not K.is_zero(_det3(K, *tri)) for tri in itertools.combinations(pts, 3))
    duals_off_conic = not _on_a_conic(K, pts)
    orbits_off_conic = all(
        not _on_a_conic(K, [_cross(K, pts[i], pts[(i + s) % 7]) for i in range(7)]) for s in (1, 2, 3)
    )
    return {
        "distinct": distinct,
        "no_three_collinear": no_collinear,
        "dual_points_off_conics": duals_off_conic,
        "vertex_orbits_off_conics": orbits_off_conic,
    }


def census_curve(q: int) -> CensusCurve:
    modulus = _irreducible_septic(q)
    for hdeg in range(2, 7):
        for c in range(q**2):
            beta_poly = [c % q, (c // q) % q] + [0] * (hdeg - 2) + [1]
            if hdeg == 2 and beta_poly[1] == 0 and beta_poly[0] == 0:
                continue
            cert = check_census_conditions(q, modulus, beta_poly)
            if all(cert.values()):
                return _build_census(q, modulus, tuple(beta_poly))
    raise AssertionError(f"no admissible census curve over F_{q}")


def _build_census(q: int, modulus, beta_poly) -> CensusCurve:
    K = GaloisField(q, modulus)
    alpha = K.generator()
    beta = K.zero
    for c in reversed(beta_poly):
        beta = K.add(K.mul(beta, alpha), K.from_int(c))
    PK = plane_ring(K)
    D = PK.one()
    a, b = alpha, beta
    for _ in range(7):
        D = D * PK.linear_form([K.one, a, b])
        a, b = K.frobenius(a), K.frobenius(b)
    Fq = PrimeField(q)
    P = plane_ring(Fq)
    if not all(K.in_prime_field(c) for c in D.terms.values()):
        raise AssertionError("septic is not defined over the base field")
    D = P.from_dict({e: c[0] for e, c in D.terms.items()})
    R = veronese_ring(Fq)
    V = veronese_ideal(R)
    extra = [pushforward(D * v, R) for v in P.gens()]
    return CensusCurve(q, tuple(modulus), tuple(beta_poly), D, V.with_generators(extra))
