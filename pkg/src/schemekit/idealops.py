"""Ideal-level operations: sums, intersections, quotients, saturation,
elimination, Hilbert data and radicals of zero-dimensional ideals."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .errors import NotZeroDimensionalError, RingMismatchError, SchemeKitError
from .fields import Field
from .groebner import GroebnerBasis, buchberger, normal_form
from .linalg import IncrementalSpan
from .polyring import GREVLEX, MonomialOrder, Polynomial, PolyRing, divides


class Ideal:
    """Generators in a fixed ring plus a per-order cache of reduced bases."""

    def __init__(self, ring: PolyRing, generators: Iterable[Polynomial] = ()):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ring.parse(g) if isinstance(g, str) else ring.constant(g)
            if g.ring != ring:
                raise RingMismatchError("incompatible rings")
            if g.terms:
                gens.append(g)
        self.ring = ring
        self.gens = gens
        self._gb: dict = {}
        self.degree_cap: int | None = None

    @classmethod
    def parse(cls, ring: PolyRing, lines: Iterable[str]) -> "Ideal":
        return cls(ring, [ring.parse(s) for s in lines])

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]})"

    # Gröbner data ------------------------------------------------------------

    def gb(self, order: MonomialOrder | None = None) -> GroebnerBasis:
        order = order or self.ring.order
        if order not in self._gb:
            if not self.gens:
                self._gb[order] = GroebnerBasis(self.ring.with_order(order), [], True)
            else:
                self._gb[order] = buchberger(self.gens, order, degree_cap=self.degree_cap)
        return self._gb[order]

    def basis(self) -> list[Polynomial]:
        return self.gb().polys

    def contains(self, f: Polynomial) -> bool:
        if f.ring != self.ring:
            raise RingMismatchError("incompatible rings")
        return not normal_form(f, self.basis()).terms

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if other.ring != self.ring:
            return False
        return self.contains_ideal(other) and other.contains_ideal(self)

    __hash__ = None  # mutable cache, equality is mathematical

    def is_unit(self) -> bool:
        return self.gb().is_unit_ideal()

    def is_zero(self) -> bool:
        return not self.gens

    def is_homogeneous(self) -> bool:
        # A reduced grevlex basis of a homogeneous ideal is homogeneous; the
        # generators themselves are what users declare, so check those.
        return all(g.is_homogeneous() for g in self.gens)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.basis())

    # algebra --------------------------------------------------------------

    def __add__(self, other: "Ideal") -> "Ideal":
        _same_ring(self, other)
        return self._derive(self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        _same_ring(self, other)
        return self._derive([f * g for f in self.gens for g in other.gens])

    def __pow__(self, k: int) -> "Ideal":
        out = self._derive([self.ring.one()])
        for _ in range(k):
            out = out * self
        return out

    def with_generators(self, extra: Iterable[Polynomial]) -> "Ideal":
        return self._derive(self.gens + list(extra))

    def _derive(self, gens) -> "Ideal":
        out = Ideal(self.ring, gens)
        out.degree_cap = self.degree_cap
        return out

    def minimal_generators(self) -> list[Polynomial]:
        """The reduced basis, as a canonical generator list."""
        return list(self.basis())


def _same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise RingMismatchError("incompatible rings")


def irrelevant_ideal(ring: PolyRing) -> Ideal:
    return Ideal(ring, ring.gens())


def _fresh_name(ring: PolyRing, base: str) -> str:
    name = base
    while name in ring.names or name == "s":
        name += "_"
    return name


def _embed(f: Polynomial, target: PolyRing, shift: int) -> Polynomial:
    pad = (0,) * shift
    return Polynomial(target, {pad + e: c for e, c in f.terms.items()})


def _project(f: Polynomial, target: PolyRing, k: int) -> Polynomial:
    return Polynomial(target, {e[k:]: c for e, c in f.terms.items()})


# ---------------------------------------------------------------------------
# intersection, quotient, saturation, elimination


def eliminate(I: Ideal, k: int) -> Ideal:
    """I ∩ k[x_k, ..., x_{n-1}], returned as an ideal of that subring."""
    ring = I.ring
    if not 0 <= k < ring.nvars:
        raise ValueError("k must satisfy 0 <= k < number of variables")
    if k == 0:
        return I
    gb = I.gb(MonomialOrder("block", k))
    sub = PolyRing(ring.field, ring.names[k:], _suborder(ring.order, k))
    kept = [_project(g, sub, k) for g in gb if not any(any(e[:k]) for e in g.terms)]
    out = Ideal(sub, kept)
    out.degree_cap = I.degree_cap
    return out


def _suborder(order: MonomialOrder, k: int) -> MonomialOrder:
    if order.kind == "block":
        return GREVLEX if order.k <= k else MonomialOrder("block", order.k - k)
    return order


def _with_aux(ring: PolyRing, count: int = 1, base: str = "t") -> PolyRing:
    names = []
    probe = ring
    for i in range(count):
        n = _fresh_name(probe, f"{base}{i}" if count > 1 else base)
        names.append(n)
        probe = PolyRing(ring.field, names + list(ring.names))
    return PolyRing(ring.field, names + list(ring.names), MonomialOrder("block", count))


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via t·I + (1−t)·J with t eliminated."""
    _same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return I._derive([])
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    big = _with_aux(I.ring)
    t = big.gen(0)
    gens = [t * _embed(f, big, 1) for f in I.gens]
    gens += [(big.one() - t) * _embed(g, big, 1) for g in J.gens]
    aux = Ideal(big, gens)
    aux.degree_cap = I.degree_cap
    gb = aux.gb()
    kept = [_project(g, I.ring, 1) for g in gb if not any(e[0] for e in g.terms)]
    return I._derive(kept)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g, which must be exact."""
    ring = f.ring
    fld = ring.field
    mg, cg = g.lead()
    inv = fld.inv(cg)
    q = {}
    r = f
    while r.terms:
        m, c = r.lead()
        if not divides(mg, m):
            raise SchemeKitError("division is not exact")
        e = tuple(a - b for a, b in zip(m, mg))
        qc = fld.mul(c, inv)
        q[e] = qc
        r = r - g.mul_term(e, qc)
    return Polynomial(ring, q)


def quotient(I: Ideal, J: Ideal) -> Ideal:
    """I : J, as the intersection over generators g of J of (I ∩ (g)) / g."""
    _same_ring(I, J)
    if J.is_zero():
        raise SchemeKitError("quotient by zero ideal")
    result = None
    for g in J.basis():
        part = intersect(I, I._derive([g]))
        part = I._derive([exact_divide(h, g) for h in part.basis()])
        result = part if result is None else intersect(result, part)
    return result


def _saturate_by_variable(I: Ideal, var: int) -> Ideal:
    """I : x_var^∞ for homogeneous I: in grevlex with x_var last, dividing
    every basis element by its largest power of x_var gives a basis of the
    saturation."""
    ring = I.ring
    n = ring.nvars
    perm = [i for i in range(n) if i != var] + [var]
    moved = PolyRing(ring.field, [ring.names[i] for i in perm], GREVLEX)

    def fwd(f):
        return Polynomial(moved, {tuple(e[i] for i in perm): c for e, c in f.terms.items()})

    def back(f):
        out = {}
        for e, c in f.terms.items():
            ne = [0] * n
            for pos, i in enumerate(perm):
                ne[i] = e[pos]
            out[tuple(ne)] = c
        return Polynomial(ring, out)

    aux = Ideal(moved, [fwd(f) for f in I.gens])
    aux.degree_cap = I.degree_cap
    gens = []
    for h in aux.gb():
        k = min(e[-1] for e in h.terms)
        gens.append(back(Polynomial(moved, {e[:-1] + (e[-1] - k,): c for e, c in h.terms.items()})))
    return I._derive(gens)


def saturate_by_element(I: Ideal, g: Polynomial) -> Ideal:
    """I : g^∞ through I + (1 − t·g) with t eliminated (or the grevlex
    shortcut when I is homogeneous and g a variable)."""
    if len(g.terms) == 1 and I.is_homogeneous():
        (e,) = g.terms
        if sum(e) == 1:
            return _saturate_by_variable(I, e.index(1))
    big = _with_aux(I.ring)
    t = big.gen(0)
    aux = Ideal(big, [_embed(f, big, 1) for f in I.gens] + [big.one() - t * _embed(g, big, 1)])
    aux.degree_cap = I.degree_cap
    kept = [_project(h, I.ring, 1) for h in aux.gb() if not any(e[0] for e in h.terms)]
    return I._derive(kept)


def saturate(I: Ideal, J: Ideal, *, method: str = "elements") -> Ideal:
    """I : J^∞.

    ``method="iterate"`` repeats :func:`quotient` until the ideal stops
    growing.  The default computes the same ideal as the intersection of
    I : g^∞ over the generators g of J, which needs far fewer bases.
    """
    _same_ring(I, J)
    if J.is_zero():
        raise SchemeKitError("quotient by zero ideal")
    if J.is_unit():
        return I
    if method == "iterate":
        cur = I
        while True:
            nxt = quotient(cur, J)
            if cur.contains_ideal(nxt):
                return cur
            cur = nxt
    if method != "elements":
        raise ValueError(f"unknown saturation method {method!r}")
    result = None
    for g in J.basis():
        part = saturate_by_element(I, g)
        if I.contains_ideal(part):
            # I ⊆ I : J^∞ ⊆ I : g^∞ = I
            return I
        if part.is_unit():
            continue
        result = part if result is None else intersect(result, part)
    return result if result is not None else I._derive([I.ring.one()])


# ---------------------------------------------------------------------------
# Hilbert series of monomial ideals


def _minimalize(monos: Iterable[tuple]) -> tuple:
    ms = sorted(set(monos), key=sum)
    out: list = []
    for m in ms:
        if not any(divides(a, m) for a in out):
            out.append(m)
    return tuple(sorted(out))


def _poly_add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


@lru_cache(maxsize=None)
def _numerator(monos: tuple) -> tuple:
    """K-polynomial numerator N(T) with HS(R/M) = N(T) / (1−T)^n."""
    if not monos:
        return (1,)
    if any(sum(m) == 0 for m in monos):
        return (0,)
    # product of pure powers in distinct variables
    support = [tuple(i for i, x in enumerate(m) if x) for m in monos]
    if all(len(s) == 1 for s in support) and len({s[0] for s in support}) == len(support):
        out = [1]
        for m in monos:
            a = sum(m)
            out = _poly_add(out, [0] * a + [-x for x in out])
        return tuple(out)
    # pivot on the variable occurring in the most non-pure generators
    counts: dict = {}
    for m, s in zip(monos, support):
        if len(s) > 1:
            for i in s:
                counts[i] = counts.get(i, 0) + 1
    var = max(sorted(counts), key=lambda i: counts[i])
    n = len(monos[0])
    x = tuple(1 if i == var else 0 for i in range(n))
    with_x = _minimalize(list(monos) + [x])
    colon = _minimalize(tuple(max(a - b, 0) for a, b in zip(m, x)) for m in monos)
    a = list(_numerator(with_x))
    b = [0] + list(_numerator(colon))
    return tuple(_poly_add(a, b))


def hilbert_numerator(I: Ideal) -> list[int]:
    lms = [g.lm() for g in I.gb(GREVLEX)]
    num = list(_numerator(_minimalize(lms)))
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return num


def _divide_one_minus_t(num: list[int]):
    """Return num / (1 − T) if exact, else None."""
    if sum(num) != 0:
        return None
    out = []
    acc = 0
    for c in num[:-1]:
        acc += c
        out.append(acc)
    return out or [0]


def hilbert_data(I: Ideal) -> tuple[int, int]:
    """(projective dimension, degree) of the scheme cut by a homogeneous ideal.

    The empty scheme (including the unit ideal) reports (−1, 0).
    """
    if not I.is_homogeneous():
        raise SchemeKitError("hilbert_data needs a homogeneous ideal")
    n = I.ring.nvars
    num = hilbert_numerator(I)
    if not any(num):
        return -1, 0
    k = 0
    while True:
        nxt = _divide_one_minus_t(num)
        if nxt is None:
            break
        num = nxt
        k += 1
    affine_dim = n - k
    if affine_dim <= 0:
        return -1, 0
    return affine_dim - 1, sum(num)


def hilbert_function(I: Ideal, d: int) -> int:
    """dim_k (R/I)_d, counted from the leading-monomial staircase."""
    lms = [g.lm() for g in I.gb(GREVLEX)]
    return sum(1 for m in I.ring.monomials_of_degree(d) if not any(divides(a, m) for a in lms))


# ---------------------------------------------------------------------------
# zero-dimensional ideals


def is_zero_dimensional(I: Ideal) -> bool:
    """Finitely many points over the algebraic closure (affine sense)."""
    if I.is_unit():
        return True
    lms = [g.lm() for g in I.gb(GREVLEX)]
    n = I.ring.nvars
    for i in range(n):
        if not any(m[i] and sum(m) == m[i] for m in lms):
            return False
    return True


def standard_monomials(I: Ideal) -> list[tuple]:
    """Monomials outside the leading ideal (finite for zero-dimensional I)."""
    if not is_zero_dimensional(I):
        raise NotZeroDimensionalError("radical requires a zero-dimensional ideal; slice first")
    if I.is_unit():
        return []
    lms = [g.lm() for g in I.gb(GREVLEX)]
    n = I.ring.nvars
    out = []
    stack = [(0,) * n]
    seen = set(stack)
    while stack:
        m = stack.pop()
        if any(divides(a, m) for a in lms):
            continue
        out.append(m)
        for i in range(n):
            e = m[:i] + (m[i] + 1,) + m[i + 1 :]
            if e not in seen:
                seen.add(e)
                stack.append(e)
    out.sort(key=I.ring._key)
    return out


def affine_length(I: Ideal) -> int:
    """Degree counted with multiplicity: dim_k of k[x]/I."""
    return len(standard_monomials(I))


# univariate helpers: coefficient lists, constant term first


def _u_trim(a: list, f: Field) -> list:
    while a and f.is_zero(a[-1]):
        a = a[:-1]
    return a


def _u_divmod(a: list, b: list, f: Field):
    a = list(a)
    b = _u_trim(b, f)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    inv = f.inv(b[-1])
    q = [f.zero] * max(len(a) - len(b) + 1, 1)
    while len(_u_trim(a, f)) >= len(b):
        a = _u_trim(a, f)
        shift = len(a) - len(b)
        c = f.mul(a[-1], inv)
        q[shift] = c
        for i, x in enumerate(b):
            a[i + shift] = f.sub(a[i + shift], f.mul(c, x))
        a = _u_trim(a, f)
    return _u_trim(q, f), _u_trim(a, f)


def _u_monic(a: list, f: Field) -> list:
    a = _u_trim(a, f)
    if not a:
        return a
    inv = f.inv(a[-1])
    return [f.mul(x, inv) for x in a]


def _u_gcd(a: list, b: list, f: Field) -> list:
    a, b = _u_trim(a, f), _u_trim(b, f)
    while b:
        a, b = b, _u_divmod(a, b, f)[1]
    return _u_monic(a, f)


def _u_mul(a: list, b: list, f: Field) -> list:
    if not a or not b:
        return []
    out = [f.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = f.add(out[i + j], f.mul(x, y))
    return _u_trim(out, f)


def _u_deriv(a: list, f: Field) -> list:
    return _u_trim([f.mul(f.from_int(i), a[i]) for i in range(1, len(a))], f)


def squarefree_part(a: list, f: Field) -> list:
    """Monic product of the distinct irreducible factors of a univariate
    polynomial (coefficients from the constant term up)."""
    a = _u_monic(a, f)
    if len(a) <= 2:
        return a
    da = _u_deriv(a, f)
    if not da:
        # a(x) = b(x^p): over a perfect field a = (b^(1/p))(x)^p
        p = f.characteristic
        b = [f.pth_root(a[i]) for i in range(0, len(a), p)]
        return squarefree_part(b, f)
    g = _u_gcd(a, da, f)
    if len(g) == 1:
        return a
    head = _u_divmod(a, g, f)[0]
    tail = squarefree_part(g, f)
    common = _u_gcd(head, tail, f)
    return _u_monic(_u_divmod(_u_mul(head, tail, f), common, f)[0], f)


def minimal_polynomial(I: Ideal, var: int) -> list:
    """Monic generator of I ∩ k[x_var] for a zero-dimensional I, found by
    linear dependence among normal forms of 1, x, x^2, ..."""
    stdm = standard_monomials(I)
    index = {m: i for i, m in enumerate(stdm)}
    f = I.ring.field
    span = IncrementalSpan(f, len(stdm))
    x = I.ring.gen(var)
    power = I.ring.one()
    basis = I.basis()
    for k in range(len(stdm) + 1):
        nf = normal_form(power, basis)
        vec = [f.zero] * len(stdm)
        for e, c in nf.terms.items():
            vec[index[e]] = c
        dep = span.add(vec)
        if dep is not None:
            coeffs = [f.neg(dep.get(i, f.zero)) for i in range(k)] + [f.one]
            return coeffs
        power = power * x
    raise AssertionError("dependency must appear within the staircase size")


def _univariate_to_poly(coeffs: list, ring: PolyRing, var: int) -> Polynomial:
    terms = {}
    for k, c in enumerate(coeffs):
        if not ring.field.is_zero(c):
            e = [0] * ring.nvars
            e[var] = k
            terms[tuple(e)] = c
    return Polynomial(ring, terms)


def zero_dim_radical(I: Ideal) -> Ideal:
    """Radical of a zero-dimensional ideal (Seidenberg's construction)."""
    if not is_zero_dimensional(I):
        raise NotZeroDimensionalError("radical requires a zero-dimensional ideal; slice first")
    if I.is_unit():
        return I
    extra = []
    for i in range(I.ring.nvars):
        mp = minimal_polynomial(I, i)
        sf = squarefree_part(mp, I.ring.field)
        if len(sf) < len(mp):
            extra.append(_univariate_to_poly(sf, I.ring, i))
    if not extra:
        return I
    return I.with_generators(extra)


def _chart(I: Ideal, i: int) -> Ideal:
    """Affine piece where x_0 = ... = x_{i-1} = 0 and x_i = 1."""
    ring = I.ring
    sub = PolyRing(ring.field, ring.names[i + 1 :], GREVLEX)
    images = [sub.zero()] * i + [sub.one()] + sub.gens()
    out = Ideal(sub, [g.substitute(images) for g in I.gens])
    out.degree_cap = I.degree_cap
    return out


def projective_charts(I: Ideal) -> list[Ideal]:
    """Strata of P^{n-1} by first nonzero coordinate; disjoint, so point
    counts over the charts add up without double counting."""
    return [_chart(I, i) for i in range(I.ring.nvars)]


def reduced_degree(I: Ideal, *, projective: bool = False) -> int:
    """Number of distinct points of V(I) over the algebraic closure.

    With ``projective=True`` the (homogeneous) ideal is read as a subscheme
    of P^{n-1} and each stratum is handled in its affine chart.
    """
    if not projective:
        return affine_length(zero_dim_radical(I))
    if not I.is_homogeneous():
        raise SchemeKitError("projective reduced degree needs a homogeneous ideal")
    return sum(affine_length(zero_dim_radical(J)) for J in projective_charts(I))

