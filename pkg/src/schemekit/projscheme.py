"""Projective schemes and the predicates used as proof steps: hyperplane
sections, emptiness, the H = 2C certificate, linear systems of forms
through a scheme, sampling zero-dimensional subschemes and singular loci.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import SchemeKitError
from .fields import Field, RationalField, QuadraticField
from .groebner import normal_form
from .idealops import (
    Ideal,
    hilbert_data,
    intersect,
    irrelevant_ideal,
    projective_charts,
    quotient,
    saturate,
    zero_dim_radical,
)
from .linalg import kernel, rref, solve
from .polyring import GREVLEX, Polynomial, PolyRing

log = logging.getLogger(__name__)


class ProjScheme:
    """A subscheme of P^N given by a homogeneous ideal in N+1 variables."""

    def __init__(self, ideal: Ideal):
        if not ideal.is_homogeneous():
            raise SchemeKitError("projective schemes need homogeneous generators")
        self.ideal = ideal
        self._sat: Ideal | None = None
        self._hilb = None

    @classmethod
    def from_strings(cls, ring: PolyRing, gens: Sequence[str]) -> "ProjScheme":
        return cls(Ideal.parse(ring, gens))

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    @property
    def ambient_dim(self) -> int:
        return self.ring.nvars - 1

    def saturated(self) -> Ideal:
        """Ideal saturated by the irrelevant ideal (the canonical ideal of
        the scheme)."""
        if self._sat is None:
            self._sat = saturate(self.ideal, irrelevant_ideal(self.ring))
        return self._sat

    def hilbert(self) -> tuple[int, int]:
        if self._hilb is None:
            self._hilb = hilbert_data(self.ideal)
        return self._hilb

    @property
    def dimension(self) -> int:
        return self.hilbert()[0]

    @property
    def degree(self) -> int:
        return self.hilbert()[1]

    def contains_scheme(self, other: "ProjScheme") -> bool:
        """other ⊆ self as subschemes."""
        return other.saturated().contains_ideal(self.ideal)

    def __eq__(self, other):
        if not isinstance(other, ProjScheme):
            return NotImplemented
        return self.saturated() == other.saturated()

    __hash__ = None

    def intersection(self, other: "ProjScheme") -> "ProjScheme":
        return ProjScheme(self.ideal + other.ideal)

    def union(self, other: "ProjScheme") -> "ProjScheme":
        return ProjScheme(intersect(self.saturated(), other.saturated()))

    def reduced_degree(self) -> int:
        from .idealops import reduced_degree

        return reduced_degree(self.ideal, projective=True)

    def __repr__(self):
        return f"ProjScheme(P^{self.ambient_dim}, {[str(g) for g in self.ideal.gens]})"


@dataclass
class LinearSystem:
    """Degree-d forms, linearly independent, in reduced echelon form over the
    monomials of degree d (largest monomial first)."""

    ring: PolyRing
    degree: int
    basis: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, LinearSystem)
            and self.degree == other.degree
            and [f.terms for f in self.basis] == [f.terms for f in other.basis]
        )


# ---------------------------------------------------------------------------


def hyperplane_section(X: ProjScheme, h: Polynomial) -> ProjScheme:
    if not h.terms or h.total_degree() != 1 or not h.is_homogeneous():
        raise SchemeKitError("hyperplane must be a nonzero linear form")
    if X.saturated().contains(h):
        raise SchemeKitError("hyperplane contains the scheme")
    return ProjScheme(X.ideal.with_generators([h]))


def is_empty(X: ProjScheme) -> bool:
    """Empty iff the saturation by the irrelevant ideal is the unit ideal.

    The Hilbert polynomial gives an independent answer; disagreement would
    mean a bug, so it is raised rather than silently resolved.
    """
    by_saturation = X.saturated().is_unit()
    by_hilbert = X.hilbert()[0] == -1
    if by_saturation != by_hilbert:
        raise AssertionError("saturation and Hilbert data disagree on emptiness")
    return by_saturation


def divisor_double_check(H: ProjScheme, C: ProjScheme, ambient: ProjScheme) -> bool:
    """True iff H − C = C inside the ambient scheme, i.e. (I_H : I_C)
    agrees with I_C after adding the ambient ideal and saturating."""
    for S in (H, C):
        if not S.saturated().contains_ideal(ambient.ideal):
            raise SchemeKitError("not a subscheme")
    diff = quotient(H.saturated(), C.saturated()) + ambient.ideal
    lhs = ProjScheme(diff)
    rhs = ProjScheme(C.ideal + ambient.ideal)
    return lhs == rhs


def _coefficient_matrix(polys: Sequence[Polynomial], monos: Sequence[tuple], fld: Field):
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for f in polys:
        row = [fld.zero] * len(monos)
        for e, c in f.terms.items():
            row[index[e]] = c
        rows.append(row)
    return rows


def forms_through(X: ProjScheme, d: int) -> LinearSystem:
    """All degree-d forms vanishing on X (the degree-d part of the
    saturated ideal), as an echelon basis."""
    if d < 1:
        raise SchemeKitError("degree must be at least 1")
    ring = X.ring
    fld = ring.field
    monos = ring.monomials_of_degree(d)
    sat = X.saturated()
    if sat.is_unit():
        forms = [ring.monomial(m) for m in monos]
        return LinearSystem(ring, d, forms)
    basis = sat.basis()
    nfs = [normal_form(ring.monomial(m), basis) for m in monos]
    support = sorted({e for f in nfs for e in f.terms}, key=ring._key)
    # columns: degree-d monomials; rows: coefficients of each remainder monomial
    cols = _coefficient_matrix(nfs, support, fld)
    rows = [[cols[j][i] for j in range(len(monos))] for i in range(len(support))]
    ker = kernel(rows, fld, len(monos)) if rows else kernel([], fld, len(monos))
    red, _ = rref(ker, fld) if ker else ([], [])
    forms = [ring.from_dict({m: c for m, c in zip(monos, v)}) for v in red]
    return LinearSystem(ring, d, forms)


def member_of_system(f: Polynomial, L: LinearSystem) -> bool:
    if not f.terms:
        return True
    if not f.is_homogeneous() or f.total_degree() != L.degree:
        raise SchemeKitError(f"degree mismatch: expected a form of degree {L.degree}")
    if not L.basis:
        return False
    ring = L.ring
    fld = ring.field
    monos = ring.monomials_of_degree(L.degree)
    mat = _coefficient_matrix(L.basis, monos, fld)
    target = _coefficient_matrix([f], monos, fld)[0]
    # solve sum_i x_i basis_i = f; unknowns are the x_i
    rows = [[mat[i][j] for i in range(len(mat))] for j in range(len(monos))]
    return solve(rows, target, fld) is not None


# ---------------------------------------------------------------------------
# reduced structure of zero-dimensional projective schemes


def _homogenize(f: Polynomial, target: PolyRing, hvar: int, placement: Sequence[int]) -> Polynomial:
    """Homogenize an affine polynomial with respect to target variable hvar;
    affine variable k lands on target variable placement[k]."""
    d = f.total_degree()
    out = {}
    for e, c in f.terms.items():
        ne = [0] * target.nvars
        for k, x in enumerate(e):
            ne[placement[k]] = x
        ne[hvar] = d - sum(e)
        out[tuple(ne)] = c
    return Polynomial(target, out)


def projective_radical(X: ProjScheme) -> ProjScheme:
    """The reduced scheme of a zero-dimensional X: radicals of the strata
    by first nonzero coordinate, closed up and intersected."""
    ring = X.ring
    n = ring.nvars
    pieces = []
    for i, chart in enumerate(projective_charts(X.ideal)):
        rad = zero_dim_radical(chart)
        if rad.is_unit():
            continue
        placement = list(range(i + 1, n))
        gens = [ring.gen(j) for j in range(i)]
        gens += [_homogenize(g, ring, i, placement) for g in rad.gb(GREVLEX)]
        pieces.append(Ideal(ring, gens))
    if not pieces:
        return ProjScheme(Ideal(ring, [ring.one()]))
    acc = pieces[0]
    for P in pieces[1:]:
        acc = intersect(acc, P)
    return ProjScheme(acc)


# ---------------------------------------------------------------------------
# sampling


def _random_element(fld: Field, rng: random.Random):
    if fld.size is not None:
        return fld.element(rng.randrange(fld.size))
    if isinstance(fld, (RationalField, QuadraticField)):
        return fld.convert(Fraction(rng.randint(-20, 20)))
    raise SchemeKitError(f"cannot sample from {fld!r}")


def _random_linear_form(ring: PolyRing, rng: random.Random) -> Polynomial:
    fld = ring.field
    while True:
        f = ring.linear_form([_random_element(fld, rng) for _ in range(ring.nvars)])
        if f.terms:
            return f


def sample_subscheme(
    X: ProjScheme,
    target_degree: int,
    seed: int = 0,
    *,
    degree: int | None = None,
    reduced: bool = False,
    max_attempts: int = 200,
) -> ProjScheme:
    """Union of random linear slices of X of total degree ≥ target_degree.

    Each slice cuts X with dim(X) random hyperplanes and is kept only when
    zero-dimensional.  With ``degree`` set, slices keep being added until
    every degree-``degree`` form through the sample also vanishes on X (or,
    with ``reduced=True``, until one more slice no longer changes that
    system), so the sample certifiably determines the linear system.
    """
    ring = X.ring
    if target_degree <= 0:
        return ProjScheme(Ideal(ring, [ring.one()]))
    dim = X.dimension
    if dim < 1:
        raise SchemeKitError("sampling needs a positive-dimensional scheme")
    rng = random.Random(seed)
    sat = X.saturated()

    def one_slice():
        for _ in range(max_attempts):
            forms = [_random_linear_form(ring, rng) for _ in range(dim)]
            S = ProjScheme(sat.with_generators(forms))
            if S.dimension == 0:
                if reduced:
                    S = projective_radical(S)
                log.debug("slice with %s", [str(f) for f in forms])
                return S
        raise SchemeKitError("enlarge field or degree")

    sample = one_slice()
    stalls = 0
    while sample.degree < target_degree:
        before = sample.degree
        sample = sample.union(one_slice())
        stalls = stalls + 1 if sample.degree == before else 0
        if stalls > max_attempts // 10:
            raise SchemeKitError("enlarge field or degree")

    if degree is not None:
        for _ in range(max_attempts):
            system = forms_through(sample, degree)
            if reduced:
                bigger = sample.union(one_slice())
                if forms_through(bigger, degree) == system:
                    return sample
                sample = bigger
            else:
                if all(sat.contains(f) for f in system):
                    return sample
                sample = sample.union(one_slice())
        raise SchemeKitError("enlarge field or degree")
    return sample


# ---------------------------------------------------------------------------
# singular locus


def _det(m: list[list[Polynomial]]) -> Polynomial:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = m[0][0].ring.zero()
    for j in range(n):
        if not m[0][j].terms:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def jacobian_minors(gens: Sequence[Polynomial], c: int) -> list[Polynomial]:
    """All c×c minors of the Jacobian matrix, in lexicographic (rows, cols)
    index order."""
    if not gens:
        return []
    ring = gens[0].ring
    n = ring.nvars
    if c > min(len(gens), n):
        raise SchemeKitError("not enough generators for the Jacobian criterion")
    jac = [[g.derivative(i) for i in range(n)] for g in gens]
    out = []
    for rows in itertools.combinations(range(len(gens)), c):
        for cols in itertools.combinations(range(n), c):
            d = _det([[jac[r][k] for k in cols] for r in rows])
            if d.terms:
                out.append(d)
    return out


def singular_locus(X: ProjScheme) -> ProjScheme:
    """Jacobian criterion with c = codimension of X; valid for
    equidimensional X.  An empty result certifies smoothness."""
    dim = X.dimension
    if dim < 0:
        return X
    c = X.ambient_dim - dim
    gens = X.saturated().basis()
    if c == 0:
        # X is all of P^N (zero ideal): smooth
        return ProjScheme(Ideal(X.ring, [X.ring.one()]))
    minors = jacobian_minors(gens, c)
    sing = X.saturated().with_generators(minors)
    return ProjScheme(saturate(sing, irrelevant_ideal(X.ring)))
