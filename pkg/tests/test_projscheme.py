"""Projective schemes: emptiness, H = 2C, linear systems, singular loci."""

import itertools
import random

import pytest
from hypothesis import given, strategies as st

from schemekit.errors import SchemeKitError
from schemekit.fields import PrimeField, QQ
from schemekit.idealops import Ideal
from schemekit.polyring import PolyRing
from schemekit.projscheme import (
    ProjScheme,
    divisor_double_check,
    forms_through,
    hyperplane_section,
    is_empty,
    jacobian_minors,
    member_of_system,
    projective_radical,
    sample_subscheme,
    singular_locus,
)
from schemekit.veronese import pullback, plane_ring, veronese_ideal, veronese_ring


def P(ring, *gens):
    return ProjScheme(Ideal(ring, [ring.parse(g) if isinstance(g, str) else g for g in gens]))


def _projective_points(p, n):
    for c in itertools.product(range(p), repeat=n):
        nz = [v for v in c if v]
        if nz and nz[0] == 1:
            yield c


def test_emptiness_basic():
    R = PolyRing(QQ, ["x", "y", "z"])
    assert is_empty(P(R, "x", "y", "z"))
    assert not is_empty(P(R, "x", "y"))
    assert is_empty(P(R, "1"))
    assert not is_empty(P(R, "x^2 + y^2 + z^2"))  # no real points, still non-empty


@given(st.integers(0, 10**6))
def test_emptiness_vs_enumeration(seed):
    """Intersections of random planted hyperplanes and point-supported
    quadrics: all points are rational, so F_p enumeration is exact."""
    rng = random.Random(seed)
    p = rng.choice([5, 7, 11])
    n = rng.choice([3, 4])
    R = PolyRing(PrimeField(p), ["x", "y", "z", "w"][:n])
    gens = []
    for _ in range(rng.randint(1, n)):
        ell = R.linear_form([rng.randrange(p) for _ in range(n)])
        if rng.random() < 0.3:
            ell = ell * R.linear_form([rng.randrange(p) for _ in range(n)])
        if ell.terms:
            gens.append(ell)
    if not gens:
        return
    X = ProjScheme(Ideal(R, gens))
    # every component is a linear space defined over F_p, so it has an F_p point
    has_point = any(all(g.evaluate(list(pt)) == 0 for g in gens) for pt in _projective_points(p, n))
    assert is_empty(X) == (not has_point)


def test_veronese_double_check_over_f7():
    R = veronese_ring(PrimeField(7))
    V = veronese_ideal(R)
    ambient = ProjScheme(V)
    H = ProjScheme(V.with_generators([R.var("z00")]))
    C = ProjScheme(Ideal(R, [R.var("z00"), R.var("z01"), R.var("z02"), R.parse("z11*z22 - z12^2")]))
    assert divisor_double_check(H, C, ambient)
    assert H.degree == 2 * C.degree
    H_split = ProjScheme(V.with_generators([R.parse("z00 - z11")]))
    assert not divisor_double_check(H_split, C, ambient)
    with pytest.raises(SchemeKitError, match="not a subscheme"):
        divisor_double_check(H, ProjScheme(Ideal(R, [R.var("z00")])), ambient)


def test_double_check_implies_degree_relation():
    R = PolyRing(QQ, ["x", "y", "z"])
    plane = ProjScheme(Ideal(R, []))
    for sq, red in [("x^2", "x"), ("(x - y)^2", "x - y"), ("(x + 2*y - 3*z)^2", "x + 2*y - 3*z")]:
        H, C = P(R, sq), P(R, red)
        assert divisor_double_check(H, C, plane)
        assert H.degree == 2 * C.degree
    assert not divisor_double_check(P(R, "x*y"), P(R, "x"), plane)


def test_forms_through_twisted_cubic():
    R = PolyRing(QQ, ["x", "y", "z", "w"])
    X = P(R, "x*z - y^2", "y*w - z^2", "x*w - y*z")
    assert forms_through(X, 1).dim == 0
    L = forms_through(X, 2)
    assert L.dim == 3
    assert member_of_system(R.parse("x*z - y^2 + 2*(y*w - z^2)"), L)
    assert not member_of_system(R.parse("x*w"), L)
    with pytest.raises(SchemeKitError):
        member_of_system(R.parse("x"), L)
    assert forms_through(ProjScheme(Ideal(R, [])), 2).dim == 0
    assert forms_through(P(R, "x", "y", "z"), 1).dim == 3
    assert forms_through(P(R, "1"), 1).dim == 4


def test_forms_through_points_on_a_line():
    R = PolyRing(PrimeField(101), ["x", "y", "z"])
    pts = P(R, "z", "x*(x - y)*(x - 2*y)")
    assert forms_through(pts, 1).dim == 1
    assert forms_through(pts, 2).dim == 6 - 3


def test_sample_subscheme_determines_system():
    R = PolyRing(PrimeField(101), ["x", "y", "z", "w"])
    X = P(R, "x*z - y^2", "y*w - z^2", "x*w - y*z")
    S = sample_subscheme(X, 7, seed=1, degree=2)
    assert S.degree >= 7 and S.dimension == 0
    assert forms_through(S, 2) == forms_through(X, 2)
    assert X.contains_scheme(S)
    line = P(R, "x", "y")
    assert sample_subscheme(line, 2, seed=4).degree == 2


def test_projective_radical():
    R = PolyRing(QQ, ["x", "y", "z"])
    H = P(R, "(x^2 + y^2 - z^2)^2", "y")
    rad = projective_radical(H)
    assert rad == P(R, "x^2 - z^2", "y")
    assert rad.degree == 2 and H.degree == 4


def test_hyperplane_section_checks():
    R = PolyRing(QQ, ["x", "y", "z"])
    X = P(R, "x^2 + y^2 - z^2")
    assert hyperplane_section(X, R.parse("y")).degree == 2
    with pytest.raises(SchemeKitError):
        hyperplane_section(X, R.parse("x^2"))


def test_singular_loci():
    R = PolyRing(QQ, ["x", "y", "z"])
    assert is_empty(singular_locus(P(R, "x^2 + y^2 - z^2")))
    node = singular_locus(P(R, "y^2*z - x^3 - x^2*z"))
    assert node == P(R, "x", "y") and node.reduced_degree() == 1
    cusp = singular_locus(P(R, "y^2*z - x^3"))
    assert cusp.reduced_degree() == 1 and cusp.hilbert() == (0, 2)
    # two lines meet in one singular point; a triple point of three lines
    assert singular_locus(P(R, "x*y")) == P(R, "x", "y")
    assert singular_locus(P(R, "x*y*(x - y)")).reduced_degree() == 1


def test_singular_locus_of_veronese_is_empty():
    R = veronese_ring()
    assert is_empty(singular_locus(ProjScheme(veronese_ideal(R))))


def test_jacobian_minors_needs_generators():
    R = PolyRing(QQ, ["x", "y", "z"])
    with pytest.raises(SchemeKitError, match="not enough generators"):
        jacobian_minors([R.parse("x")], 2)


def test_pullback_of_veronese_minors_vanishes():
    R = veronese_ring()
    Pl = plane_ring()
    for g in veronese_ideal(R).gens:
        assert not pullback(g, Pl).terms
