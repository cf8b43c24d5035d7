"""Buchberger's algorithm, normal forms and Gröbner-basis invariants."""

import itertools
import random

import pytest
import sympy
from hypothesis import given, strategies as st

from schemekit.errors import DegreeCapExceeded
from schemekit.fields import PrimeField, QQ
from schemekit.groebner import buchberger, ideal_membership, is_groebner, normal_form, s_polynomial
from schemekit.polyring import GREVLEX, LEX, MonomialOrder, PolyRing

from conftest import random_poly


def _sympy_gb(polys, ring, order):
    gens = sympy.symbols(ring.names)
    exprs = [sympy.sympify(str(f).replace("^", "**"), locals=dict(zip(ring.names, gens))) for f in polys]
    kw = {"modulus": ring.field.p} if isinstance(ring.field, PrimeField) else {}
    G = sympy.groebner(exprs, *gens, order=order, **kw)
    return {ring.parse(str(g.as_expr())).monic() for g in G.exprs}


def test_small_example():
    R = PolyRing(QQ, ["x", "y"])
    x, y = R.gens()
    G = buchberger([x**2 - y, x * y - 1])
    assert [str(g) for g in G] == ["x^2 - y", "x*y - 1", "y^2 - x"]


def test_twisted_cubic_elimination():
    R = PolyRing(QQ, ["t", "x", "y", "z"])
    t, x, y, z = R.gens()
    G = buchberger([x - t**3, y - t**2, z - t], MonomialOrder("block", 1))
    free = [g for g in G if not any(e[0] for e in g.terms)]
    assert any(str(g) == "y*z - x" for g in free)
    assert is_groebner(G.polys)


def test_normal_form_example():
    R = PolyRing(QQ, ["x", "y"])
    x, y = R.gens()
    assert normal_form(x**2 * y, [x**2 - 1]) == y


def test_unit_and_zero_ideals():
    R = PolyRing(QQ, ["x", "y"])
    x, y = R.gens()
    assert buchberger([x, x + 1]).is_unit_ideal()
    assert buchberger([R.zero()]).polys == []


def test_degree_cap():
    R = PolyRing(PrimeField(101), ["x", "y", "z"])
    x, y, z = R.gens()
    with pytest.raises(DegreeCapExceeded):
        buchberger([x**3 - y * z**2, y**3 - x * z**2, x * y - z**2], degree_cap=3)


@pytest.mark.parametrize("order,sym", [(GREVLEX, "grevlex"), (LEX, "lex")])
def test_matches_sympy_mod_p(order, sym):
    rng = random.Random(7)
    R = PolyRing(PrimeField(101), ["x", "y", "z"], order)
    for _ in range(25):
        gens = [random_poly(R, rng, terms=3, max_deg=3) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if g.terms]
        if not gens:
            continue
        ours = set(buchberger(gens).polys)
        assert ours == _sympy_gb(gens, R, sym)


def test_matches_sympy_over_q():
    rng = random.Random(11)
    R = PolyRing(QQ, ["x", "y", "z"])
    for _ in range(10):
        gens = [random_poly(R, rng, terms=3, max_deg=2) for _ in range(3)]
        gens = [g for g in gens if g.terms]
        assert set(buchberger(gens).polys) == _sympy_gb(gens, R, "grevlex")


@given(st.integers(0, 10**6))
def test_buchberger_criterion_and_permutation(seed):
    rng = random.Random(seed)
    R = PolyRing(PrimeField(101), ["x", "y", "z"])
    gens = [g for g in (random_poly(R, rng, terms=3, max_deg=3) for _ in range(3)) if g.terms]
    if not gens:
        return
    G = buchberger(gens)
    for f, g in itertools.combinations(G.polys, 2):
        assert not normal_form(s_polynomial(f, g), G.polys).terms
    for g in gens:
        assert ideal_membership(g, G)
    shuffled = gens[:]
    rng.shuffle(shuffled)
    assert buchberger(shuffled).polys == G.polys


def test_reduced_basis_is_reduced():
    rng = random.Random(3)
    R = PolyRing(PrimeField(101), ["x", "y", "z"])
    gens = [random_poly(R, rng, terms=4, max_deg=3) for _ in range(3)]
    G = buchberger([g for g in gens if g.terms]).polys
    lms = [g.lm() for g in G]
    for g in G:
        assert g.lc() == 1
        for e in g.terms:
            for m in lms:
                if m != g.lm():
                    assert not all(a >= b for a, b in zip(e, m))
