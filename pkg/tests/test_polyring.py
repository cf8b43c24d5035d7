"""Fields, monomial orders and sparse polynomial arithmetic."""

from fractions import Fraction
import random

import pytest
from hypothesis import given, strategies as st

from schemekit.errors import ParseError, RingMismatchError
from schemekit.fields import GaloisField, PrimeField, QQ, QuadraticField, SplitPrimeField
from schemekit.numbers import QuadExt
from schemekit.polyring import GREVLEX, LEX, MonomialOrder, PolyRing

from conftest import random_poly


# -- fields -----------------------------------------------------------------


def test_prime_field_ops():
    F = PrimeField(7)
    assert F.mul(3, 5) == 1 and F.inv(3) == 5 and F.convert(Fraction(1, 3)) == 5
    assert F.pth_root(4) == 4
    assert [F.element(i) for i in range(7)] == list(range(7))
    assert F == PrimeField(7) and F != PrimeField(11)
    assert PrimeField(7) != SplitPrimeField(7, 2)  # same size, different structure


def test_galois_field_quadratic():
    K = GaloisField.quadratic(5, -7)  # -7 = 3 is a non-residue mod 5
    s = K.sqrt_symbol()
    assert K.mul(s, s) == K.from_int(-7)
    assert K.size == 25 and len(set(K.elements())) == 25
    assert K.element(1) == (0, 1) and K.element(5) == (1, 0)
    x = (2, 3)
    assert K.mul(x, K.inv(x)) == K.one
    assert K.frobenius(s) == K.neg(s)
    assert K.convert(QuadExt(1, 1, -7)) == (1, 1)


@given(st.integers(0, 24), st.integers(0, 24))
def test_galois_field_axioms(i, j):
    K = GaloisField.quadratic(5, -7)
    a, b = K.element(i), K.element(j)
    assert K.mul(a, b) == K.mul(b, a)
    assert K.sub(K.add(a, b), b) == a
    assert K.pth_root(K.frobenius(a)) == a
    if not K.is_zero(b):
        assert K.mul(K.div(a, b), b) == a


def test_split_prime_field_embeddings():
    plus, minus = SplitPrimeField(11, -7, 1), SplitPrimeField(11, -7, -1)
    e = QuadExt(1, 1, -7)
    assert plus.root ** 2 % 11 == (-7) % 11 and (plus.root + minus.root) % 11 == 0
    assert {plus.convert(e), minus.convert(e)} == {(1 + plus.root) % 11, (1 - plus.root) % 11}


def test_quadratic_field_convert():
    F = QuadraticField(-7)
    assert F.mul(F.sqrt_symbol(), F.sqrt_symbol()) == -7
    assert F.inv(QuadExt(1, 1, -7)) == QuadExt(Fraction(1, 8), Fraction(-1, 8), -7)


# -- orders -------------------------------------------------------------------


def test_orders():
    a, b = (2, 1, 0), (1, 2, 0)
    assert GREVLEX.greater(a, b) and LEX.greater(a, b)
    # grevlex: x*z^2 vs y^3 — same degree, smaller power of the last variable wins
    assert GREVLEX.greater((0, 3, 0), (1, 0, 2))
    assert LEX.greater((1, 0, 2), (0, 3, 0))
    blk = MonomialOrder("block", 1)
    assert blk.greater((1, 0, 0), (0, 5, 5))  # eliminates x
    assert MonomialOrder.parse("block 2") == MonomialOrder("block", 2)
    assert str(MonomialOrder.parse(" lex ")) == "lex"
    with pytest.raises(ValueError):
        MonomialOrder.parse("revlex")


@given(st.lists(st.tuples(*[st.integers(0, 4)] * 3), min_size=2, max_size=8, unique=True))
def test_orders_are_total_and_multiplicative(monos):
    for order in (GREVLEX, LEX, MonomialOrder("block", 1), MonomialOrder("block", 2)):
        ranked = sorted(monos, key=order.sort_key)
        for u, v in zip(ranked, ranked[1:]):
            assert order.greater(u, v)
            w = (1, 2, 0)
            assert order.greater(tuple(x + y for x, y in zip(u, w)), tuple(x + y for x, y in zip(v, w)))


# -- arithmetic ----------------------------------------------------------------


def test_basic_examples():
    R = PolyRing(PrimeField(5), ["x", "y"])
    x, y = R.gens()
    assert (x + 1) ** 5 == x**5 + 1
    R2 = PolyRing(QQ, ["x", "y"])
    x, y = R2.gens()
    f = x**2 * y + x * y**2
    assert f.leading_term() == (1, (2, 1))
    assert f.total_degree() == 3 and f.is_homogeneous()


def test_parse_roundtrip_with_sqrt():
    R = PolyRing(QuadraticField(-7), ["x", "y"])
    f = R.parse("(1 - s)*x + 4*y - 3/2")
    assert R.parse(str(f)) == f
    assert f.coefficient((1, 0)) == QuadExt(1, -1, -7)
    with pytest.raises(Exception):
        PolyRing(QuadraticField(-7), ["s", "x"])


def test_parse_errors_have_columns():
    R = PolyRing(QQ, ["x", "y"])
    with pytest.raises(ParseError) as err:
        R.parse("x + + y)")
    assert err.value.column == 5
    with pytest.raises(ParseError):
        R.parse("x + w")
    with pytest.raises(ParseError):
        R.parse("x/0")


def test_ring_mismatch():
    A = PolyRing(QQ, ["x", "y"])
    B = PolyRing(PrimeField(7), ["x", "y"])
    with pytest.raises(RingMismatchError):
        A.gen(0) + B.gen(0)


def test_derivative_evaluate_substitute():
    R = PolyRing(QQ, ["x", "y", "z"])
    x, y, z = R.gens()
    f = y**2 * z - x**3 - x**2 * z
    assert f.derivative(0) == -3 * x**2 - 2 * x * z
    assert f.evaluate([0, 0, 1]) == 0
    assert f.substitute([y, x, z]) == x**2 * z - y**3 - y**2 * z
    assert f.map_coefficients(R.with_field(PrimeField(3))).terms == {
        (0, 2, 1): 1,
        (3, 0, 0): 2,
        (2, 0, 1): 2,
    }


@given(st.integers(0, 10**6))
def test_ring_axioms_random(seed):
    rng = random.Random(seed)
    for R in (PolyRing(PrimeField(101), ["x", "y", "z"]), PolyRing(QQ, ["x", "y"])):
        f, g, h = (random_poly(R, rng) for _ in range(3))
        assert f * (g + h) == f * g + f * h
        assert (f * g) * h == f * (g * h)
        assert f - f == R.zero()
        assert R.parse(str(f)) == f
        point = [R.field.convert(rng.randint(-5, 5)) for _ in range(R.nvars)]
        assert (f * g).evaluate(point) == R.field.mul(f.evaluate(point), g.evaluate(point))


def test_monomials_of_degree_order():
    R = PolyRing(QQ, ["x", "y", "z"])
    ms = R.monomials_of_degree(2)
    assert len(ms) == 6 and ms[0] == (2, 0, 0)
    assert all(R.order.greater(a, b) for a, b in zip(ms, ms[1:]))
