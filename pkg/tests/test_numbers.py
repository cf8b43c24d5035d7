"""Modular arithmetic, CRT and rational reconstruction."""

from fractions import Fraction
import math

import pytest
from hypothesis import given, strategies as st

from schemekit.errors import BadReductionError, ParseError, ReconstructionError
from schemekit.numbers import (
    ConjugatePair,
    QuadExt,
    ResidueTable,
    crt_combine,
    format_rational,
    is_prime,
    lift_to_rationals,
    mod_inverse,
    parse_rational,
    primes_from,
    quad_from_trace_norm,
    quad_lift,
    rational_reconstruct,
    reduce_rational,
    sqrt_mod,
)

PRIMES = primes_from(10007, 10)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_primes_from_avoid():
    assert primes_from(5, 4) == [5, 7, 11, 13]
    assert primes_from(5, 3, avoid=[7]) == [5, 11, 13]


def test_mod_inverse_and_sqrt():
    assert mod_inverse(3, 7) == 5
    with pytest.raises(ZeroDivisionError):
        mod_inverse(14, 7)
    assert sqrt_mod(-7, 11) in (2, 9) and sqrt_mod(-7, 11) ** 2 % 11 == (-7) % 11
    assert sqrt_mod(-7, 5) is None  # -7 = 3 is a non-residue mod 5
    assert sqrt_mod(0, 13) == 0


@given(st.integers(min_value=0, max_value=10**6), st.sampled_from([5, 7, 101, 10007, 1000003]))
def test_sqrt_mod_is_a_root(a, p):
    r = sqrt_mod(a, p)
    residue = pow(a % p, (p - 1) // 2, p) if a % p else 0
    if residue in (0, 1):
        assert r is not None and r * r % p == a % p and r <= p - r
    else:
        assert r is None


def test_reduce_rational():
    assert reduce_rational(Fraction(1, 3), 7) == 5
    with pytest.raises(BadReductionError):
        reduce_rational(Fraction(1, 14), 7)


def test_format_parse_rational():
    assert format_rational(Fraction(-9, 4)) == "-9/4"
    assert format_rational(3) == "3"
    assert parse_rational(" -9/4 ") == Fraction(-9, 4)
    with pytest.raises(ParseError):
        parse_rational("1/0")


def test_crt_combine_small():
    x, m = crt_combine(ResidueTable([(3, 2), (5, 3), (7, 2)]))
    assert (x, m) == (23, 105)


@given(st.integers(min_value=-(10**6), max_value=10**6), st.integers(min_value=1, max_value=10**6))
def test_roundtrip_rational(num, den):
    value = Fraction(num, den)
    table = ResidueTable.of_value(value, PRIMES[:5])
    lift = lift_to_rationals(table)
    assert lift.value == value and lift.bad_primes == ()


def test_rational_reconstruct_bound():
    # 1/3 mod 35 reconstructs; 9/4 mod 35 does not (height 9 > isqrt(17) = 4)
    assert rational_reconstruct(12, 35) == Fraction(1, 3)
    assert rational_reconstruct(reduce_rational(Fraction(9, 4), 35), 35) != Fraction(9, 4)


def test_bad_prime_flagged():
    value = Fraction(-123456, 789)
    table = ResidueTable.of_value(value, PRIMES)
    p, n = table.entries[4]
    corrupted = ResidueTable([(q, (m + 1) % q if q == p else m) for q, m in table.entries])
    lift = lift_to_rationals(corrupted)
    assert lift.value == value and lift.bad_primes == (p,)


def test_unconfirmed_lift_is_marked():
    lift = lift_to_rationals(ResidueTable.of_value(Fraction(9, 4), [5, 7, 11]))
    assert lift.value == Fraction(9, 4) and not lift.confirmed
    assert lift_to_rationals(ResidueTable.of_value(Fraction(9, 4), [5, 7, 11, 13])).confirmed


def test_lift_needs_primes():
    with pytest.raises(ReconstructionError):
        lift_to_rationals(ResidueTable([(5, 1)]))
    big = Fraction(10**9 + 7, 3)
    with pytest.raises(ReconstructionError, match="need more primes"):
        lift_to_rationals(ResidueTable.of_value(big, [5, 7, 11]))


def test_residue_table_text():
    t = ResidueTable.parse("# comment\n5 2\n7 5\n\n11 4\n")
    assert ResidueTable.parse(t.dumps()) == t
    with pytest.raises(ParseError) as err:
        ResidueTable.parse("5 2\n7\n")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        ResidueTable.parse("5 1\n5 2\n")


def test_quadext_arithmetic():
    a = QuadExt(Fraction(-3, 2), Fraction(1, 2), -7)
    assert a * a + 3 * a + 4 == 0
    assert (a * a.inverse()) == 1
    assert str(QuadExt(1, -1, -7)) == "(1 - s)"
    assert str(QuadExt(Fraction(5, 8), Fraction(1, 8), -7)) == "(5 + s)/8"
    with pytest.raises(ValueError):
        QuadExt(1, 1, 4)


@given(
    st.fractions(max_denominator=50).filter(lambda f: abs(f) < 100),
    st.fractions(max_denominator=50).filter(lambda f: abs(f) < 100),
)
def test_quadext_trace_norm_roundtrip(a, b):
    e = QuadExt(a, abs(b), -7)
    t, n = e.minimal_polynomial()
    assert e * e - t * e + n == 0
    assert quad_from_trace_norm(t, n, -7) == e


def _pairs_for(e: QuadExt, primes):
    pairs = []
    for p in primes:
        r = sqrt_mod(e.d, p)
        if r is None:
            a, b = reduce_rational(e.a, p), reduce_rational(e.b, p)
            pairs.append(ConjugatePair(p, (a, b), (a, -b % p)))
        else:
            pairs.append(ConjugatePair(p, e.reduce_split(p, r), e.conj().reduce_split(p, r), r))
    return pairs


def test_quad_lift_split_and_inert():
    e = QuadExt(Fraction(5, 8), Fraction(1, 8), -7)
    primes = [3, 5, 11, 13, 17, 19, 23, 29, 37, 43]
    assert quad_lift(_pairs_for(e, primes), -7) == e
    with pytest.raises(ReconstructionError):
        quad_from_trace_norm(1, 1, 2)  # T^2 - T + 1 splits over Q(sqrt -3), not Q(sqrt 2)


def test_crt_is_chinese():
    primes = [5, 7, 11, 13]
    for x in range(0, math.prod(primes), 97):
        t = ResidueTable((p, x % p) for p in primes)
        assert crt_combine(t) == (x, math.prod(primes))
