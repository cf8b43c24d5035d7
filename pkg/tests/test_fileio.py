import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from schemekit.errors import ParseError
from schemekit.fields import PrimeField, QuadraticField, RationalField
from schemekit.fileio import (
    IdealFile,
    default_primes,
    dumps_spec,
    parse_ideal_file,
    parse_pairs_file,
    parse_spec_file,
    read_ideal_file,
)
from schemekit.fixtures import FILES, files
from schemekit.polyring import PolyRing

from conftest import random_poly

CUBIC = """# twisted cubic
field QQ
vars x y z w
order grevlex
ambient 3
x*z - y^2
y*w - z^2
x*w - y*z
"""


def test_parse_ideal_file():
    f = parse_ideal_file(CUBIC)
    assert isinstance(f.ring.field, RationalField)
    assert tuple(f.ring.names) == ("x", "y", "z", "w")
    assert f.ambient == 3
    x, y, z, w = f.ring.gens()
    assert f.generators == [x * z - y**2, y * w - z**2, x * w - y * z]


def test_ideal_file_round_trip(tmp_path):
    f = parse_ideal_file(CUBIC)
    again = parse_ideal_file(f.dumps())
    assert again.generators == f.generators and again.ambient == 3
    path = tmp_path / "c.ideal"
    path.write_text(f.dumps())
    assert read_ideal_file(path).dumps() == f.dumps()


@given(st.integers(0, 10**6))
def test_random_polynomials_round_trip(seed):
    for fld in (PrimeField(101), RationalField(), QuadraticField(-7)):
        R = PolyRing(fld, ["x", "y", "z"])
        gens = [random_poly(R, random.Random(seed + i), terms=4, max_deg=3) for i in range(3)]
        gens = [g for g in gens if g.terms]

        text = IdealFile(R, gens).dumps()
        assert parse_ideal_file(text).generators == gens


def test_field_headers():
    f = parse_ideal_file("field GF 7\nvars x y\nx^2 + 8*y\n")
    x, y = f.ring.gens()
    assert f.generators == [x**2 + y]
    f = parse_ideal_file("field QQ adjoin sqrt -7\nvars x y\nx - s*y\n")
    assert f.ring.field.sqrt_d == -7


def test_unknown_header_rejected():
    with pytest.raises(ParseError) as exc:
        parse_ideal_file("field QQ\nvars x y\nweights 1 2\nx\n")
    assert exc.value.line == 3 and "weights" in exc.value.message


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse_ideal_file("field QQ\nvars x y\nx^2 + y\n  x + $y\n")
    assert exc.value.line == 4
    assert exc.value.column == 7


def test_ambient_must_match():
    with pytest.raises(ParseError):
        parse_ideal_file("field QQ\nvars x y z\nambient 3\nx\n")


def test_every_bundled_file_parses():
    for name, texts in FILES.items():
        for fname, text in texts.items():
            if fname.endswith(".ideal"):
                assert parse_ideal_file(text).generators
            elif fname.endswith(".spec"):
                assert parse_spec_file(text).to_spec().free_count >= 1


def test_spec_round_trip():
    spec = parse_spec_file(files("veronese-demo")["demo.spec"]).to_spec()
    assert spec.threshold == 1 and spec.primes == [5, 7, 11] and spec.name == "veronese-demo"
    assert spec.slots == [Fraction(1), None]
    again = parse_spec_file(dumps_spec(spec)).to_spec()
    assert dumps_spec(again) == dumps_spec(spec)
    assert again.template == spec.template and again.forms == spec.forms


def test_spec_with_sqrt_and_default_primes():
    text = "field QQ\nvars x y z\n[slice]\n8*x^2 + 8*x*y + 16*y^2 - z^2\n[pencil]\nadjoin sqrt -7\nfree : x\n4 : y\nthreshold 1\n"
    sf = parse_spec_file(text)
    assert sf.adjoin == -7 and sf.ring.field.sqrt_d == -7
    assert sf.primes == default_primes(avoid=14)
    assert 7 not in sf.primes and len(sf.primes) == 8
    spec = sf.to_spec()
    assert parse_spec_file(dumps_spec(spec)).to_spec().slots == spec.slots


def test_spec_requires_threshold():
    with pytest.raises(ParseError, match="threshold"):
        parse_spec_file("field QQ\nvars x y\n[pencil]\nfree : x\n")


def test_default_primes():
    assert default_primes(4) == [5, 7, 11, 13]
    assert default_primes(3, avoid=2 * 7 * 11) == [5, 13, 17]


def test_pairs_file():
    pairs = parse_pairs_file("# conjugates\n11 3 5\n13 2:1 2:12\n")
    assert [p.p for p in pairs] == [11, 13]
    assert pairs[1].plus == (2, 1)
    with pytest.raises(ParseError) as exc:
        parse_pairs_file("11 3\n")
    assert exc.value.line == 1
