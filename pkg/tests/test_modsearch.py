import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from schemekit.errors import SchemeKitError
from schemekit.fields import QuadraticField
from schemekit.fileio import parse_spec_file
from schemekit.fixtures import files
from schemekit.modsearch import (
    FREE,
    SearchSpec,
    aggregate,
    lift_solution,
    run_search,
    sweep_candidates,
)
from schemekit.numbers import QuadExt
from schemekit.polyring import PolyRing


def demo_spec(**changes):
    spec = parse_spec_file(files("veronese-demo")["demo.spec"]).to_spec()
    for k, v in changes.items():
        setattr(spec, k, v)
    return spec


def square_pencil(c, primes):
    """z00 - 2c z01 + a z11 on the Veronese conic slice; the hit is a = c²."""
    base = demo_spec()
    R = base.ring
    z00, z01, _, z11, _, _ = R.gens()
    return SearchSpec(R, base.template, base.slice, [z00, z01, z11], [1, -2 * c, FREE], 1, primes)


def conic_spec(slots, primes=(3, 5, 11, 13, 17, 19, 23, 29)):
    R = PolyRing(QuadraticField(-7), ["x", "y", "z"])
    x, y, z = R.gens()
    return SearchSpec(R, [], [8 * x**2 + 8 * x * y + 16 * y**2 - z**2], [x, y], slots, 1, list(primes), adjoin=-7)


def test_demo_sweep_and_lift():
    rep = run_search(demo_spec())
    for p in (5, 7, 11):
        [res] = rep.sweeps[p]
        assert res.candidates == p
        assert [int(h.coefficients[0]) for h in res.hits] == [9 * pow(4, -1, p) % p]
    [(fam, sols)] = rep.lifts
    assert [s.values for s in sols] == [(Fraction(9, 4),)]
    assert all("reduced degree 1" in line for line in sols[0].transcript)


def test_search_is_deterministic_across_jobs():
    outs = [json.dumps(run_search(demo_spec(), jobs=j).to_json(), sort_keys=True) for j in (1, 2, 8)]
    assert outs[0] == outs[1] == outs[2]


def test_threshold_extremes():
    # T = -1 admits nothing; T = deg S0 admits every nondegenerate candidate
    res = sweep_candidates(demo_spec(threshold=-1), 7)
    assert res.hits == []
    res = sweep_candidates(demo_spec(threshold=2), 7)
    assert len(res.hits) + res.degenerate == res.candidates == 7


def test_aggregate_needs_two_primes():
    res = sweep_candidates(demo_spec(), 5)
    with pytest.raises(SchemeKitError, match="2 primes"):
        aggregate({5: res})


def test_missing_family_is_flagged_spurious():
    spec = demo_spec()
    sweeps = {p: sweep_candidates(spec, p) for p in (5, 7, 11)}
    sweeps[7].hits = []
    agg = aggregate(sweeps)
    assert len(agg.spurious) == 1 and not agg.surviving
    assert "missing at primes [7]" in agg.warnings[0]


def test_bad_prime_hit_is_outvoted():
    # corrupt the hit at one prime; the lift flags that prime and still verifies
    spec = square_pencil(Fraction(3, 2), [5, 7, 11, 13, 17, 19, 23])
    sweeps = {p: [sweep_candidates(spec, p)] for p in spec.primes}
    hit = sweeps[13][0].hits[0]
    sweeps[13][0].hits = [type(hit)(13, hit.index, ((int(hit.coefficients[0]) + 2) % 13,), 1)]
    [fam] = aggregate(sweeps).families
    [sol] = lift_solution(fam, spec)
    assert sol.values == (Fraction(9, 4),)
    assert sol.bad_primes == (13,)


def test_zero_one_coefficients_unchanged():
    for c, expect in ((Fraction(1), Fraction(1)), (Fraction(0), Fraction(0))):
        rep = run_search(square_pencil(c, [5, 7, 11]))
        [(fam, sols)] = rep.lifts
        assert [s.values for s in sols] == [(expect,)]
        assert fam.signature == ((expect != 0),)


@settings(max_examples=8)
@given(st.integers(-6, 6), st.integers(1, 6))
def test_planted_square_lifts_back(n, d):
    c = Fraction(n, d)
    primes = [p for p in (7, 11, 13, 17, 19, 23, 29) if d % p][:5]
    rep = run_search(square_pencil(c, primes))
    sols = [s for _, ss in rep.lifts for s in ss]
    assert [s.values for s in sols] == [(c * c,)]


def test_conjugate_pair_trace_norm():
    rep = run_search(conic_spec([FREE, Fraction(4)]))
    out = rep.to_json()
    [fam] = out["families"]
    # both conjugate lines x(1 ± s) + 4y are tangent, and both verify
    assert sorted(sol["values"][0] for sol in fam["lifted"]) == ["(1 + s)", "(1 - s)"]
    assert all(sol["trace_norm"] == [["2", "8"]] for sol in fam["lifted"])
    # inert primes see both conjugates in one sweep, split primes as well
    assert set(fam["hits_per_prime"].values()) == {2}


def test_sqrt_dependent_template():
    R = PolyRing(QuadraticField(-7), ["x", "y", "z"])
    x, y, z = R.gens()
    s = QuadExt(0, 1, -7)
    spec = SearchSpec(R, [(y - x) * (z - s * x)], [], [x, y, z], [1, FREE, 1], 1,
                      [3, 5, 11, 13, 17, 19, 23, 29], adjoin=-7)
    assert spec.uses_sqrt
    rep = run_search(spec)
    [(fam, [sol])] = rep.lifts
    assert sol.values == (QuadExt(-1, -1, -7),)
    # split primes are swept once per embedding of s
    assert [r.embedding for r in rep.sweeps[11]] == [1, -1]


def test_indeterminate_candidates():
    R = PolyRing(QuadraticField(-7), ["x", "y", "z"])
    x, y, z = R.gens()
    s = QuadExt(0, 1, -7)
    spec = SearchSpec(R, [(y - x) * (z - s * x)], [], [x, y], [1, FREE], 1, [3, 5], adjoin=-7)
    with pytest.raises(SchemeKitError, match="indeterminate"):
        sweep_candidates(spec, 5)
    res = sweep_candidates(spec, 5, allow_indeterminate=True)
    # x - y is a component of S0
    assert len(res.indeterminate) == 1
    assert res.hits == [] or all(h.coefficients != (-1 % 5,) for h in res.hits)


def test_spec_validation():
    base = demo_spec()
    R = base.ring
    z00 = R.gens()[0]
    with pytest.raises(SchemeKitError, match="free"):
        SearchSpec(R, base.template, base.slice, [z00], [1], 1, [5])
    with pytest.raises(SchemeKitError, match="linear"):
        SearchSpec(R, base.template, base.slice, [z00 * z00], [FREE], 1, [5])
    with pytest.raises(SchemeKitError, match="odd prime"):
        SearchSpec(R, base.template, base.slice, [z00], [FREE], 1, [9])
    with pytest.raises(SchemeKitError, match="ramifies"):
        conic_spec([FREE, 4], primes=[7])
    with pytest.raises(SchemeKitError, match="denominator"):
        square_pencil(Fraction(1, 5), [5])
