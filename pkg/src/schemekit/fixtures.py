"""Bundled desk-scale fixtures.

Each fixture rebuilds its objects from text (the same files the CLI can
write out with ``schemekit fixture NAME --write DIR``), runs a procedure
end to end and compares against independently known answers.  A fixture
returns a :class:`FixtureReport`; it passes when every check does.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .fields import PrimeField, QQ
from .fileio import parse_ideal_file, parse_spec_file
from .idealops import Ideal, hilbert_data, quotient, reduced_degree
from .modsearch import format_value, run_search
from .projscheme import (
    ProjScheme,
    divisor_double_check,
    forms_through,
    hyperplane_section,
    is_empty,
    member_of_system,
    projective_radical,
    singular_locus,
)


@dataclass
class Check:
    label: str
    passed: bool
    detail: str = ""


@dataclass
class FixtureReport:
    name: str
    pattern: str  # which procedure the fixture exercises
    budget: float  # seconds
    checks: list = field(default_factory=list)
    elapsed: float = 0.0
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks) and self.elapsed <= self.budget

    def check(self, label: str, passed: bool, detail="") -> bool:
        self.checks.append(Check(label, bool(passed), str(detail)))
        return bool(passed)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "pattern": self.pattern,
            "budget_seconds": self.budget,
            "within_budget": self.elapsed <= self.budget,
            "status": "PASS" if self.passed else "FAIL",
            "checks": [{"label": c.label, "passed": c.passed, "detail": c.detail} for c in self.checks],
            **({"data": self.data} if self.data else {}),
        }

    def lines(self) -> list[str]:
        out = [f"fixture {self.name}: {self.pattern}"]
        for c in self.checks:
            out.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.label}" + (f" — {c.detail}" if c.detail else ""))
        out.append(f"{'PASS' if self.passed else 'FAIL'} ({self.elapsed:.2f}s, budget {self.budget:g}s)")
        return out


# ---------------------------------------------------------------------------
# bundled text

VERONESE_HEADER = """field QQ
vars z00 z01 z02 z11 z12 z22
order grevlex
ambient 5
"""

# 2x2 minors of the symmetric matrix (z_ij): the Veronese surface v2(P^2)
VERONESE_MINORS = """z00*z11 - z01^2
z00*z12 - z01*z02
z01*z12 - z02*z11
z00*z22 - z02^2
z01*z22 - z02*z12
z11*z22 - z12^2
"""

FILES: dict[str, dict[str, str]] = {
    "veronese-demo": {
        "veronese.ideal": VERONESE_HEADER + VERONESE_MINORS,
        "demo.spec": "name veronese-demo\n"
        + VERONESE_HEADER.replace("ambient 5\n", "")
        + VERONESE_MINORS
        + """[slice]
z02
z12
z22
[pencil]
1 : z00 - 3*z01
free : z11
threshold 1
primes 5 7 11
""",
        "residues.txt": "# 1/3 modulo a few primes\n5 2\n7 5\n11 4\n13 9\n",
        # S0 cut by the lifted hyperplane: a double point
        "section.ideal": VERONESE_HEADER + VERONESE_MINORS + "z02\nz12\nz22\nz00 - 3*z01 + 9/4*z11\n",
    },
    "double-conic": {
        "veronese.ideal": VERONESE_HEADER + VERONESE_MINORS,
        # hyperplane z00 = 0 cuts v2 of the doubled line x = 0
        "H.ideal": VERONESE_HEADER + VERONESE_MINORS + "z00\n",
        "C.ideal": VERONESE_HEADER + "z00\nz01\nz02\nz11*z22 - z12^2\n",
        # two distinct lines x^2 - y^2: not a double
        "H2.ideal": VERONESE_HEADER + VERONESE_MINORS + "z00 - z11\n",
    },
    "coordinate-lines": {
        "L1.ideal": "field QQ\nvars x y z\nambient 2\nx\n",
        "L2.ideal": "field QQ\nvars x y z\nambient 2\ny\n",
        "L3.ideal": "field QQ\nvars x y z\nambient 2\nz\n",
        "triple.ideal": "field QQ\nvars x y z\nambient 2\nx\ny\nz\n",
    },
    "twisted-cubic": {
        "cubic.ideal": "field QQ\nvars x y z w\nambient 3\nx*z - y^2\ny*w - z^2\nx*w - y*z\n",
        "cubic-lex.ideal": "field QQ\nvars t x y z\norder block 1\nx - t^3\ny - t^2\nz - t\n",
    },
    "nodal-cuspidal": {
        "conic.ideal": "field QQ\nvars x y z\nambient 2\nx^2 + y^2 - z^2\n",
        "nodal.ideal": "field QQ\nvars x y z\nambient 2\ny^2*z - x^3 - x^2*z\n",
        "cuspidal.ideal": "field QQ\nvars x y z\nambient 2\ny^2*z - x^3\n",
    },
    "torsion-membership": {
        "veronese.ideal": VERONESE_HEADER + VERONESE_MINORS,
        # the doubled divisor 2K where K is cut by h = z00 + z11 + z22 - z01
        "2K.ideal": VERONESE_HEADER
        + VERONESE_MINORS
        + "z00^2 + 2*z00*z11 + 2*z00*z22 - 2*z00*z01 + z11^2 + 2*z11*z22 - 2*z11*z01 + z22^2 - 2*z22*z01 + z01^2\n",
        "member.ideal": VERONESE_HEADER + "(z00 + z11 + z22 - z01)^2*z11\n",
        "perturbed.ideal": VERONESE_HEADER + "(z00 + z11 + z22 - z01)^2*z11 + z22^3\n",
    },
}


def files(name: str) -> dict[str, str]:
    if name not in FILES and not name.startswith("census"):
        raise KeyError(name)
    if name.startswith("census"):
        return {}
    return dict(FILES[name])


def _ideal(name: str, fname: str, field=None):
    f = parse_ideal_file(FILES[name][fname])
    if field is None:
        return f.ring, Ideal(f.ring, f.generators)
    ring = f.ring.with_field(field)
    return ring, Ideal(ring, [g.map_coefficients(ring) for g in f.generators])


def _scheme(name, fname, field=None) -> ProjScheme:
    return ProjScheme(_ideal(name, fname, field)[1])


# ---------------------------------------------------------------------------
# fixtures


def veronese_demo(report: FixtureReport, *, jobs: int = 1):
    spec = parse_spec_file(FILES["veronese-demo"]["demo.spec"]).to_spec()
    planted = Fraction(9, 4)
    result = run_search(spec, jobs=jobs)
    for p in spec.primes:
        hits = [h for r in result.sweeps[p] for h in r.hits]
        expect = planted.numerator * pow(planted.denominator, -1, p) % p
        report.check(
            f"sweep over F_{p}: single hit a = 9/4 mod {p}",
            [int(h.coefficients[0]) for h in hits] == [expect],
            [int(h.coefficients[0]) for h in hits],
        )
    agg = result.aggregate
    report.check("one surviving family, none spurious", len(agg.surviving) == 1 and not agg.spurious)
    lifted = [s for fam, sols in result.lifts if not isinstance(sols, str) for s in sols]
    report.check("lifted coefficient is 9/4", [s.values for s in lifted] == [(planted,)],
                 ", ".join(format_value(v) for s in lifted for v in s.values))
    if not lifted:
        return
    from .modsearch import lifted_hyperplane

    h = lifted_hyperplane(spec, lifted[0].values)
    ring = spec.ring
    S0 = ProjScheme(Ideal(ring, spec.template + spec.slice))
    H = hyperplane_section(S0, h)
    C = projective_radical(H)
    report.check("H has degree 2, its reduced scheme degree 1", (H.degree, C.degree) == (2, 1), (H.degree, C.degree))
    # independent description of C: the Veronese image of the point (3:2:0)
    z00, z01, z02, z11, z12, z22 = ring.gens()
    C_direct = ProjScheme(Ideal(ring, [2 * z00 - 3 * z01, 2 * z01 - 3 * z11, z02, z12, z22]))
    report.check("reduced scheme = image of the point (3:2:0)", C == C_direct)
    report.check("H = 2C inside S0 (divisor double check)", divisor_double_check(H, C, S0))
    off = hyperplane_section(C, ring.var("z11"))
    report.check("C misses the hyperplane z11 = 0 (emptiness)", is_empty(off))
    report.data["lifted"] = str(h)


def double_conic(report: FixtureReport, **_):
    for label, fld in (("QQ", None), ("F_7", PrimeField(7))):
        V = _scheme("double-conic", "veronese.ideal", fld)
        H = _scheme("double-conic", "H.ideal", fld)
        C = _scheme("double-conic", "C.ideal", fld)
        H2 = _scheme("double-conic", "H2.ideal", fld)
        report.check(f"[{label}] deg H = 2·deg C", (H.degree, C.degree, C.dimension) == (4, 2, 1), (H.degree, C.degree))
        report.check(f"[{label}] H = 2C certified", divisor_double_check(H, C, V))
        lines = ProjScheme(projective_union_of_lines(H2))
        report.check(f"[{label}] two distinct lines are not a double", not divisor_double_check(H2, lines, V))
        report.check(
            f"[{label}] H : C = C (quotient route)",
            ProjScheme(quotient(H.saturated(), C.saturated())) == C,
        )


def projective_union_of_lines(H2: ProjScheme) -> Ideal:
    """One of the two components of v2(x^2 - y^2): v2 of the line x = y."""
    ring = H2.ring
    z = {n: ring.var(n) for n in ring.names}
    return H2.ideal + Ideal(ring, [z["z00"] - z["z01"], z["z01"] - z["z11"], z["z02"] - z["z12"]])


def coordinate_lines(report: FixtureReport, **_):
    L = [_scheme("coordinate-lines", f"L{i}.ideal") for i in (1, 2, 3)]
    for i, j in itertools.combinations(range(3), 2):
        X = L[i].intersection(L[j])
        report.check(f"L{i + 1} ∩ L{j + 1} is non-empty (one point)", not is_empty(X) and X.hilbert() == (0, 1))
    T = L[0].intersection(L[1]).intersection(L[2])
    report.check("L1 ∩ L2 ∩ L3 is empty", is_empty(T))
    # oracle: count F_7-points of P^2 on each intersection by brute force
    F7 = [_scheme("coordinate-lines", f"L{i}.ideal", PrimeField(7)) for i in (1, 2, 3)]
    pairs = [F7[i].ideal.gens + F7[j].ideal.gens for i, j in itertools.combinations(range(3), 2)]
    counts = [_count_points(g, 7) for g in pairs]
    triple = _count_points(F7[0].ideal.gens + F7[1].ideal.gens + F7[2].ideal.gens, 7)
    report.check("F_7 point counts: 1 per pair, 0 for the triple", (counts, triple) == ([1, 1, 1], 0), (counts, triple))
    report.check("file form of the triple intersection is empty", is_empty(_scheme("coordinate-lines", "triple.ideal")))


def _count_points(gens, p: int) -> int:
    """Number of F_p-points of P^n where all ``gens`` vanish."""
    n = gens[0].ring.nvars
    count = 0
    for c in itertools.product(range(p), repeat=n):
        lead = next((v for v in c if v), 0)
        if lead != 1:
            continue  # one representative per projective point
        if all(int(g.evaluate(c)) % p == 0 for g in gens):
            count += 1
    return count


def twisted_cubic(report: FixtureReport, **_):
    X = _scheme("twisted-cubic", "cubic.ideal")
    report.check("hilbert data (dim 1, deg 3)", X.hilbert() == (1, 3), X.hilbert())
    report.check("no linear forms vanish on it", forms_through(X, 1).dim == 0)
    Q = forms_through(X, 2)
    report.check("three quadrics through it", Q.dim == 3, Q.dim)
    report.check("the quadrics cut out the curve", ProjScheme(Ideal(X.ring, Q.basis)) == X)
    C3 = forms_through(X, 3)
    report.check("cubic forms: 20 − 10 = 10", C3.dim == 10, C3.dim)
    ring, P = _ideal("twisted-cubic", "cubic-lex.ideal")
    from .idealops import eliminate

    E = eliminate(P, 1)
    img = Ideal(E.ring, E.gens)
    report.check("elimination recovers y^2 - x*z on the affine image", img.contains(E.ring.parse("y^2 - x*z")))
    report.check("elimination ideal has dimension 1 affinely", affine_dim_one(img))


def affine_dim_one(I: Ideal) -> bool:
    from .idealops import is_zero_dimensional

    return not is_zero_dimensional(I) and not I.is_unit()


def nodal_cuspidal(report: FixtureReport, **_):
    conic = _scheme("nodal-cuspidal", "conic.ideal")
    report.check("smooth conic has empty singular locus", is_empty(singular_locus(conic)))
    nodal = _scheme("nodal-cuspidal", "nodal.ideal")
    S = singular_locus(nodal)
    point = ProjScheme(Ideal(nodal.ring, [nodal.ring.var("x"), nodal.ring.var("y")]))
    report.check("nodal cubic: singular locus is the point (0:0:1)", S == point)
    report.check("nodal cubic: reduced degree 1", S.reduced_degree() == 1)
    cusp = _scheme("nodal-cuspidal", "cuspidal.ideal")
    S2 = singular_locus(cusp)
    report.check("cuspidal cubic: reduced degree 1", S2.reduced_degree() == 1)
    report.check("cuspidal cubic: the locus is non-reduced (length 2)", S2.hilbert() == (0, 2), S2.hilbert())
    report.check("a reduced point is smooth: singular locus of the node's locus is empty", is_empty(singular_locus(S)))


def torsion_membership(report: FixtureReport, **_):
    V = _scheme("torsion-membership", "veronese.ideal")
    K2 = _scheme("torsion-membership", "2K.ideal")
    J3 = forms_through(K2, 3)
    # I(V)_3 has 56 - 28 = 28 elements; h^2 times the 6 linear forms adds 6
    report.check("degree-3 system through 2K has dimension 34", J3.dim == 34, J3.dim)
    ring = V.ring
    member = parse_ideal_file(FILES["torsion-membership"]["member.ideal"]).generators[0]
    perturbed = parse_ideal_file(FILES["torsion-membership"]["perturbed.ideal"]).generators[0]
    report.check("h²·z11 lies in the system", member_of_system(member, J3))
    report.check("h²·z11 + z22³ does not", not member_of_system(perturbed, J3))
    report.check("2K has degree 8 = 2·deg K", K2.degree == 8 and V.degree == 4, (K2.degree, V.degree))
    report.check("h²·z11 restricted to the surface is not identically zero", not V.saturated().contains(member.to_ring(ring)))


def census(report: FixtureReport, *, q: int = 5, jobs: int = 1):
    from .modsearch import SearchSpec
    from .veronese import census_curve, square_hyperplanes

    C = census_curve(q)
    cert = C.certificate()
    report.check(f"census curve over F_{q} satisfies its certificate", all(cert.values()), cert)
    R = C.ideal.ring
    report.check("S0 is a curve of degree 14", hilbert_data(C.ideal) == (1, 14), hilbert_data(C.ideal))
    spec = SearchSpec(R, list(C.ideal.gens), [], list(R.gens()), [None] * 6, 7, [q], name=f"census-{q}")
    res = run_search(spec, jobs=jobs).sweeps[q][0]
    hits = {tuple(int(c) for c in h.coefficients) for h in res.hits}
    report.check(f"{len(hits)} hits = q²+q+1 = {q * q + q + 1}", len(hits) == q * q + q + 1)
    report.check("hits are exactly the squares of linear forms", hits == square_hyperplanes(q))
    report.check("no indeterminate candidates", not res.indeterminate)
    report.data.update(candidates=res.candidates, hits=len(hits), method=res.method)


@dataclass
class FixtureDef:
    run: Callable
    pattern: str
    budget: float


FIXTURES = {
    "veronese-demo": FixtureDef(
        veronese_demo, "sweep → aggregate → lift → double check → emptiness on a Veronese pencil", 120
    ),
    "double-conic": FixtureDef(double_conic, "H = 2C certificate on the Veronese surface", 60),
    "coordinate-lines": FixtureDef(coordinate_lines, "pairwise vs triple intersection emptiness", 1),
    "twisted-cubic": FixtureDef(twisted_cubic, "forms through a curve and its Hilbert data", 30),
    "nodal-cuspidal": FixtureDef(nodal_cuspidal, "Jacobian singular locus of plane cubics", 5),
    "torsion-membership": FixtureDef(torsion_membership, "membership in a degree-3 system through a doubled divisor", 10),
    "census": FixtureDef(census, "reduced-degree census of double lines on the Veronese", 180),
}


def run_fixture(name: str, **options) -> FixtureReport:
    if name not in FIXTURES:
        raise KeyError(name)
    fx = FIXTURES[name]
    report = FixtureReport(name, fx.pattern, fx.budget)
    start = time.perf_counter()
    fx.run(report, **options)
    report.elapsed = time.perf_counter() - start
    return report
