"""Multi-prime hyperplane search: enumerate candidate hyperplanes of a
pencil over F_p, keep those whose section of the slicing scheme S₀ has
small reduced degree, group hits across primes and lift them to Q or
Q(√d).

Candidates are indexed deterministically.  When every slot of the pencil
is free the coefficient tuple is projectively normalised — first the
stratum with leading coefficient 1, then the stratum where it is 0, and so
on — otherwise the free slots range over all of the coefficient field
(elements ordered lexicographically on their coordinates).  Work is cut
into contiguous index ranges and merged by index, so the result does not
depend on the number of workers.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    BadReductionError,
    NotZeroDimensionalError,
    ReconstructionError,
    SchemeKitError,
)
from .fields import Field, GaloisField, PrimeField, QQ, QuadraticField, SplitPrimeField
from .idealops import Ideal, reduced_degree
from .numbers import (
    QuadExt,
    ResidueTable,
    format_rational,
    is_prime,
    lift_to_rationals,
    quad_from_trace_norm,
    rational_sqrt,
    sqrt_mod,
)
from .polyring import Polynomial, PolyRing

log = logging.getLogger(__name__)

FREE = None


@dataclass
class SearchSpec:
    """A pencil of hyperplanes Σ a_i·F_i searched against S₀ = V + slice.

    ``slots[i]`` is ``None`` for a free coefficient, otherwise a fixed value
    (int, Fraction or QuadExt).  Template and slice generators live in
    ``ring``, whose field is Q or Q(√d) when ``adjoin`` is set.
    """

    ring: PolyRing
    template: list
    slice: list
    forms: list
    slots: list
    threshold: int
    primes: list
    adjoin: Optional[int] = None
    name: str = "search"

    def __post_init__(self):
        if len(self.forms) != len(self.slots):
            raise SchemeKitError("one coefficient slot per pencil form")
        if not self.forms:
            raise SchemeKitError("the pencil needs at least one form")
        if self.free_count < 1:
            raise SchemeKitError("at least one coefficient must be free")
        for f in self.forms:
            if not f.terms or f.total_degree() != 1 or not f.is_homogeneous():
                raise SchemeKitError("pencil forms must be nonzero linear forms")
        if self.adjoin is not None and self.ring.field.sqrt_d != self.adjoin:
            raise SchemeKitError("ring field must adjoin the same square root")
        for p in self.primes:
            self.check_prime(p)

    @property
    def free_count(self) -> int:
        return sum(1 for s in self.slots if s is FREE)

    @property
    def free_positions(self) -> list[int]:
        return [i for i, s in enumerate(self.slots) if s is FREE]

    @property
    def projective(self) -> bool:
        return all(s is FREE for s in self.slots)

    @property
    def uses_sqrt(self) -> bool:
        """Do fixed data involve √d (so each embedding is a different problem)?"""
        if self.adjoin is None:
            return False
        vals = [s for s in self.slots if isinstance(s, QuadExt)]
        for f in self.template + self.slice + self.forms:
            vals.extend(c for c in f.terms.values() if isinstance(c, QuadExt))
        return any(v.b for v in vals)

    def _denominators(self) -> set[int]:
        out = set()

        def visit(c):
            if isinstance(c, QuadExt):
                visit(c.a)
                visit(c.b)
            elif isinstance(c, Fraction):
                out.add(c.denominator)

        for f in self.template + self.slice + self.forms:
            for c in f.terms.values():
                visit(c)
        for s in self.slots:
            if s is not FREE:
                visit(s if isinstance(s, QuadExt) else Fraction(s))
        return out

    def check_prime(self, p: int):
        if not is_prime(p) or p == 2:
            raise SchemeKitError(f"{p} is not an odd prime")
        for den in self._denominators():
            if den % p == 0:
                raise SchemeKitError(f"prime {p} divides a denominator of the template")
        if self.adjoin is not None and self.adjoin % p == 0:
            raise SchemeKitError(f"prime {p} ramifies in Q(sqrt {self.adjoin})")


@dataclass(frozen=True)
class SearchHit:
    p: int
    index: int
    coefficients: tuple  # values of the free slots in the prime's field
    reduced_degree: int
    embedding: int = 1  # sign of the chosen sqrt(d) at a split prime

    def signature(self) -> tuple:
        return tuple(0 if _is_zero_elem(c) else 1 for c in self.coefficients)


def _is_zero_elem(c) -> bool:
    return not any(c) if isinstance(c, tuple) else c == 0


@dataclass
class SweepResult:
    p: int
    field: str
    embedding: int
    candidates: int
    hits: list = field(default_factory=list)
    indeterminate: list = field(default_factory=list)  # candidate indices
    degenerate: int = 0
    method: str = "groebner"


# ---------------------------------------------------------------------------
# per-prime setup


def prime_field(spec: SearchSpec, p: int, embedding: int = 1) -> Field:
    if spec.adjoin is None:
        return PrimeField(p)
    if sqrt_mod(spec.adjoin, p) is None:
        return GaloisField.quadratic(p, spec.adjoin)
    return SplitPrimeField(p, spec.adjoin, embedding)


def is_split(spec: SearchSpec, p: int) -> bool:
    return spec.adjoin is not None and sqrt_mod(spec.adjoin, p) is not None


class PrimeContext:
    """Everything about one (prime, embedding) that all candidates share."""

    def __init__(self, spec: SearchSpec, p: int, embedding: int = 1, *, fast: bool | None = None):
        spec.check_prime(p)
        self.spec = spec
        self.p = p
        self.embedding = embedding
        self.field = prime_field(spec, p, embedding)
        self.ring = spec.ring.with_field(self.field)
        try:
            conv = lambda f: f.map_coefficients(self.ring)  # noqa: E731
            template = [conv(f) for f in spec.template]
            slice_ = [conv(f) for f in spec.slice]
            self.forms = [conv(f) for f in spec.forms]
            self.fixed = [None if s is FREE else self.field.convert(s) for s in spec.slots]
        except BadReductionError as exc:
            raise SchemeKitError(f"template does not reduce mod {p}: {exc}") from exc
        self.S0 = Ideal(self.ring, template + slice_)
        self.S0_basis = self.S0.basis()
        self.q = self.field.size
        self.fast = None
        if fast is not False:
            self.fast = self._try_fast()
            if fast and self.fast is None:
                raise SchemeKitError("fast path requested but not applicable")

    def _try_fast(self):
        if not isinstance(self.field, PrimeField):
            return None
        try:
            from .fastslice import FastSlice

            fs = FastSlice(self.S0)
        except (ValueError, ImportError) as exc:
            log.info("fast path off at p=%d: %s", self.p, exc)
            return None
        n = self.ring.nvars

        def vec(f):
            out = [0] * n
            for e, c in f.terms.items():
                out[e.index(1)] = int(c)
            return out

        free_pos = self.spec.free_positions
        self._free_vecs = [vec(self.forms[i]) for i in free_pos]
        fixed = [0] * n
        for i, s in enumerate(self.fixed):
            if s is not None:
                for k, c in enumerate(vec(self.forms[i])):
                    fixed[k] = (fixed[k] + s * c) % self.p
        self._fixed_vec = fixed
        return fs

    # enumeration -------------------------------------------------------------

    @property
    def candidate_count(self) -> int:
        k = self.spec.free_count
        q = self.q
        if self.spec.projective:
            return (q**k - 1) // (q - 1)
        return q**k

    def digits(self, index: int) -> list[int]:
        k = self.spec.free_count
        q = self.q
        if self.spec.projective:
            s = 0
            size = q ** (k - 1)
            while index >= size:
                index -= size
                s += 1
                size //= q
            out = [0] * s + [1]
            rest = []
            for _ in range(k - 1 - s):
                index, r = divmod(index, q)
                rest.append(r)
            return out + rest[::-1]
        out = []
        for _ in range(k):
            index, r = divmod(index, q)
            out.append(r)
        return out[::-1]

    def coefficients(self, index: int) -> tuple:
        return tuple(self.field.element(d) for d in self.digits(index))

    def hyperplane(self, coeffs: Sequence) -> Polynomial:
        it = iter(coeffs)
        h = self.ring.zero()
        for form, fixed in zip(self.forms, self.fixed):
            c = next(it) if fixed is None else fixed
            h = h + form * c
        return h

    # evaluation --------------------------------------------------------------

    def reduced_degree_groebner(self, h: Polynomial) -> int:
        return reduced_degree(Ideal(self.ring, list(self.S0_basis) + [h]), projective=True)

    def evaluate(self, coeffs: Sequence) -> Optional[int]:
        """Reduced degree of S₀ ∩ V(h); None when the section is not
        zero-dimensional.  Raises for the zero form."""
        h = self.hyperplane(coeffs)
        if not h.terms:
            raise SchemeKitError("zero hyperplane")
        try:
            return self.reduced_degree_groebner(h)
        except NotZeroDimensionalError:
            return None

    def run_range(self, start: int, stop: int):
        """[(index, coeffs, reduced degree | None | 'zero')] for a range."""
        out = []
        codes = None
        if self.fast is not None:
            codes = self.fast.sweep(start, stop, self.q, self.spec.projective, self._free_vecs, self._fixed_vec)
        threshold = self.spec.threshold
        for idx in range(start, stop):
            if codes is not None:
                code = int(codes[idx - start])
                if code > threshold:
                    # coefficients only matter for hits and fallbacks
                    out.append((idx, None, code))
                    continue
                if code >= 0:
                    out.append((idx, self.coefficients(idx), code))
                    continue
                if code == -3:
                    out.append((idx, None, "zero"))
                    continue
            coeffs = self.coefficients(idx)
            h = self.hyperplane(coeffs)
            if not h.terms:
                out.append((idx, coeffs, "zero"))
                continue
            try:
                out.append((idx, coeffs, self.reduced_degree_groebner(h)))
            except NotZeroDimensionalError:
                out.append((idx, coeffs, None))
        return out


# ---------------------------------------------------------------------------
# sweeping


def _ranges(total: int, jobs: int) -> list[tuple[int, int]]:
    chunk = max(1, min(4096, -(-total // max(1, jobs * 4))))
    return [(s, min(total, s + chunk)) for s in range(0, total, chunk)]


def sweep_candidates(
    spec: SearchSpec,
    p: int,
    *,
    jobs: int = 1,
    embedding: int = 1,
    allow_indeterminate: bool = False,
    fast: bool | None = None,
    context: PrimeContext | None = None,
) -> SweepResult:
    """Test every candidate of the pencil at p; hits have reduced degree ≤ T."""
    ctx = context or PrimeContext(spec, p, embedding, fast=fast)
    total = ctx.candidate_count
    units = _ranges(total, jobs)
    if jobs <= 1:
        parts = [ctx.run_range(a, b) for a, b in units]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(lambda r: ctx.run_range(*r), units))
    res = SweepResult(
        p=p,
        field=repr(ctx.field),
        embedding=embedding,
        candidates=total,
        method="compiled" if ctx.fast is not None else "groebner",
    )
    for part in parts:
        for idx, coeffs, deg in part:
            if deg == "zero":
                res.degenerate += 1
            elif deg is None:
                res.indeterminate.append(idx)
            elif deg <= spec.threshold:
                res.hits.append(SearchHit(p, idx, coeffs, deg, embedding))
    if res.indeterminate and not allow_indeterminate:
        first = ctx.coefficients(res.indeterminate[0])
        raise SchemeKitError(
            f"{len(res.indeterminate)} indeterminate candidates at p={p} "
            f"(first: index {res.indeterminate[0]}, coefficients {format_coeffs(first)}); "
            "the slice is not zero-dimensional there"
        )
    return res


def embeddings(spec: SearchSpec, p: int) -> list[int]:
    """Sign choices for √d that give genuinely different problems at p."""
    return [1, -1] if spec.uses_sqrt and is_split(spec, p) else [1]


# ---------------------------------------------------------------------------
# aggregation


@dataclass
class Family:
    signature: tuple
    hits: dict  # p -> list of SearchHit
    spurious: bool = False

    @property
    def primes(self) -> list[int]:
        return sorted(self.hits)


@dataclass
class Aggregate:
    families: list
    primes: list
    warnings: list = field(default_factory=list)

    @property
    def surviving(self) -> list:
        return [f for f in self.families if not f.spurious]

    @property
    def spurious(self) -> list:
        return [f for f in self.families if f.spurious]


def aggregate(per_prime: dict) -> Aggregate:
    """Group hits by zero pattern of the free coefficients; families seen at
    every prime survive, the rest are flagged spurious."""
    primes = sorted(per_prime)
    if len(primes) < 2:
        raise SchemeKitError("need ≥ 2 primes")
    groups: dict = {}
    for p in primes:
        results = per_prime[p]
        if isinstance(results, SweepResult):
            results = [results]
        for res in results:
            for hit in res.hits:
                groups.setdefault(hit.signature(), {}).setdefault(p, []).append(hit)
    out = Aggregate([], primes)
    for sig in sorted(groups, reverse=True):
        fam = Family(sig, groups[sig])
        missing = [p for p in primes if p not in fam.hits]
        if missing:
            fam.spurious = True
            out.warnings.append(
                f"family {format_signature(sig)} missing at primes {missing}; "
                f"present at {fam.primes} (possible bad primes)"
            )
        out.families.append(fam)
    return out


def format_signature(sig: tuple) -> str:
    return "".join("*" if s else "0" for s in sig)


# ---------------------------------------------------------------------------
# lifting


@dataclass
class LiftedSolution:
    values: tuple  # per free slot: Fraction or QuadExt
    transcript: list  # verification lines
    bad_primes: tuple = ()
    confirmed: bool = True  # every coordinate had margin beyond the Farey bound


def _element_pair(c, p: int) -> tuple[int, int]:
    return (c[0] % p, c[1] % p) if isinstance(c, tuple) else (int(c) % p, 0)


def lift_solution(family: Family, spec: SearchSpec, contexts: dict | None = None) -> list[LiftedSolution]:
    """Lift a family to characteristic zero and re-verify it at every prime.

    Rational data: one hit per prime, coordinates lifted one by one.
    With √d adjoined and rational fixed data, conjugate hits come in pairs
    and each coordinate is lifted through its trace and norm; the sign of
    √d per coordinate is then chosen by re-verification.  When the fixed
    data involve √d each embedding sees one hit and the two halves a, b of
    a + b√d are lifted directly.
    """
    contexts = contexts if contexts is not None else {}
    primes = family.primes
    if len(primes) < 2:
        raise SchemeKitError("need ≥ 2 primes")
    k = spec.free_count

    def ctx(p, sign):
        key = (p, sign)
        if key not in contexts:
            contexts[key] = PrimeContext(spec, p, sign, fast=False)
        return contexts[key]

    if spec.uses_sqrt:
        candidates, acc = _lift_direct(family, spec, ctx)
    else:
        sizes = {p: len(family.hits[p]) for p in primes}
        want = max(set(sizes.values()), key=lambda s: (list(sizes.values()).count(s), -s))
        usable = [p for p in primes if sizes[p] == want]
        if len(usable) < 2:
            raise SchemeKitError("need more primes")
        if want == 1:
            candidates, acc = _lift_rational(family, usable, k)
        elif want == 2 and spec.adjoin is not None:
            candidates, acc = _lift_conjugate(family, usable, k, spec.adjoin)
        else:
            raise SchemeKitError(
                f"family {format_signature(family.signature)} has {want} hits per prime; "
                "cannot align them across primes"
            )

    bad = sorted(acc.bad)
    solutions = []
    for values in candidates:
        transcript, ok = _verify(values, family, spec, ctx, bad)
        if ok:
            solutions.append(LiftedSolution(tuple(values), transcript, tuple(bad), acc.confirmed))
    if not solutions:
        raise SchemeKitError("inconsistent family (bad prime suspected)")
    return solutions


@dataclass
class _LiftLog:
    bad: set = field(default_factory=set)
    confirmed: bool = True


def _lift_table(entries, acc: _LiftLog) -> Fraction:
    try:
        lift = lift_to_rationals(ResidueTable(entries))
    except ReconstructionError as exc:
        raise SchemeKitError("need more primes") from exc
    acc.bad.update(lift.bad_primes)
    acc.confirmed &= lift.confirmed
    return lift.value


def _lift_rational(family: Family, primes, k):
    values, acc = [], _LiftLog()
    for j in range(k):
        entries = []
        for p in primes:
            a, b = _element_pair(family.hits[p][0].coefficients[j], p)
            if b:
                raise SchemeKitError(f"hit at {p} is not defined over F_{p}")
            entries.append((p, a))
        values.append(_lift_table(entries, acc))
    return [values], acc


def _lift_conjugate(family: Family, primes, k, d):
    per_coord = []
    acc = _LiftLog()
    for j in range(k):
        traces, norms = [], []
        for p in primes:
            h1, h2 = family.hits[p][:2]
            a1, b1 = _element_pair(h1.coefficients[j], p)
            a2, b2 = _element_pair(h2.coefficients[j], p)
            t = ((a1 + a2) % p, (b1 + b2) % p)
            n = ((a1 * a2 + d * b1 * b2) % p, (a1 * b2 + a2 * b1) % p)
            if t[1] or n[1]:
                raise SchemeKitError(f"hits at {p} are not a conjugate pair")
            traces.append((p, t[0]))
            norms.append((p, n[0]))
        t = _lift_table(traces, acc)
        n = _lift_table(norms, acc)
        disc = t * t - 4 * n
        r = rational_sqrt(disc)
        if r is not None:
            roots = sorted({(t + r) / 2, (t - r) / 2})
        else:
            try:
                e = quad_from_trace_norm(t, n, d)
            except ReconstructionError as exc:
                raise SchemeKitError(str(exc)) from exc
            roots = [e, e.conj()] if e.b else [e]
        per_coord.append(roots)
    combos = [list(c) for c in itertools.product(*per_coord)]
    return combos, acc


def _lift_direct(family: Family, spec: SearchSpec, ctx):
    d = spec.adjoin
    k = spec.free_count
    a_entries = [[] for _ in range(k)]
    b_entries = [[] for _ in range(k)]
    ambiguous = []
    for p in family.primes:
        hits = family.hits[p]
        if is_split(spec, p):
            plus = [h for h in hits if h.embedding == 1]
            minus = [h for h in hits if h.embedding == -1]
            if len(plus) != 1 or len(minus) != 1:
                ambiguous.append(p)
                continue
            r = ctx(p, 1).field.root
            inv2 = pow(2, -1, p)
            inv2r = pow(2 * r, -1, p)
            for j in range(k):
                x1, x2 = int(plus[0].coefficients[j]), int(minus[0].coefficients[j])
                a_entries[j].append((p, (x1 + x2) * inv2 % p))
                b_entries[j].append((p, (x1 - x2) * inv2r % p))
        else:
            if len(hits) != 1:
                ambiguous.append(p)
                continue
            for j in range(k):
                a, b = _element_pair(hits[0].coefficients[j], p)
                a_entries[j].append((p, a))
                b_entries[j].append((p, b))
    values, acc = [], _LiftLog()
    for j in range(k):
        if len(a_entries[j]) < 2:
            if ambiguous:
                raise SchemeKitError(
                    f"family {format_signature(family.signature)} has several hits per embedding "
                    f"at primes {ambiguous}; cannot align them across primes"
                )
            raise SchemeKitError("need more primes")
        a = _lift_table(a_entries[j], acc)
        b = _lift_table(b_entries[j], acc)
        values.append(QuadExt(a, b, d) if b else a)
    return [values], acc


def _verify(values, family: Family, spec: SearchSpec, ctx, bad) -> tuple[list, bool]:
    """Reduce the lifted tuple at every prime/embedding of the family and
    check that it is a hit there with the recorded reduced degree."""
    lines = []
    ok = True
    for p in family.primes:
        if p in bad:
            lines.append(f"p={p}: skipped (flagged bad)")
            continue
        signs = sorted({h.embedding for h in family.hits[p]}, reverse=True)
        for sign in signs:
            c = ctx(p, sign)
            try:
                coeffs = tuple(c.field.convert(v) for v in values)
            except (BadReductionError, ZeroDivisionError):
                lines.append(f"p={p}: does not reduce")
                ok = False
                continue
            recorded = {h.coefficients: h.reduced_degree for h in family.hits[p] if h.embedding == sign}
            if coeffs not in recorded:
                lines.append(f"p={p}{_sign_tag(spec, p, sign)}: {format_coeffs(coeffs)} is not among the hits")
                ok = False
                continue
            deg = c.evaluate(coeffs)
            same = deg == recorded[coeffs]
            ok &= same
            lines.append(
                f"p={p}{_sign_tag(spec, p, sign)}: {format_coeffs(coeffs)} reduced degree {deg}"
                + ("" if same else f" (recorded {recorded[coeffs]})")
            )
    return lines, ok


def _sign_tag(spec, p, sign):
    return "" if not is_split(spec, p) else (" s=+r" if sign > 0 else " s=-r")


# ---------------------------------------------------------------------------
# full pipeline


def format_coeffs(coeffs) -> str:
    parts = []
    for c in coeffs:
        if isinstance(c, tuple):
            a, b = c
            parts.append(str(a) if not b else (f"{a}+{b}*s" if a else f"{b}*s"))
        else:
            parts.append(str(c))
    return "(" + ", ".join(parts) + ")"


def format_value(v) -> str:
    if isinstance(v, QuadExt):
        return str(v)
    return format_rational(Fraction(v))


@dataclass
class SearchReport:
    spec: SearchSpec
    sweeps: dict  # p -> list[SweepResult]
    aggregate: Optional[Aggregate]
    lifts: list  # (Family, list[LiftedSolution] | error string)

    def to_json(self) -> dict:
        spec = self.spec
        out = {
            "name": spec.name,
            "threshold": spec.threshold,
            "primes": list(spec.primes),
            "adjoin": spec.adjoin,
            "sweeps": [],
            "families": [],
            "warnings": list(self.aggregate.warnings) if self.aggregate else [],
        }
        for p in sorted(self.sweeps):
            for res in self.sweeps[p]:
                out["sweeps"].append(
                    {
                        "p": p,
                        "field": res.field,
                        "embedding": res.embedding,
                        "candidates": res.candidates,
                        "degenerate": res.degenerate,
                        "indeterminate": list(res.indeterminate),
                        "hits": [
                            {
                                "index": h.index,
                                "coefficients": [_json_elem(c) for c in h.coefficients],
                                "reduced_degree": h.reduced_degree,
                            }
                            for h in res.hits
                        ],
                    }
                )
        lift_map = {id(f): sol for f, sol in self.lifts}
        if self.aggregate:
            for fam in self.aggregate.families:
                entry = {
                    "signature": format_signature(fam.signature),
                    "primes": fam.primes,
                    "hits_per_prime": {str(p): len(v) for p, v in sorted(fam.hits.items())},
                    "spurious": fam.spurious,
                }
                sol = lift_map.get(id(fam))
                if isinstance(sol, str):
                    entry["lift_error"] = sol
                elif sol is not None:
                    entry["lifted"] = [
                        {
                            "values": [format_value(v) for v in s.values],
                            "trace_norm": [_trace_norm(v) for v in s.values],
                            "hyperplane": str(lifted_hyperplane(spec, s.values)),
                            "bad_primes": list(s.bad_primes),
                            "confirmed": s.confirmed,
                            "verification": s.transcript,
                        }
                        for s in sol
                    ]
                out["families"].append(entry)
        return out


def _trace_norm(v) -> list:
    if isinstance(v, QuadExt):
        t, n = v.minimal_polynomial()
        return [format_rational(t), format_rational(n)]
    v = Fraction(v)
    return [format_rational(2 * v), format_rational(v * v)]


def _json_elem(c):
    if isinstance(c, tuple):
        return [int(x) for x in c]
    return int(c)


def lifted_hyperplane(spec: SearchSpec, values: Sequence) -> Polynomial:
    """The characteristic-zero hyperplane for lifted free coefficients."""
    it = iter(values)
    h = spec.ring.zero()
    for form, slot in zip(spec.forms, spec.slots):
        c = next(it) if slot is FREE else slot
        h = h + form * spec.ring.field.convert(c)
    return h


def run_search(
    spec: SearchSpec,
    *,
    jobs: int = 1,
    allow_indeterminate: bool = False,
    fast: bool | None = None,
    lift: bool = True,
) -> SearchReport:
    """Sweep every prime (and embedding), aggregate, lift surviving families."""
    sweeps: dict = {}
    contexts: dict = {}
    for p in spec.primes:
        sweeps[p] = []
        for sign in embeddings(spec, p):
            ctx = PrimeContext(spec, p, sign, fast=fast)
            contexts[(p, sign)] = ctx
            sweeps[p].append(
                sweep_candidates(spec, p, jobs=jobs, embedding=sign, allow_indeterminate=allow_indeterminate, context=ctx)
            )
    agg = aggregate(sweeps) if len(spec.primes) >= 2 else None
    lifts = []
    if agg is not None and lift:
        for fam in agg.surviving:
            try:
                lifts.append((fam, lift_solution(fam, spec, contexts)))
            except SchemeKitError as exc:
                lifts.append((fam, str(exc)))
    return SearchReport(spec, sweeps, agg, lifts)
