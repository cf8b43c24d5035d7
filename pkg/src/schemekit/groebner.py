"""Buchberger's algorithm, multivariate division and reduced bases.

The engine is deliberately plain: the normal selection strategy (smallest
lcm first) with the Gebauer–Möller installation of the product and chain
criteria.  Everything that could depend on dict or set iteration order is
keyed explicitly so bases come out identical across runs.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DegreeCapExceeded, RingMismatchError
from .fields import PrimeField
from .polyring import MonomialOrder, Polynomial, PolyRing, divides, mono_lcm


def _common_ring(polys: Sequence[Polynomial]) -> PolyRing:
    if not polys:
        raise ValueError("need at least one polynomial")
    ring = polys[0].ring
    for f in polys[1:]:
        if f.ring is not ring and f.ring != ring:
            raise RingMismatchError("incompatible rings")
    return ring


# ---------------------------------------------------------------------------
# division


def normal_form(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Fully reduce ``f`` by ``basis`` (divisors tried in listed order).

    The result has no term divisible by a leading monomial of the basis.
    Basis elements need not be monic; zero elements are ignored.
    """
    ring = f.ring
    for g in basis:
        if g.ring is not ring and g.ring != ring:
            raise RingMismatchError("incompatible rings")
    divisors = [(g.lm(), g) for g in basis if g.terms]
    if not f.terms or not divisors:
        return f
    if isinstance(ring.field, PrimeField):
        return Polynomial(ring, _nf_modp(f.terms, divisors, ring._key, ring.field.p))
    return Polynomial(ring, _nf_generic(f.terms, divisors, ring._key, ring.field))


def _nf_modp(terms: dict, divisors, key, p: int) -> dict:
    # Divisors as (lm, lc^-1, tail items) to keep the inner loop tight.
    prepared = []
    for lm, g in divisors:
        inv = pow(g.terms[lm], -1, p)
        tail = [(e, c) for e, c in g.terms.items() if e != lm]
        prepared.append((lm, inv, tail))
    work = dict(terms)
    heap = [(key(e), e) for e in work]
    heapq.heapify(heap)
    queued = set(work)
    rem = {}
    push, pop = heapq.heappush, heapq.heappop
    while heap:
        _, m = pop(heap)
        queued.discard(m)
        c = work.pop(m, 0)
        if not c:
            continue
        for lm, inv, tail in prepared:
            ok = True
            for a, b in zip(lm, m):
                if a > b:
                    ok = False
                    break
            if ok:
                q = c * inv % p
                shift = tuple(b - a for a, b in zip(lm, m))
                for e, gc in tail:
                    ne = tuple(x + y for x, y in zip(e, shift))
                    v = (work.get(ne, 0) - q * gc) % p
                    if v:
                        work[ne] = v
                        if ne not in queued:
                            queued.add(ne)
                            push(heap, (key(ne), ne))
                    else:
                        work.pop(ne, None)
                break
        else:
            rem[m] = c
    return rem


def _nf_generic(terms: dict, divisors, key, fld) -> dict:
    prepared = []
    for lm, g in divisors:
        inv = fld.inv(g.terms[lm])
        tail = [(e, c) for e, c in g.terms.items() if e != lm]
        prepared.append((lm, inv, tail))
    work = dict(terms)
    heap = [(key(e), e) for e in work]
    heapq.heapify(heap)
    queued = set(work)
    rem = {}
    mul, sub, is_zero = fld.mul, fld.sub, fld.is_zero
    zero = fld.zero
    while heap:
        _, m = heapq.heappop(heap)
        queued.discard(m)
        if m not in work:
            continue
        c = work.pop(m)
        if is_zero(c):
            continue
        for lm, inv, tail in prepared:
            if all(a <= b for a, b in zip(lm, m)):
                q = mul(c, inv)
                shift = tuple(b - a for a, b in zip(lm, m))
                for e, gc in tail:
                    ne = tuple(x + y for x, y in zip(e, shift))
                    v = sub(work.get(ne, zero), mul(q, gc))
                    if is_zero(v):
                        work.pop(ne, None)
                    else:
                        work[ne] = v
                        if ne not in queued:
                            queued.add(ne)
                            heapq.heappush(heap, (key(ne), ne))
                break
        else:
            rem[m] = c
    return rem


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """(L/lt(f))·f − (L/lt(g))·g with L the lcm of the leading monomials."""
    _common_ring([f, g])
    if not f.terms or not g.terms:
        raise ValueError("zero polynomial")
    fld = f.ring.field
    mf, cf = f.lead()
    mg, cg = g.lead()
    L = mono_lcm(mf, mg)
    a = f.mul_term(tuple(x - y for x, y in zip(L, mf)), fld.inv(cf))
    b = g.mul_term(tuple(x - y for x, y in zip(L, mg)), fld.inv(cg))
    return a - b


# ---------------------------------------------------------------------------
# bases


@dataclass
class GroebnerBasis:
    """A Gröbner basis; when ``reduced`` the members are monic, interreduced
    and listed by decreasing leading monomial."""

    ring: PolyRing
    polys: list = field(default_factory=list)
    reduced: bool = True

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def leading_monomials(self) -> list:
        return [g.lm() for g in self.polys]

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.polys)

    def contains(self, f: Polynomial) -> bool:
        return not normal_form(f, self.polys).terms

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() and g.terms for g in self.polys)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.ring == other.ring
            and [g.terms for g in self.polys] == [g.terms for g in other.polys]
        )


def ideal_membership(f: Polynomial, gb: GroebnerBasis) -> bool:
    if f.ring != gb.ring:
        raise RingMismatchError("incompatible rings")
    return gb.contains(f)


class _PairQueue:
    """Critical pairs keyed by (lcm degree, lcm in the ring order, i, j)."""

    def __init__(self, key):
        self.key = key
        self.heap = []
        self.live = {}

    def add(self, i, j, lcm):
        self.live[(i, j)] = lcm
        # smallest lcm first: by degree, then by the ring order
        heapq.heappush(self.heap, (sum(lcm), tuple(-x for x in self.key(lcm)), i, j))

    def discard(self, pair):
        self.live.pop(pair, None)

    def pop(self):
        while self.heap:
            _, _, i, j = heapq.heappop(self.heap)
            if (i, j) in self.live:
                return i, j, self.live.pop((i, j))
        return None

    def __bool__(self):
        return bool(self.live)

    def items(self):
        return list(self.live.items())


def buchberger(
    generators: Iterable[Polynomial],
    order: MonomialOrder | None = None,
    *,
    degree_cap: int | None = None,
) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``generators``.

    If ``order`` differs from the generators' ring order the computation
    happens in a copy of the ring with that order.  ``degree_cap`` aborts
    with :class:`DegreeCapExceeded` as soon as a critical pair of larger
    lcm degree would be processed.
    """
    gens = list(generators)
    ring = _common_ring(gens)
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
        gens = [Polynomial(ring, dict(g.terms)) for g in gens]
    gens = [g for g in gens if g.terms]
    if not gens:
        return GroebnerBasis(ring, [], True)

    # Start from an interreduced, deterministic generating set.
    polys: list[Polynomial] = []
    active: list[int] = []
    queue = _PairQueue(ring._key)
    key = ring._key

    def install(h: Polynomial):
        idx = len(polys)
        polys.append(h)
        _update(polys, active, queue, idx)

    gens.sort(key=lambda g: key(g.lm()), reverse=True)
    for g in gens:
        h = normal_form(g, [polys[i] for i in active])
        if h.terms:
            h = h.monic()
            if h.is_constant():
                return GroebnerBasis(ring, [ring.one()], True)
            _check_cap(h.total_degree() if degree_cap is not None else 0, degree_cap)
            install(h)

    while queue:
        i, j, lcm = queue.pop()
        _check_cap(sum(lcm), degree_cap)
        s = s_polynomial(polys[i], polys[j])
        h = normal_form(s, [polys[k] for k in active])
        if h.terms:
            h = h.monic()
            if h.is_constant():
                return GroebnerBasis(ring, [ring.one()], True)
            install(h)

    return GroebnerBasis(ring, _interreduce([polys[i] for i in active]), True)


def _check_cap(deg: int, cap: int | None):
    if cap is not None and deg > cap:
        raise DegreeCapExceeded(f"degree cap {cap} exceeded (needed degree {deg})")


def _update(polys, active, queue: _PairQueue, new: int):
    """Gebauer–Möller: install polys[new], pruning pairs by both criteria."""
    h = polys[new]
    lh = h.lm()
    cand = []
    for g in active:
        lg = polys[g].lm()
        coprime = all(not (a and b) for a, b in zip(lh, lg))
        cand.append((g, mono_lcm(lh, lg), coprime))

    # chain criterion among the new pairs; coprime pairs survive this pass
    # so that they can knock out equal-lcm siblings, then are dropped
    kept = []
    for idx, (g, L, coprime) in enumerate(cand):
        if coprime or not (
            any(divides(L2, L) for _, L2, _ in cand[idx + 1 :])
            or any(divides(L2, L) for _, L2, _ in kept)
        ):
            kept.append((g, L, coprime))
    new_pairs = [(g, L) for g, L, coprime in kept if not coprime]

    # old pairs made redundant by the new leading monomial
    for (a, b), L in queue.items():
        if divides(lh, L):
            if mono_lcm(polys[a].lm(), lh) != L and mono_lcm(polys[b].lm(), lh) != L:
                queue.discard((a, b))

    for g, L in new_pairs:
        queue.add(g, new, L)

    active[:] = [g for g in active if not divides(lh, polys[g].lm())] + [new]


def _interreduce(polys: list[Polynomial]) -> list[Polynomial]:
    if not polys:
        return []
    ring = polys[0].ring
    key = ring._key
    # minimal basis: drop elements whose leading monomial is divisible by another's
    polys = sorted(polys, key=lambda g: key(g.lm()), reverse=True)  # smallest lm first
    minimal: list[Polynomial] = []
    for g in polys:
        if not any(divides(h.lm(), g.lm()) for h in minimal):
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        r = normal_form(g, others)
        out.append(r.monic())
    out.sort(key=lambda g: key(g.lm()))
    return out


def is_groebner(polys: Sequence[Polynomial]) -> bool:
    """Buchberger's criterion checked exhaustively (for tests and audits)."""
    polys = [g for g in polys if g.terms]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if normal_form(s_polynomial(polys[i], polys[j]), polys).terms:
                return False
    return True
