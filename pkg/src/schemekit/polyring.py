"""Sparse multivariate polynomials over a pluggable coefficient field.

A polynomial is a dict ``{exponent tuple: coefficient}`` with no zero
coefficients, attached to a :class:`PolyRing` that fixes the field, the
variable names and the monomial order.  Term order only matters when
someone asks for it (leading terms, printing), so the dict is the
canonical form and equality is dict equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ParseError, RingMismatchError
from .fields import Field

Monomial = tuple


# ---------------------------------------------------------------------------
# monomial orders


def _grevlex_key(e):
    return (-sum(e),) + e[::-1]


def _lex_key(e):
    return tuple(-x for x in e)


@dataclass(frozen=True)
class MonomialOrder:
    """grevlex, lex, or block(k): grevlex on the first k variables, ties
    broken by grevlex on the rest.  block(k) eliminates the first k."""

    kind: str = "grevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.k < 1:
            raise ValueError("block order needs k >= 1")

    def sort_key(self, e: Monomial):
        """Ascending sort by this key lists monomials from largest to smallest."""
        if self.kind == "grevlex":
            return (-sum(e),) + e[::-1]
        if self.kind == "lex":
            return tuple(-x for x in e)
        k = self.k
        a, b = e[:k], e[k:]
        return (-sum(a),) + a[::-1] + (-sum(b),) + b[::-1]

    def key_function(self):
        if self.kind == "grevlex":
            return _grevlex_key
        if self.kind == "lex":
            return _lex_key
        return self.sort_key

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.sort_key(a) < self.sort_key(b)

    def __str__(self):
        return f"block {self.k}" if self.kind == "block" else self.kind

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        parts = text.split()
        if parts[:1] == ["block"] and len(parts) == 2:
            return cls("block", int(parts[1]))
        if len(parts) == 1:
            return cls(parts[0])
        raise ValueError(f"bad monomial order {text!r}")


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# rings


class PolyRing:
    def __init__(self, field: Field, names: Sequence[str], order: MonomialOrder = GREVLEX):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        for n in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
                raise ValueError(f"bad variable name {n!r}")
        if field.sqrt_d is not None and "s" in names:
            raise ValueError("'s' is reserved for the adjoined square root")
        if order.kind == "block" and order.k >= len(names) + 1:
            raise ValueError("block size exceeds the number of variables")
        self.field = field
        self.names = names
        self.order = order
        self.nvars = len(names)
        self._key = order.key_function()

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.order == other.order
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.names, self.order, self.field))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {list(self.names)}, {self.order})"

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.field, self.names, order)

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(field, self.names, self.order)

    def with_names(self, names: Sequence[str], order: MonomialOrder | None = None) -> "PolyRing":
        return PolyRing(self.field, names, order or self.order)

    # construction ---------------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field.convert(c)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has the wrong length")
        c = self.field.convert(coeff)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {exps: c})

    def gen(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def var(self, name: str) -> "Polynomial":
        return self.gen(self.names.index(name))

    def from_dict(self, terms: Mapping[Monomial, object]) -> "Polynomial":
        f = self.field
        out = {}
        for e, c in terms.items():
            c = f.convert(c)
            if not f.is_zero(c):
                out[tuple(e)] = c
        return Polynomial(self, out)

    def linear_form(self, coeffs: Sequence) -> "Polynomial":
        if len(coeffs) != self.nvars:
            raise ValueError("one coefficient per variable expected")
        out = self.zero()
        for i, c in enumerate(coeffs):
            out = out + self.gen(i) * c
        return out

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()

    def monomials_of_degree(self, d: int) -> list[Monomial]:
        """All exponent vectors of total degree d, largest first."""
        out = list(_compositions(d, self.nvars))
        out.sort(key=self._key)
        return out


def _compositions(d: int, n: int):
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, n - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lead = None

    # basic queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def lead(self) -> tuple[Monomial, object]:
        """(leading monomial, leading coefficient)."""
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial")
            m = min(self.terms, key=self.ring._key)
            self._lead = (m, self.terms[m])
        return self._lead

    def leading_term(self) -> tuple[object, Monomial]:
        """(coefficient, monomial) of the largest term."""
        m, c = self.lead()
        return c, m

    def lm(self) -> Monomial:
        return self.lead()[0]

    def lc(self):
        return self.lead()[1]

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        key = self.ring._key
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def variables(self) -> set[int]:
        out = set()
        for e in self.terms:
            out.update(i for i, x in enumerate(e) if x)
        return out

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), self.ring.field.zero)

    # arithmetic -------------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatchError("incompatible rings")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._lift(other)
        f = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = f.add(out[e], c)
                if f.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(self.ring.field.convert(other))
        self._check(other)
        f = self.ring.field
        out: dict = {}
        add, mul, is_zero = f.add, f.mul, f.is_zero
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = mul(c1, c2)
                if e in out:
                    out[e] = add(out[e], c)
                else:
                    out[e] = c
        return Polynomial(self.ring, {e: c for e, c in out.items() if not is_zero(c)})

    def __rmul__(self, other):
        return self.scale(self.ring.field.convert(other))

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        if f.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {e: f.mul(a, c) for e, a in self.terms.items()})

    def mul_term(self, mono: Monomial, c) -> "Polynomial":
        f = self.ring.field
        out = {}
        for e, a in self.terms.items():
            out[tuple(x + y for x, y in zip(e, mono))] = f.mul(a, c)
        return Polynomial(self.ring, out)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        f = self.ring.field
        return self.scale(f.inv(self.lc()))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int,)) or other is None:
            return other is not None and self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # calculus / evaluation ----------------------------------------------------

    def derivative(self, i: int) -> "Polynomial":
        f = self.ring.field
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                c2 = f.mul(c, f.from_int(k))
                if not f.is_zero(c2):
                    out[e[:i] + (k - 1,) + e[i + 1 :]] = c2
        return Polynomial(self.ring, out)

    def evaluate(self, point: Sequence):
        if len(point) != self.ring.nvars:
            raise ValueError("point has the wrong number of coordinates")
        f = self.ring.field
        pt = [f.convert(x) for x in point]
        total = f.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = f.mul(v, f.pow(x, k))
            total = f.add(total, v)
        return total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace variable i by images[i]; all images share one target ring."""
        if len(images) != self.ring.nvars:
            raise ValueError("one image per variable expected")
        target = images[0].ring if images else self.ring
        for g in images:
            if g.ring != target:
                raise RingMismatchError("images live in different rings")
        powers: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = images[i] ** k
            return powers[key]

        out = target.zero()
        for e, c in self.terms.items():
            term = target.constant(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def map_coefficients(self, target: PolyRing, fn=None) -> "Polynomial":
        """Move to a ring with the same variable count (e.g. reduce mod p)."""
        if target.nvars != self.ring.nvars:
            raise RingMismatchError("variable counts differ")
        conv = fn or target.field.convert
        f = target.field
        out = {}
        for e, c in self.terms.items():
            c2 = conv(c)
            if not f.is_zero(c2):
                out[e] = c2
        return Polynomial(target, out)

    def to_ring(self, target: PolyRing) -> "Polynomial":
        """Same field, possibly different order or variable embedding by name."""
        if target.names == self.ring.names:
            return Polynomial(target, dict(self.terms)) if target.field == self.ring.field else self.map_coefficients(target)
        idx = [target.names.index(n) for n in self.ring.names]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * target.nvars
            for i, k in zip(idx, e):
                ne[i] = k
            out[tuple(ne)] = c
        p = Polynomial(target, out)
        return p if target.field == self.ring.field else p.map_coefficients(target)

    # printing -----------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.ring
        f = ring.field
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(ring.names, e) if k
            )
            sign, body = _format_coeff(f, c)
            if mono:
                if body == "1":
                    text = mono
                else:
                    text = f"{body}*{mono}"
            else:
                text = body
            parts.append((sign, text))
        out = ("-" if parts[0][0] < 0 else "") + parts[0][1]
        for sign, text in parts[1:]:
            out += (" - " if sign < 0 else " + ") + text
        return out

    def __repr__(self):
        return f"Polynomial({self})"


def _format_coeff(field: Field, c) -> tuple[int, str]:
    from fractions import Fraction

    from .numbers import QuadExt, format_rational

    if isinstance(c, Fraction):
        return (-1 if c < 0 else 1), format_rational(abs(c))
    if isinstance(c, QuadExt):
        if c.b == 0:
            return (-1 if c.a < 0 else 1), format_rational(abs(c.a))
        return 1, str(c) if str(c).startswith("(") else f"({c})"
    if isinstance(c, tuple):
        text = field.fmt(c)
        return 1, text if text.isdigit() else f"({text})"
    return 1, field.fmt(c)


# ---------------------------------------------------------------------------
# parser


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                bad = len(text) - len(text[pos:].lstrip())
                raise ParseError(f"unexpected character {text[bad]!r}", 1, bad + 1)
            col = m.start(m.lastindex) + 1
            if m.group(1):
                self.tokens.append(("num", int(m.group(1)), col))
            elif m.group(2):
                self.tokens.append(("name", m.group(2), col))
            else:
                op = m.group(3)
                self.tokens.append(("op", "^" if op == "**" else op, col))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", None, len(self.text) + 1)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, 1, tok[2])

    def parse(self) -> Polynomial:
        if not self.tokens:
            self.error("empty polynomial")
        out = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return out

    def expr(self):
        tok = self.peek()
        sign = 1
        if tok == ("op", "-", tok[2]) or (tok[0] == "op" and tok[1] in "+-"):
            self.take()
            sign = -1 if tok[1] == "-" else 1
        out = self.term()
        if sign < 0:
            out = -out
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                out = out + rhs if tok[1] == "+" else out - rhs
            else:
                return out

    def term(self):
        out = self.power()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                out = out * self.power()
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                den = self.power()
                if not den.is_constant() or den.is_zero():
                    self.error("can only divide by a nonzero constant", tok)
                out = out.scale(self.ring.field.inv(den.constant_coefficient()))
            else:
                return out

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp = self.take()
            if exp[0] != "num":
                self.error("exponent must be a non-negative integer", exp)
            base = base ** exp[1]
        return base

    def atom(self):
        tok = self.take()
        kind, val, col = tok
        ring = self.ring
        if kind == "num":
            return ring.constant(val)
        if kind == "name":
            if val in ring.names:
                return ring.var(val)
            if val == "s" and ring.field.sqrt_d is not None:
                c = ring.field.sqrt_symbol()
                return Polynomial(ring, {(0,) * ring.nvars: c})
            self.error(f"unknown variable {val!r}", tok)
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                self.error("expected ')'", close)
            return inner
        if kind == "op" and val == "-":
            return -self.power()
        self.error(f"unexpected {val!r}" if val is not None else "unexpected end of input", tok)


def parse_polys(ring: PolyRing, lines: Iterable[str]) -> list[Polynomial]:
    return [ring.parse(line) for line in lines]
