"""Exact scalars and multi-modular lifting.

Everything here is a pure function of its arguments.  Rationals are plain
:class:`fractions.Fraction` objects; elements of a quadratic field Q(sqrt d)
are :class:`QuadExt`.  The lifting pipeline is::

    ResidueTable --crt_combine--> (x, M) --rational_reconstruct--> Fraction

wrapped by :func:`lift_to_rationals`, which adds a single leave-one-out pass
to catch one bad prime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import BadReductionError, NotInvertibleError, ParseError, ReconstructionError

MAX_PRIME = 1 << 62

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_from(start: int, count: int, *, avoid: Iterable[int] = ()) -> list[int]:
    """The first ``count`` primes >= start, skipping anything in ``avoid``."""
    avoid = set(avoid)
    out = []
    n = max(start, 2)
    while len(out) < count:
        if n not in avoid and is_prime(n):
            out.append(n)
        n += 1
    return out


def mod_inverse(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise NotInvertibleError(f"not invertible: 0 mod {p}")
    return pow(a, -1, p)


def sqrt_mod(d: int, p: int) -> Optional[int]:
    """Canonical square root of d mod p (the smaller of r, p - r), or None.

    Tonelli-Shanks; p must be prime.
    """
    d %= p
    if d == 0:
        return 0
    if p == 2:
        return d
    if pow(d, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(d, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(d, q, p), pow(d, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


def reduce_rational(x, p: int) -> int:
    """Image of an integer or Fraction in F_p."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise BadReductionError(f"denominator of {x} vanishes mod {p}")
    return x.numerator * pow(x.denominator, -1, p) % p


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {text!r}") from exc


# ---------------------------------------------------------------------------
# residue tables, CRT, Farey reconstruction


@dataclass(frozen=True)
class ResidueTable:
    """Residues of one unknown scalar modulo distinct primes."""

    entries: tuple[tuple[int, int], ...]

    def __init__(self, entries: Iterable[tuple[int, int]]):
        seen = set()
        norm = []
        for p, n in entries:
            p, n = int(p), int(n)
            if p in seen:
                raise ValueError(f"prime {p} listed twice")
            if p < 2:
                raise ValueError(f"{p} is not a prime")
            seen.add(p)
            norm.append((p, n % p))
        object.__setattr__(self, "entries", tuple(norm))

    @classmethod
    def of_value(cls, value, primes: Iterable[int]) -> "ResidueTable":
        return cls((p, reduce_rational(value, p)) for p in primes)

    @classmethod
    def parse(cls, text: str) -> "ResidueTable":
        rows = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError("expected 'p n'", lineno, 1)
            try:
                rows.append((int(parts[0]), int(parts[1])))
            except ValueError as exc:
                raise ParseError(f"non-integer entry in {line!r}", lineno, 1) from exc
        try:
            return cls(rows)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def dumps(self) -> str:
        return "".join(f"{p} {n}\n" for p, n in self.entries)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.entries)

    @property
    def modulus(self) -> int:
        return math.prod(self.primes)

    def without(self, prime: int) -> "ResidueTable":
        return ResidueTable(e for e in self.entries if e[0] != prime)

    def __len__(self) -> int:
        return len(self.entries)


def crt_combine(table: ResidueTable) -> tuple[int, int]:
    """Return (x, M) with M the product of the primes and x = n_i mod p_i."""
    if not table.entries:
        raise ReconstructionError("empty residue table")
    x, m = 0, 1
    for p, n in table.entries:
        # x + m*t = n (mod p)
        t = (n - x) * pow(m, -1, p) % p
        x += m * t
        m *= p
    return x, m


def default_bound(modulus: int) -> int:
    return math.isqrt(modulus // 2)


def rational_reconstruct(x: int, modulus: int, bound: Optional[int] = None) -> Optional[Fraction]:
    """Farey reconstruction: the a/b with |a|, b <= bound and a = x*b (mod M).

    Returns None when no such fraction exists.  With the default bound
    floor(sqrt(M/2)) the answer is unique.
    """
    if modulus <= 0 or not 0 <= x < modulus:
        raise ReconstructionError("invalid residue")
    if bound is None:
        bound = default_bound(modulus)
    if bound < 1:
        raise ReconstructionError("bound must be positive")
    r0, r1 = modulus, x
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound or math.gcd(t1, modulus) != 1:
        return None
    value = Fraction(r1, t1)
    if (value.numerator - x * value.denominator) % modulus:
        return None
    return value


def _height(value: Fraction) -> int:
    return max(abs(value.numerator), value.denominator)


def _confirmed(value: Fraction, table: ResidueTable) -> bool:
    # value would still be recovered after dropping any single prime
    return 2 * _height(value) ** 2 * max(table.primes) < table.modulus


def _reconstruct(table: ResidueTable) -> Optional[Fraction]:
    x, m = crt_combine(table)
    return rational_reconstruct(x, m)


@dataclass(frozen=True)
class Lift:
    """Result of :func:`lift_to_rationals`.

    ``confirmed`` is False when the table has no spare prime, i.e. the
    value fills the whole Farey range and could not be cross-checked.
    """

    value: Fraction
    bad_primes: tuple[int, ...] = ()
    confirmed: bool = True


def lift_to_rationals(table: ResidueTable) -> Lift:
    """CRT plus Farey reconstruction with a single leave-one-out retry.

    A reconstruction is *confirmed* when its height leaves room for one
    prime to be dropped; an unconfirmed full reconstruction from three or
    more primes is cross-checked by dropping each prime in turn: a single
    disagreeing prime is flagged bad, no disagreement returns the value
    marked unconfirmed.
    """
    if len(table) < 2:
        raise ReconstructionError("need at least 2 primes")
    full = _reconstruct(table)
    if full is not None and _confirmed(full, table):
        return Lift(full)

    found = []
    for p, n in table.entries:
        rest = table.without(p)
        cand = _reconstruct(rest)
        if cand is None or not _confirmed(cand, rest):
            continue
        try:
            agrees = reduce_rational(cand, p) == n
        except BadReductionError:
            agrees = False
        if not agrees:
            found.append((p, cand))
    if len(found) == 1:
        p, cand = found[0]
        return Lift(cand, bad_primes=(p,))
    if not found and full is not None:
        # unique within the Farey bound but with no margin to spare
        return Lift(full, confirmed=False)
    raise ReconstructionError("reconstruction failed; need more primes")


# ---------------------------------------------------------------------------
# quadratic fields


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def rational_sqrt(x: Fraction) -> Optional[Fraction]:
    x = Fraction(x)
    if x < 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


class QuadExt:
    """a + b*sqrt(d) with rational a, b and square-free d != 0, 1."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = -1):
        if d == 1 or not is_squarefree(d):
            raise ValueError(f"d = {d} must be square-free and != 1")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ValueError("elements of different quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conj(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def trace(self) -> Fraction:
        return 2 * self.a

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise NotInvertibleError("zero has no inverse")
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        out = QuadExt(1, 0, self.d)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadExt):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self) -> str:
        if self.b == 0:
            return format_rational(self.a)
        c = math.lcm(self.a.denominator, self.b.denominator)
        A, B = int(self.a * c), int(self.b * c)
        if B == 1:
            sb = "s"
        elif B == -1:
            sb = "-s"
        else:
            sb = f"{B}*s"
        if A == 0:
            body = sb
        elif B < 0:
            body = f"{A} - {sb[1:]}"
        else:
            body = f"{A} + {sb}"
        return f"({body})" if c == 1 else f"({body})/{c}"

    def __repr__(self) -> str:
        return f"QuadExt({format_rational(self.a)}, {format_rational(self.b)}, d={self.d})"

    def reduce_split(self, p: int, root: int) -> int:
        """Image in F_p under sqrt(d) -> root."""
        return (reduce_rational(self.a, p) + reduce_rational(self.b, p) * root) % p

    def minimal_polynomial(self) -> tuple[Fraction, Fraction]:
        """(t, n) such that this element is a root of T^2 - t*T + n."""
        return self.trace(), self.norm()


@dataclass(frozen=True)
class ConjugatePair:
    """Two conjugate residues of one element of Q(sqrt d) at a prime.

    ``plus``/``minus`` are ints (split prime) or (a, b) pairs meaning
    a + b*s in F_p[s]/(s^2 - d) (inert prime).  ``root`` is the canonical
    square root of d mod p when p splits.
    """

    p: int
    plus: object
    minus: object
    root: Optional[int] = None


def _as_pair(x, p: int) -> tuple[int, int]:
    if isinstance(x, tuple):
        return x[0] % p, x[1] % p
    return x % p, 0


def _symmetric_residues(pair: ConjugatePair, d: int) -> tuple[int, int]:
    p = pair.p
    (a1, b1), (a2, b2) = _as_pair(pair.plus, p), _as_pair(pair.minus, p)
    t = ((a1 + a2) % p, (b1 + b2) % p)
    n = ((a1 * a2 + d * b1 * b2) % p, (a1 * b2 + a2 * b1) % p)
    if t[1] or n[1]:
        raise ReconstructionError(f"residues at {p} are not a conjugate pair")
    return t[0], n[0]


def quad_lift(pairs: Sequence[ConjugatePair], d: int) -> QuadExt:
    """Lift an element of Q(sqrt d) from conjugate residue pairs.

    Trace and norm are rational, so they are lifted with
    :func:`lift_to_rationals`; the element is then the root of
    T^2 - tT + n whose sqrt(d)-coefficient is >= 0.
    """
    traces, norms = [], []
    for pair in pairs:
        t, n = _symmetric_residues(pair, d)
        traces.append((pair.p, t))
        norms.append((pair.p, n))
    t = lift_to_rationals(ResidueTable(traces)).value
    n = lift_to_rationals(ResidueTable(norms)).value
    return quad_from_trace_norm(t, n, d)


def quad_from_trace_norm(t, n, d: int) -> QuadExt:
    t, n = Fraction(t), Fraction(n)
    b2 = (t * t - 4 * n) / (4 * d)
    b = rational_sqrt(b2)
    if b is None:
        raise ReconstructionError(f"not an element of Q(sqrt {d}): T^2 - ({t})T + ({n})")
    return QuadExt(t / 2, b, d)
