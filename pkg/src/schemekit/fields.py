"""Coefficient fields for :mod:`schemekit.polyring`.

A field object knows how to combine its elements; the elements themselves
are cheap native values (``int`` for F_p, ``Fraction`` for Q, tuples for
F_{p^k}, :class:`~schemekit.numbers.QuadExt` for Q(sqrt d)).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Sequence

from .errors import BadReductionError, NotInvertibleError
from .numbers import QuadExt, format_rational, is_prime, reduce_rational


class Field:
    characteristic: int = 0
    size: int | None = None
    # symbol bound to the adjoined square root, if any
    sqrt_d: int | None = None

    zero: object
    one: object

    def is_zero(self, a) -> bool:
        return a == self.zero

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if self.is_zero(a):
            raise NotInvertibleError("not invertible")
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        out, base = self.one, a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def from_int(self, n: int):
        raise NotImplementedError

    def convert(self, x):
        """Coerce ints, Fractions and QuadExt values into this field."""
        raise NotImplementedError

    def sqrt_symbol(self):
        raise ValueError(f"{self} has no adjoined square root")

    def fmt(self, a) -> str:
        return str(a)

    def pth_root(self, a):
        raise ValueError("p-th roots only exist in positive characteristic")

    def elements(self) -> Iterator:
        raise ValueError(f"{self} is infinite")

    def element(self, index: int):
        raise ValueError(f"{self} is infinite")


class RationalField(Field):
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def convert(self, x):
        if isinstance(x, QuadExt):
            if x.b:
                raise BadReductionError(f"{x} is not rational")
            return x.a
        return Fraction(x)

    def inv(self, a):
        if a == 0:
            raise NotInvertibleError("not invertible")
        return 1 / a

    def fmt(self, a):
        return format_rational(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class QuadraticField(Field):
    """Q(sqrt d); the adjoined root prints and parses as ``s``."""

    def __init__(self, d: int):
        QuadExt(0, 0, d)  # validates d
        self.d = d
        self.sqrt_d = d
        self.zero = QuadExt(0, 0, d)
        self.one = QuadExt(1, 0, d)

    def is_zero(self, a):
        return a.a == 0 and a.b == 0

    def inv(self, a):
        return a.inverse()

    def from_int(self, n):
        return QuadExt(n, 0, self.d)

    def convert(self, x):
        if isinstance(x, QuadExt):
            if x.d != self.d:
                raise BadReductionError(f"{x} is not in Q(sqrt {self.d})")
            return x
        return QuadExt(Fraction(x), 0, self.d)

    def sqrt_symbol(self):
        return QuadExt(0, 1, self.d)

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.d == self.d

    def __hash__(self):
        return hash(("QQ", self.d))

    def __repr__(self):
        return f"QQ(sqrt {self.d})"


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.size = p
        self.zero = 0
        self.one = 1

    def is_zero(self, a):
        return a == 0

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise NotInvertibleError(f"not invertible: 0 mod {self.p}")
        return pow(a, -1, self.p)

    def pow(self, a, k):
        return pow(a, k, self.p)

    def from_int(self, n):
        return n % self.p

    def convert(self, x):
        if isinstance(x, QuadExt):
            if x.b:
                raise BadReductionError(f"{x} needs sqrt({x.d}); adjoin it or pick a split prime")
            x = x.a
        if isinstance(x, int):
            return x % self.p
        return reduce_rational(x, self.p)

    def pth_root(self, a):
        return a

    def elements(self):
        return iter(range(self.p))

    def element(self, index):
        return index

    def __eq__(self, other):
        return type(other) is PrimeField and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def _poly_mulmod(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int) -> tuple:
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    for i in range(2 * k - 2, k - 1, -1):
        c = prod[i] % p
        if c:
            # modulus is monic
            for j in range(k):
                prod[i - k + j] -= c * modulus[j]
    return tuple(x % p for x in prod[:k])


class GaloisField(Field):
    """F_p[t]/(m(t)) for a monic irreducible m; elements are coefficient tuples.

    ``modulus`` lists coefficients from the constant term up and must be
    monic.  With ``modulus = (-d, 0, 1)`` this is F_p(sqrt d) for a
    non-residue d, and the adjoined root is the class of t.
    """

    def __init__(self, p: int, modulus: Sequence[int], sqrt_d: int | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        modulus = tuple(int(c) % p for c in modulus)
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        self.p = p
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.characteristic = p
        self.size = p**self.degree
        self.zero = (0,) * self.degree
        self.one = (1,) + (0,) * (self.degree - 1)
        self.sqrt_d = sqrt_d

    @classmethod
    def quadratic(cls, p: int, d: int) -> "GaloisField":
        from .numbers import sqrt_mod

        if sqrt_mod(d, p) is not None:
            raise ValueError(f"{d} is a square mod {p}; F_p(sqrt d) is not a field")
        return cls(p, (-d, 0, 1), sqrt_d=d)

    def is_zero(self, a):
        return not any(a)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        return _poly_mulmod(a, b, self.modulus, self.p)

    def inv(self, a):
        if self.is_zero(a):
            raise NotInvertibleError("not invertible")
        return self.pow(a, self.size - 2)

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.degree - 1)

    def generator(self):
        return (0, 1) + (0,) * (self.degree - 2)

    def convert(self, x):
        if isinstance(x, tuple):
            return tuple(c % self.p for c in x)
        if isinstance(x, QuadExt):
            if x.b and x.d != self.sqrt_d:
                raise BadReductionError(f"{x} needs sqrt({x.d}) which {self} lacks")
            a = reduce_rational(x.a, self.p)
            b = reduce_rational(x.b, self.p)
            return (a, b) + (0,) * (self.degree - 2)
        return (reduce_rational(x, self.p),) + (0,) * (self.degree - 1)

    def sqrt_symbol(self):
        if self.sqrt_d is None:
            raise ValueError(f"{self} has no adjoined square root")
        return self.generator()

    def frobenius(self, a):
        return self.pow(a, self.p)

    def pth_root(self, a):
        return self.pow(a, self.p ** (self.degree - 1))

    def elements(self):
        return (self.element(i) for i in range(self.size))

    def element(self, index):
        # index = c0 * p^(k-1) + ... + c_{k-1}: lexicographic on (c0, c1, ...)
        out = []
        for _ in range(self.degree):
            index, r = divmod(index, self.p)
            out.append(r)
        return tuple(reversed(out))

    def in_prime_field(self, a) -> bool:
        return not any(a[1:])

    def fmt(self, a):
        if self.sqrt_d is not None and self.degree == 2:
            x, y = a
            if not y:
                return str(x)
            return f"{x}+{y}*s" if x else f"{y}*s"
        return "[" + ",".join(map(str, a)) + "]"

    def __eq__(self, other):
        return isinstance(other, GaloisField) and (other.p, other.modulus) == (self.p, self.modulus)

    def __hash__(self):
        return hash(("GF", self.p, self.modulus))

    def __repr__(self):
        if self.sqrt_d is not None:
            return f"GF({self.p})(sqrt {self.sqrt_d})"
        return f"GF({self.p}^{self.degree})"


def field_from_header(kind: str, p: int | None = None, d: int | None = None) -> Field:
    """Build the field named by an ideal-file header."""
    if kind == "QQ":
        return QQ if d is None else QuadraticField(d)
    if kind == "GF":
        if d is None:
            return PrimeField(p)
        from .numbers import sqrt_mod

        if sqrt_mod(d, p) is None:
            return GaloisField.quadratic(p, d)
        # split prime: sqrt d already lives in F_p
        return SplitPrimeField(p, d)
    raise ValueError(f"unknown field {kind!r}")


class SplitPrimeField(PrimeField):
    """F_p where d is a square; the symbol ``s`` maps to a chosen root of d.

    ``sign`` selects the embedding: +1 uses the canonical (smaller) root,
    -1 its negative.
    """

    def __init__(self, p: int, d: int, sign: int = 1):
        from .numbers import sqrt_mod

        super().__init__(p)
        r = sqrt_mod(d, p)
        if r is None:
            raise ValueError(f"{d} is not a square mod {p}")
        self.sqrt_d = d
        self.sign = sign
        self.root = r if sign > 0 else (-r) % p

    def convert(self, x):
        if isinstance(x, QuadExt):
            if x.d != self.sqrt_d and x.b:
                raise BadReductionError(f"{x} needs sqrt({x.d})")
            return x.reduce_split(self.p, self.root)
        return super().convert(x)

    def sqrt_symbol(self):
        return self.root

    def __eq__(self, other):
        return (
            isinstance(other, SplitPrimeField)
            and (other.p, other.sqrt_d, other.root) == (self.p, self.sqrt_d, self.root)
        )

    def __hash__(self):
        return hash(("GFs", self.p, self.sqrt_d, self.root))

    def __repr__(self):
        return f"GF({self.p})(s={self.root})"
