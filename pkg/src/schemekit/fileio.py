"""Plain-text formats: ideal/scheme files, search specs, residue files.

Ideal file::

    # comment
    field QQ                     # or: GF p | QQ adjoin sqrt d | GF p adjoin sqrt d
    vars x y z
    order grevlex                # or: lex | block k
    ambient 2                    # optional
    x^2 - y*z
    ...

Header lines come first; every later non-blank line is one generator.
Search specs use the same header and template body, followed by::

    [slice]
    <generators of the slicing scheme>
    [pencil]
    adjoin sqrt -7               # optional
    4 : y                        # fixed coefficient : form
    free : x                     # free coefficient : form
    threshold 1
    primes 5 7 11
    name demo
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import ParseError, SchemeKitError
from .fields import Field, GaloisField, PrimeField, QuadraticField, RationalField, SplitPrimeField, field_from_header
from .numbers import ConjugatePair, is_prime
from .polyring import MonomialOrder, Polynomial, PolyRing

HEADER_KEYS = ("field", "vars", "order", "ambient")
DEFAULT_PRIME_COUNT = 8


@dataclass
class IdealFile:
    ring: PolyRing
    generators: list
    ambient: Optional[int] = None

    def dumps(self) -> str:
        lines = [f"field {field_header(self.ring.field)}", "vars " + " ".join(self.ring.names)]
        lines.append(f"order {self.ring.order}")
        if self.ambient is not None:
            lines.append(f"ambient {self.ambient}")
        lines.extend(str(g) for g in self.generators)
        return "\n".join(lines) + "\n"


def field_header(fld: Field) -> str:
    if isinstance(fld, RationalField):
        return "QQ"
    if isinstance(fld, QuadraticField):
        return f"QQ adjoin sqrt {fld.sqrt_d}"
    if isinstance(fld, SplitPrimeField):
        return f"GF {fld.p} adjoin sqrt {fld.sqrt_d}"
    if isinstance(fld, GaloisField) and fld.sqrt_d is not None:
        return f"GF {fld.p} adjoin sqrt {fld.sqrt_d}"
    if isinstance(fld, PrimeField):
        return f"GF {fld.p}"
    raise SchemeKitError(f"{fld!r} has no file representation")


def _strip(raw: str) -> str:
    return raw.split("#", 1)[0].strip()


def _parse_field(value: str, lineno: int) -> Field:
    parts = value.split()
    try:
        if parts[:1] == ["QQ"] and len(parts) == 1:
            return field_from_header("QQ")
        if parts[:1] == ["QQ"] and parts[1:3] == ["adjoin", "sqrt"] and len(parts) == 4:
            return field_from_header("QQ", d=int(parts[3]))
        if parts[:1] == ["GF"] and len(parts) == 2:
            p = int(parts[1])
            if not is_prime(p):
                raise ParseError(f"{p} is not prime", lineno, 1)
            return field_from_header("GF", p)
        if parts[:1] == ["GF"] and parts[2:4] == ["adjoin", "sqrt"] and len(parts) == 5:
            p = int(parts[1])
            if not is_prime(p):
                raise ParseError(f"{p} is not prime", lineno, 1)
            return field_from_header("GF", p, int(parts[4]))
    except ValueError as exc:
        raise ParseError(f"bad field header: {exc}", lineno, 1) from exc
    raise ParseError(f"bad field header {value!r}", lineno, 1)


def _parse_poly(ring: PolyRing, text: str, lineno: int, offset: int = 0) -> Polynomial:
    try:
        return ring.parse(text)
    except ParseError as exc:
        raise ParseError(exc.message, lineno, exc.column + offset) from None


class _HeaderState:
    def __init__(self):
        self.values: dict = {}

    def feed(self, line: str, lineno: int) -> bool:
        """Consume a header line; False if the line is not a header."""
        key, _, value = line.partition(" ")
        if key in HEADER_KEYS:
            if key in self.values:
                raise ParseError(f"duplicate header {key!r}", lineno, 1)
            if not value.strip():
                raise ParseError(f"header {key!r} needs a value", lineno, 1)
            self.values[key] = (value.strip(), lineno)
            return True
        return False

    def ring(self, field_override: Field | None = None) -> PolyRing:
        if "vars" not in self.values:
            raise ParseError("missing 'vars' header", 1, 1)
        fld_text, fl = self.values.get("field", ("QQ", 1))
        fld = field_override or _parse_field(fld_text, fl)
        names, vl = self.values["vars"]
        order = MonomialOrder()
        if "order" in self.values:
            text, ol = self.values["order"]
            try:
                order = MonomialOrder.parse(text)
            except ValueError as exc:
                raise ParseError(str(exc), ol, 1) from exc
        try:
            return PolyRing(fld, names.split(), order)
        except (ValueError, SchemeKitError) as exc:
            raise ParseError(str(exc), vl, 1) from exc

    def ambient(self, ring: PolyRing) -> Optional[int]:
        if "ambient" not in self.values:
            return None
        text, al = self.values["ambient"]
        try:
            n = int(text)
        except ValueError:
            raise ParseError(f"bad ambient dimension {text!r}", al, 1) from None
        if n != ring.nvars - 1:
            raise ParseError(f"ambient {n} does not match {ring.nvars} variables", al, 1)
        return n


def _looks_like_header(line: str) -> bool:
    """A bare word followed by a space and something that is not an
    operator: polynomial lines never look like that."""
    key, sep, rest = line.partition(" ")
    if not sep or not key.isidentifier():
        return False
    rest = rest.lstrip()
    return bool(rest) and rest[0] not in "+-*/^)"


def parse_ideal_file(text: str) -> IdealFile:
    headers = _HeaderState()
    body = []
    in_body = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if not in_body and headers.feed(line, lineno):
            continue
        if not in_body and _looks_like_header(line):
            raise ParseError(f"unknown header key {line.split()[0]!r}", lineno, 1)
        in_body = True
        body.append((lineno, raw.split("#", 1)[0]))
    ring = headers.ring()
    gens = []
    for lineno, raw in body:
        offset = len(raw) - len(raw.lstrip())
        gens.append(_parse_poly(ring, raw.strip(), lineno, offset))
    return IdealFile(ring, gens, headers.ambient(ring))


def read_ideal_file(path) -> IdealFile:
    with open(path, encoding="utf-8") as fh:
        return parse_ideal_file(fh.read())


# ---------------------------------------------------------------------------
# search specs


@dataclass
class SpecFile:
    ring: PolyRing
    template: list
    slice: list
    forms: list
    slots: list
    threshold: int
    primes: list
    adjoin: Optional[int] = None
    name: str = "search"
    extra: dict = field(default_factory=dict)

    def to_spec(self):
        from .modsearch import SearchSpec

        return SearchSpec(
            self.ring,
            self.template,
            self.slice,
            self.forms,
            self.slots,
            self.threshold,
            self.primes,
            self.adjoin,
            self.name,
        )


def default_primes(count: int = DEFAULT_PRIME_COUNT, avoid: int = 1) -> list[int]:
    """First ``count`` primes ≥ 5 not dividing ``avoid``."""
    out = []
    n = 5
    while len(out) < count:
        if avoid % n and is_prime(n):
            out.append(n)
        n += 1
    return out


def parse_spec_file(text: str) -> SpecFile:
    lines = [(i, raw.split("#", 1)[0]) for i, raw in enumerate(text.splitlines(), 1)]
    adjoin = None
    for lineno, raw in lines:
        parts = raw.split()
        if parts[:2] == ["adjoin", "sqrt"]:
            if len(parts) != 3:
                raise ParseError("expected 'adjoin sqrt d'", lineno, 1)
            try:
                adjoin = int(parts[2])
            except ValueError:
                raise ParseError(f"bad square root {parts[2]!r}", lineno, 1) from None

    headers = _HeaderState()
    section = "template"
    template, slice_, pencil = [], [], []
    threshold = None
    primes = None
    name = "search"
    for lineno, raw in lines:
        line = raw.strip()
        if not line:
            continue
        if line.startswith("["):
            if line not in ("[slice]", "[pencil]"):
                raise ParseError(f"unknown section {line!r}", lineno, 1)
            section = line[1:-1]
            continue
        word = line.split()[0]
        if word == "adjoin":
            continue
        if word == "threshold":
            try:
                threshold = int(line.split(None, 1)[1])
            except (IndexError, ValueError):
                raise ParseError("expected 'threshold T'", lineno, 1) from None
            continue
        if word == "primes":
            try:
                primes = [int(x) for x in line.split()[1:]]
            except ValueError:
                raise ParseError("expected 'primes p1 p2 ...'", lineno, 1) from None
            continue
        if word == "name":
            name = line.split(None, 1)[1] if len(line.split()) > 1 else name
            continue
        if section == "template" and not template and headers.feed(line, lineno):
            continue
        if section == "pencil":
            pencil.append((lineno, raw))
        elif _looks_like_header(line) and section == "template" and not template:
            raise ParseError(f"unknown header key {word!r}", lineno, 1)
        else:
            (template if section == "template" else slice_).append((lineno, raw))

    override = None
    if adjoin is not None:
        fld_text, _ = headers.values.get("field", ("QQ", 1))
        if fld_text.split()[0] != "QQ":
            raise ParseError("'adjoin sqrt d' needs field QQ", 1, 1)
        override = QuadraticField(adjoin)
    ring = headers.ring(override)
    if threshold is None:
        raise ParseError("missing 'threshold T'", len(lines) or 1, 1)

    def polys(rows):
        out = []
        for lineno, raw in rows:
            offset = len(raw) - len(raw.lstrip())
            out.append(_parse_poly(ring, raw.strip(), lineno, offset))
        return out

    forms, slots = [], []
    for lineno, raw in pencil:
        value, sep, form = raw.partition(":")
        if not sep:
            raise ParseError("pencil lines are 'value : form' or 'free : form'", lineno, 1)
        col = raw.index(":") + 2
        forms.append(_parse_poly(ring, form.strip(), lineno, col))
        value = value.strip()
        if value == "free":
            slots.append(None)
        else:
            c = _parse_poly(ring, value, lineno, 1)
            if not c.is_constant():
                raise ParseError("a fixed coefficient must be a constant", lineno, 1)
            slots.append(c.constant_coefficient())
    if primes is None:
        if isinstance(ring.field, PrimeField):
            primes = [ring.field.p]
        else:
            primes = default_primes(avoid=2 * abs(adjoin) if adjoin else 2)
    return SpecFile(ring, polys(template), polys(slice_), forms, slots, threshold, primes, adjoin, name)


def dumps_spec(spec) -> str:
    """Text form of a SearchSpec (inverse of :func:`parse_spec_file`)."""
    ring = spec.ring
    fld = ring.field
    header = "QQ" if isinstance(fld, QuadraticField) else field_header(fld)
    lines = [f"name {spec.name}", f"field {header}", "vars " + " ".join(ring.names), f"order {ring.order}"]
    lines.extend(str(g) for g in spec.template)
    lines.append("[slice]")
    lines.extend(str(g) for g in spec.slice)
    lines.append("[pencil]")
    if spec.adjoin is not None:
        lines.append(f"adjoin sqrt {spec.adjoin}")
    for form, slot in zip(spec.forms, spec.slots):
        value = "free" if slot is None else str(ring.constant(slot))
        lines.append(f"{value} : {form}")
    lines.append(f"threshold {spec.threshold}")
    lines.append("primes " + " ".join(map(str, spec.primes)))
    return "\n".join(lines) + "\n"


def read_spec_file(path) -> SpecFile:
    with open(path, encoding="utf-8") as fh:
        return parse_spec_file(fh.read())


# ---------------------------------------------------------------------------
# conjugate residue pairs


def _parse_residue(tok: str, lineno: int):
    try:
        if ":" in tok:
            a, b = tok.split(":")
            return (int(a), int(b))
        return int(tok)
    except ValueError:
        raise ParseError(f"bad residue {tok!r}", lineno, 1) from None


def parse_pairs_file(text: str) -> list[ConjugatePair]:
    """Lines ``p u v``: the two conjugate images of one element at p.
    At an inert prime write a + b·s as ``a:b``."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError("expected 'p u v'", lineno, 1)
        try:
            p = int(parts[0])
        except ValueError:
            raise ParseError(f"bad prime {parts[0]!r}", lineno, 1) from None
        out.append(ConjugatePair(p, _parse_residue(parts[1], lineno), _parse_residue(parts[2], lineno)))
    return out
