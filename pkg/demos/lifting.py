"""Multi-modular lifting: rationals, a corrupted prime, and Q(sqrt -7).

    python3 demos/lifting.py
"""

from fractions import Fraction

from schemekit.numbers import (
    ConjugatePair,
    QuadExt,
    ResidueTable,
    format_rational,
    lift_to_rationals,
    primes_from,
    quad_lift,
    sqrt_mod,
)


def main():
    primes = primes_from(10**4, 6)
    value = Fraction(-355, 113)
    table = ResidueTable.of_value(value, primes)
    print("residues:", table.entries)
    print("lifted:", format_rational(lift_to_rationals(table).value))

    bad = primes[2]
    corrupted = ResidueTable((p, n + 1 if p == bad else n) for p, n in table.entries)
    lift = lift_to_rationals(corrupted)
    print(f"corrupting the residue at {bad}: lifted {format_rational(lift.value)}, bad primes {lift.bad_primes}")

    # a = (sqrt(-7) - 3)/2 from its two images at primes where -7 is a square
    a = QuadExt(Fraction(-3, 2), Fraction(1, 2), -7)
    pairs = []
    for p in primes_from(11, 30):
        r = sqrt_mod(-7, p)
        if r is not None and len(pairs) < 8:
            pairs.append(ConjugatePair(p, a.reduce_split(p, r), a.conj().reduce_split(p, r), r))
    lifted = quad_lift(pairs, -7)
    t, n = lifted.minimal_polynomial()
    print(f"from {len(pairs)} split primes: {lifted}, minimal polynomial T^2 - ({t})T + {n}")


if __name__ == "__main__":
    main()
