"""Census of non-reduced hyperplane sections of the Veronese surface over F_q.

Every hyperplane of P^5 is tested against a fixed curve S0 on the Veronese
surface (the image of seven conjugate lines); the sections with at most 7
points are exactly the q^2 + q + 1 double conics, i.e. squares of linear
forms on P^2.

    python3 demos/census.py [q] [jobs]
"""

import sys
import time

from schemekit.modsearch import SearchSpec, run_search
from schemekit.veronese import census_curve, square_hyperplanes


def main(q=5, jobs=1):
    curve = census_curve(q)
    print(f"S0 over F_{q}: certificate", curve.certificate())
    R = curve.ideal.ring
    spec = SearchSpec(R, list(curve.ideal.gens), [], list(R.gens()), [None] * 6, 7, [q], name=f"census-{q}")
    start = time.perf_counter()
    [res] = run_search(spec, jobs=jobs).sweeps[q]
    elapsed = time.perf_counter() - start
    hits = {tuple(int(c) for c in h.coefficients) for h in res.hits}
    print(f"{res.candidates} hyperplanes swept in {elapsed:.1f}s ({res.method})")
    print(f"{len(hits)} hits; q^2+q+1 = {q * q + q + 1}")
    print("hits = squares of linear forms:", hits == square_hyperplanes(q))


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:]]
    main(*args)
