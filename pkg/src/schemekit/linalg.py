"""Dense exact linear algebra over any :class:`~schemekit.fields.Field`.

Matrices are lists of rows (lists of field elements).  Sizes in this
package stay in the hundreds, so plain Gaussian elimination is enough.
"""

from __future__ import annotations

from typing import Sequence

from .fields import Field


def rref(rows: Sequence[Sequence], field: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    is_zero, mul, sub, inv = field.is_zero, field.mul, field.sub, field.inv
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = inv(m[r][c])
        m[r] = [mul(x, s) for x in m[r]]
        for i in range(len(m)):
            if i != r and not is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [sub(a, mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], field: Field) -> int:
    return len(rref(rows, field)[1])


def kernel(rows: Sequence[Sequence], field: Field, ncols: int | None = None) -> list[list]:
    """Basis of {v : M v = 0}, one vector per free column, in echelon form."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, pc in zip(red, pivots):
            v[pc] = field.neg(row[f])
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, field: Field):
    """Some x with M x = rhs, or None when the system is inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, field)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


class IncrementalSpan:
    """Grow a span one vector at a time and report dependencies.

    ``add(v)`` returns ``None`` if v is independent of everything added so
    far, and otherwise the coefficients c with v = sum c_i * added_i.
    """

    def __init__(self, field: Field, size: int):
        self.field = field
        self.size = size
        self.rows: list[tuple[int, list, dict]] = []  # (pivot, reduced vector, combination)
        self.count = 0

    def add(self, v: Sequence):
        f = self.field
        v = list(v)
        combo: dict = {}
        for pivot, row, rc in self.rows:
            c = v[pivot]
            if not f.is_zero(c):
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
                for k, x in rc.items():
                    combo[k] = f.sub(combo.get(k, f.zero), f.mul(c, x))
        idx = self.count
        self.count += 1
        pivot = next((i for i, x in enumerate(v) if not f.is_zero(x)), None)
        if pivot is None:
            # v - sum(...) = 0 with combo tracking -(coefficients)
            return {k: f.neg(x) for k, x in combo.items() if not f.is_zero(x)}
        s = f.inv(v[pivot])
        v = [f.mul(x, s) for x in v]
        combo[idx] = f.one
        combo = {k: f.mul(x, s) for k, x in combo.items()}
        self.rows.append((pivot, v, combo))
        return None
