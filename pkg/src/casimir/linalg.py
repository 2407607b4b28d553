"""Exact linear algebra over the rationals.

Rows are sparse ``{column: value}`` dicts. Elimination is fraction-free: every
row is scaled to a primitive integer vector before it enters the echelon form,
and pivot updates use cross-multiplication followed by content removal, so no
``Fraction`` ever appears inside the elimination loop.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Row = dict[int, int]


def as_integer_row(row: Mapping[int, object]) -> Row:
    """Scale a rational sparse row to a primitive integer row (sign kept)."""
    items = [(c, Fraction(v)) for c, v in row.items() if v != 0]
    if not items:
        return {}
    den = reduce(lcm, (v.denominator for _, v in items), 1)
    ints = {c: int(v * den) for c, v in items}
    return _primitive(ints)


def _primitive(row: Row) -> Row:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g in (0, 1):
        return row
    return {c: v // g for c, v in row.items()}


def normalize_vector(vec: Sequence[object]) -> list[int]:
    """Integer, primitive, first nonzero entry positive."""
    fr = [Fraction(v) for v in vec]
    den = reduce(lcm, (v.denominator for v in fr), 1)
    ints = [int(v * den) for v in fr]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return ints
    ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-x for x in ints]
            break
    return ints


class Echelon:
    """Incremental reduced echelon form over the integers.

    Pivot rows are kept mutually reduced: a pivot row is zero in every other
    pivot column. Rows are consumed in the order given and each new pivot is
    the first nonzero column of the reduced row.
    """

    def __init__(self) -> None:
        self.pivots: dict[int, Row] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Row) -> Row:
        r = dict(row)
        for c in [c for c in r if c in self.pivots]:
            rc = r.get(c)
            if not rc:
                continue
            p = self.pivots[c]
            pv = p[c]
            g = gcd(pv, rc)
            a, b = pv // g, rc // g
            if a != 1:
                r = {k: a * v for k, v in r.items()}
            for k, v in p.items():
                nv = r.get(k, 0) - b * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
            r = _primitive(r)
        return r

    def add(self, row: Mapping[int, object]) -> bool:
        """Insert a row; return True when it raised the rank."""
        r = self.reduce(as_integer_row(row))
        if not r:
            return False
        c = min(r)
        if r[c] < 0:
            r = {k: -v for k, v in r.items()}
        rc = r[c]
        for q in list(self.pivots):
            qrow = self.pivots[q]
            qc = qrow.get(c)
            if not qc:
                continue
            g = gcd(rc, qc)
            a, b = rc // g, qc // g
            new = {k: a * v for k, v in qrow.items()}
            for k, v in r.items():
                nv = new.get(k, 0) - b * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            self.pivots[q] = _primitive(new)
        self.pivots[c] = r
        return True

    def kernel(self, ncols: int) -> list[list[int]]:
        basis = []
        for f in range(ncols):
            if f in self.pivots:
                continue
            vec: list[Fraction | int] = [0] * ncols
            vec[f] = 1
            for c, p in self.pivots.items():
                pf = p.get(f)
                if pf:
                    vec[c] = Fraction(-pf, p[c])
            basis.append(normalize_vector(vec))
        return basis


def nullspace(rows: Iterable[Mapping[int, object]], ncols: int) -> list[list[int]]:
    """Kernel basis of a sparse rational matrix, one vector per free column.

    Vectors are integer, primitive, first nonzero entry positive; ordered by
    their free column.
    """
    ech = Echelon()
    seen: set[tuple] = set()
    for row in rows:
        key = _row_key(row)
        if key is None or key in seen:
            continue
        seen.add(key)
        ech.add(row)
        if ech.rank == ncols:
            break
    return ech.kernel(ncols)


def _row_key(row: Mapping[int, object]):
    r = as_integer_row(row)
    if not r:
        return None
    c = min(r)
    if r[c] < 0:
        r = {k: -v for k, v in r.items()}
    return tuple(sorted(r.items()))


def rank(matrix: Iterable[Sequence[object]]) -> int:
    """Exact rank of a dense rational matrix."""
    ech = Echelon()
    for row in matrix:
        ech.add({j: v for j, v in enumerate(row) if v})
    return ech.rank


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of the lattice ``{x in Z^n : A x = 0}`` in row Hermite normal form."""
    # unimodular row operations on [A^T | I]
    work = [[int(r[j]) for r in rows] + [int(i == j) for i in range(ncols)]
            for j in range(ncols)]
    m = len(rows)
    top = 0
    for col in range(m):
        top = _gcd_pivot(work, top, col)
    kernel = [w[m:] for w in work if not any(w[:m])]
    return hermite_normal_form(kernel)


def _gcd_pivot(work: list[list[int]], top: int, col: int) -> int:
    """Combine rows ``top..`` so at most one has a nonzero entry in ``col``."""
    while True:
        nz = [i for i in range(top, len(work)) if work[i][col]]
        if not nz:
            return top
        i = min(nz, key=lambda k: abs(work[k][col]))
        work[top], work[i] = work[i], work[top]
        piv = work[top][col]
        done = True
        for k in range(top + 1, len(work)):
            v = work[k][col]
            if v:
                q = v // piv
                work[k] = [a - q * b for a, b in zip(work[k], work[top])]
                if work[k][col]:
                    done = False
        if done:
            if piv < 0:
                work[top] = [-a for a in work[top]]
            return top + 1


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style HNF: positive pivots, entries above a pivot reduced mod it."""
    work = [list(map(int, r)) for r in rows]
    if not work:
        return []
    ncols = len(work[0])
    top = 0
    for col in range(ncols):
        if top == len(work):
            break
        new_top = _gcd_pivot(work, top, col)
        if new_top == top:
            continue
        piv = work[top][col]
        for k in range(top):
            q = work[k][col] // piv
            if q:
                work[k] = [a - q * b for a, b in zip(work[k], work[top])]
        top = new_top
    return [r for r in work if any(r)]
