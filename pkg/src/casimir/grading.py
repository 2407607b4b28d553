"""Abelian gradings ("relative dimensions") compatible with the bracket.

Weights are additive integer vectors: every nonzero structure constant
``C^k_ij`` imposes ``w_i + w_j = w_k``. The solution set is a lattice in
``Z^N``; its basis is kept in row Hermite normal form so the weights are
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterator, Sequence

from .algebra import LieAlgebra
from .linalg import integer_kernel

Weight = tuple[int, ...]


@dataclass(frozen=True)
class Grading:
    rank: int
    weights: tuple[Weight, ...]
    basis_matrix: tuple[tuple[int, ...], ...]

    def weight_of(self, mono: Sequence[int]) -> Weight:
        return monomial_weight(self, mono)

    def transformed(self, unimodular: Sequence[Sequence[int]]) -> "Grading":
        """Same lattice, basis rows replaced by ``U @ basis_matrix``."""
        rows = [
            tuple(sum(u * b[c] for u, b in zip(urow, self.basis_matrix))
                  for c in range(len(self.weights)))
            for urow in unimodular
        ]
        return _from_rows(rows, len(self.weights))


def _from_rows(rows, n) -> Grading:
    rows = tuple(tuple(r) for r in rows)
    weights = tuple(tuple(r[i] for r in rows) for i in range(n))
    return Grading(len(rows), weights, rows)


def grading_constraints(A: LieAlgebra) -> list[list[int]]:
    rows = []
    seen = set()
    for i, j, k, _ in A.nonzero_brackets():
        row = [0] * A.dim
        row[i] += 1
        row[j] += 1
        row[k] -= 1
        key = tuple(row)
        if key not in seen:
            seen.add(key)
            rows.append(row)
    return rows


def compute_grading(A: LieAlgebra) -> Grading:
    """The maximal grading of ``A`` (one constraint per bracket term)."""
    basis = integer_kernel(grading_constraints(A), A.dim)
    return _from_rows(basis, A.dim)


def trivial_grading(A: LieAlgebra) -> Grading:
    """Rank-0 grading: every monomial has the empty weight."""
    return Grading(0, tuple(() for _ in range(A.dim)), ())


def monomial_weight(G: Grading, mono: Sequence[int]) -> Weight:
    if len(mono) != len(G.weights):
        raise ValueError("exponent vector length does not match the grading")
    w = [0] * G.rank
    for e, wi in zip(mono, G.weights):
        if e:
            for r in range(G.rank):
                w[r] += e * wi[r]
    return tuple(w)


def monomials(n: int, max_degree: int, min_degree: int = 1) -> Iterator[tuple[int, ...]]:
    """All exponent vectors of degree in ``[min_degree, max_degree]``, graded-lex ascending."""
    for deg in range(min_degree, max_degree + 1):
        block = []
        for combo in combinations_with_replacement(range(n), deg):
            mono = [0] * n
            for i in combo:
                mono[i] += 1
            block.append(tuple(mono))
        block.sort()
        yield from block


def weight_classes(G: Grading, A: LieAlgebra, m: int) -> dict[Weight, list[tuple[int, ...]]]:
    """Partition the nonconstant PBW monomials of degree <= m by weight."""
    if m < 1:
        raise ValueError("degree must be >= 1")
    classes: dict[Weight, list[tuple[int, ...]]] = {}
    for mono in monomials(A.dim, m):
        classes.setdefault(monomial_weight(G, mono), []).append(mono)
    return dict(sorted(classes.items()))


def class_sizes_by_degree(G: Grading, A: LieAlgebra, m: int) -> dict[int, dict[Weight, int]]:
    """``{degree: {weight: number of monomials of exactly that degree}}``."""
    out: dict[int, dict[Weight, int]] = {}
    for mono in monomials(A.dim, m):
        bucket = out.setdefault(sum(mono), {})
        w = monomial_weight(G, mono)
        bucket[w] = bucket.get(w, 0) + 1
    return {d: dict(sorted(b.items())) for d, b in out.items()}
