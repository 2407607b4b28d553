"""Casimir search through a differential operator realisation.

Pipeline per weight class:

1. ansatz: PBW monomials of degree <= m (of weight W in graded mode);
2. realisation system: coefficients of ``[rho(K), rho(X_i)]`` in Weyl normal
   form, one equation per ``(i, x^t d^k)``;
3. exact nullspace -> candidate operators;
4. recombination: solve ``[sum a_j K_j, X_i] = 0`` in the enveloping
   algebra, which discards candidates that only commute inside the realisation;
5. functional-independence filter on the certified Casimirs of all classes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import LieAlgebra, random_points
from .enveloping import Enveloping, Monomial, UEAElement, enveloping, graded_lex_key
from .grading import Grading, Weight, compute_grading, monomial_weight, monomials, weight_classes
from .linalg import Echelon, as_integer_row, nullspace as _nullspace
from .weyl import Realization, operator_commutator

log = logging.getLogger(__name__)


@dataclass
class LinearSystem:
    """Sparse rational equations ``sum_col row[col] * u_col = 0``."""

    unknown_labels: list
    rows: list[dict[int, Fraction]]

    @property
    def n_unknowns(self) -> int:
        return len(self.unknown_labels)

    def dense(self) -> list[list[Fraction]]:
        return [[row.get(c, Fraction(0)) for c in range(self.n_unknowns)] for row in self.rows]


@dataclass
class SearchResult:
    """Outcome of one weight class (or of the whole naive search)."""

    degree: int
    weight: Weight | None
    ansatz: list[Monomial]
    candidates: list[UEAElement]
    genuine: list[UEAElement]
    independent: list[UEAElement] = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)


@dataclass
class SearchRun:
    algebra: LieAlgebra
    realization: str
    degree: int
    mode: str
    grading: Grading | None
    classes: list[SearchResult]

    @property
    def independent(self) -> list[UEAElement]:
        return [K for cls in self.classes for K in cls.independent]

    @property
    def genuine(self) -> list[UEAElement]:
        return [K for cls in self.classes for K in cls.genuine]


# ---------------------------------------------------------------------------
# steps
# ---------------------------------------------------------------------------

def build_ansatz(A: LieAlgebra, G: Grading | None, m: int, W: Sequence[int] | None = None) -> list[Monomial]:
    """``beta_m`` (no weight) or ``beta_m^W``, without the empty monomial."""
    if m < 1:
        raise ValueError("degree must be >= 1")
    if W is None:
        return list(monomials(A.dim, m))
    if G is None:
        raise ValueError("a weight needs a grading")
    W = tuple(W)
    if len(W) != G.rank:
        raise ValueError(f"weight {W} has length {len(W)}, grading rank is {G.rank}")
    return [mono for mono in monomials(A.dim, m) if monomial_weight(G, mono) == W]


def extract_system(R: Realization, ansatz: Sequence[Monomial], route: str = "weyl") -> LinearSystem:
    """Equations for ``[rho(sum f_s s), rho(X_i)] = 0`` in the coefficients ``f_s``.

    ``route="weyl"`` composes the operators directly. ``route="uea"`` maps
    the abstract commutator ``[s, X_i]`` through ``rho`` instead; the two agree
    whenever ``R`` is a homomorphism.
    """
    if route not in ("weyl", "uea"):
        raise ValueError(f"unknown route {route!r}")
    A = R.algebra
    env = enveloping(A)
    table: dict[tuple, dict[int, Fraction]] = {}
    for col, mono in enumerate(ansatz):
        for i in range(A.dim):
            if route == "weyl":
                img = R.image_of_monomial(mono)
                op = operator_commutator(img, R.images[i])
                terms = op.terms
            else:
                comm = env.commutator_with_generator(UEAElement.monomial(mono), i)
                terms = {}
                for m2, c in comm.terms.items():
                    for key, v in R.image_of_monomial(m2).terms.items():
                        nv = terms.get(key, 0) + c * v
                        if nv:
                            terms[key] = nv
                        else:
                            del terms[key]
            for key, v in terms.items():
                table.setdefault((i, key), {})[col] = v
    rows = [table[k] for k in sorted(table)]
    return LinearSystem(list(ansatz), rows)


def nullspace(S: LinearSystem) -> list[list[int]]:
    """Exact kernel basis, integer primitive vectors with positive first entry."""
    return _nullspace(S.rows, S.n_unknowns)


def elements_from_vectors(n: int, labels: Sequence[Monomial], vectors: Iterable[Sequence[int]]) -> list[UEAElement]:
    return [UEAElement(n, {labels[j]: v for j, v in enumerate(vec) if v}) for vec in vectors]


def recombination_system(env: Enveloping, candidates: Sequence[UEAElement]) -> LinearSystem:
    table: dict[tuple, dict[int, Fraction]] = {}
    for j, K in enumerate(candidates):
        for i in range(env.n):
            for mono, c in env.commutator_with_generator(K, i).terms.items():
                table.setdefault((i, mono), {})[j] = c
    return LinearSystem(list(range(len(candidates))), [table[k] for k in sorted(table)])


def recombine(A: LieAlgebra, candidates: Sequence[UEAElement]) -> list[UEAElement]:
    """Certified Casimirs spanned by ``candidates``, in canonical echelon form."""
    if not candidates:
        return []
    env = enveloping(A)
    S = recombination_system(env, candidates)
    combos = []
    for a in nullspace(S):
        K = env.zero()
        for aj, Kj in zip(a, candidates):
            if aj:
                K = K + Kj * aj
        combos.append(K)
    out = canonical_basis(combos)
    for K in out:
        if not env.is_casimir(K):  # pragma: no cover - would be an arithmetic bug
            raise AssertionError("recombined element failed Casimir certification")
    return out


def canonical_basis(elements: Sequence[UEAElement]) -> list[UEAElement]:
    """Reduced echelon basis of the span, leading monomials in graded-lex order.

    Each returned element is integer-primitive with positive leading
    coefficient and vanishes on the leading monomials of the others. Output
    is sorted by ascending leading monomial.
    """
    elements = [e for e in elements if e]
    if not elements:
        return []
    n = elements[0].n
    monos = sorted({m for e in elements for m in e.terms}, key=graded_lex_key, reverse=True)
    col = {m: c for c, m in enumerate(monos)}
    ech = Echelon()
    for e in elements:
        ech.add({col[m]: c for m, c in e.terms.items()})
    out = []
    for c in sorted(ech.pivots, reverse=True):
        row = ech.pivots[c]
        out.append(UEAElement(n, {monos[j]: v for j, v in row.items()}).normalized())
    return out


def span_contains(basis: Sequence[UEAElement], x: UEAElement) -> bool:
    """Exact membership test for ``x`` in ``span(basis)``."""
    ech = Echelon()
    monos = sorted({m for e in list(basis) + [x] for m in e.terms}, key=graded_lex_key)
    col = {m: c for c, m in enumerate(monos)}
    for e in basis:
        ech.add({col[m]: c for m, c in e.terms.items()})
    return not ech.reduce(as_integer_row({col[m]: c for m, c in x.terms.items()}))


def span_dimension(elements: Sequence[UEAElement]) -> int:
    return len(canonical_basis(elements))


# ---------------------------------------------------------------------------
# functional independence
# ---------------------------------------------------------------------------

def _gradient(K: UEAElement, y: Sequence[int]) -> dict[int, Fraction]:
    n = K.n
    grad: dict[int, Fraction] = {}
    for mono, c in K.terms.items():
        for q in range(n):
            e = mono[q]
            if not e:
                continue
            v = c * e
            for p in range(n):
                ep = mono[p] - (p == q)
                if ep:
                    v *= y[p] ** ep
            grad[q] = grad.get(q, 0) + v
    return {q: v for q, v in grad.items() if v}


class JacobianRank:
    """Incremental Jacobian rank of commutative symbols at seeded points."""

    def __init__(self, n: int, trials: int = 5, seed: int = 0):
        self.points = random_points(n, trials, seed)
        self.echelons = [Echelon() for _ in self.points]

    @property
    def rank(self) -> int:
        return max((e.rank for e in self.echelons), default=0)

    def would_increase(self, K: UEAElement) -> bool:
        best = self.rank
        for y, ech in zip(self.points, self.echelons):
            if ech.rank + 1 > best and ech.reduce(as_integer_row(_gradient(K, y))):
                return True
        return False

    def add(self, K: UEAElement) -> None:
        for y, ech in zip(self.points, self.echelons):
            ech.add(_gradient(K, y))


def jacobian_rank(elements: Sequence[UEAElement], trials: int = 5, seed: int = 0) -> int:
    if not elements:
        return 0
    jr = JacobianRank(elements[0].n, trials, seed)
    for K in elements:
        jr.add(K)
    return jr.rank


def independence_filter(known: Sequence[UEAElement], new: Sequence[UEAElement],
                        trials: int = 5, seed: int = 0) -> list[UEAElement]:
    """Greedy sublist of ``new`` whose symbols raise the Jacobian rank.

    Elements are considered by ascending degree, ties in input order.
    """
    pool = list(known) + list(new)
    if not pool:
        return []
    jr = JacobianRank(pool[0].n, trials, seed)
    for K in known:
        jr.add(K)
    kept = []
    for K in sorted(new, key=lambda e: e.degree):
        if jr.would_increase(K):
            jr.add(K)
            kept.append(K)
    return kept


# ---------------------------------------------------------------------------
# orchestration
# ---------------------------------------------------------------------------

def select_weights(G: Grading, A: LieAlgebra, m: int, selection="default") -> list[Weight]:
    """Weight classes to search.

    ``"default"``: weights attained at degree exactly ``m`` whose class has at
    least two monomials. ``"all"``: every class. A list of weights is
    validated and returned in sorted order.
    """
    classes = weight_classes(G, A, m)
    if selection == "all":
        return list(classes)
    if selection == "default":
        return [W for W, ms in classes.items() if len(ms) >= 2 and any(sum(x) == m for x in ms)]
    chosen = []
    for W in selection:
        W = tuple(int(v) for v in W)
        if len(W) != G.rank:
            raise ValueError(f"weight {W} has length {len(W)}, grading rank is {G.rank}")
        if W not in classes:
            raise ValueError(f"weight {W} is not attained by any monomial of degree <= {m}")
        if W not in chosen:
            chosen.append(W)
    return sorted(chosen)


def search_class(R: Realization, ansatz: Sequence[Monomial], m: int, W: Weight | None,
                 route: str = "weyl") -> SearchResult:
    A = R.algebra
    system = extract_system(R, ansatz, route=route)
    vecs = nullspace(system)
    candidates = elements_from_vectors(A.dim, ansatz, vecs)
    genuine = recombine(A, candidates)
    diag = {
        "ansatz_size": len(ansatz),
        "equations": len(system.rows),
        "rank": len(ansatz) - len(vecs),
        "candidates": len(candidates),
        "genuine": len(genuine),
    }
    log.debug("class %s: %s", W, diag)
    return SearchResult(m, W, list(ansatz), candidates, genuine, [], diag)


def run_search(A: LieAlgebra, R: Realization, m: int, mode: str = "graded", weights="default",
               trials: int = 5, seed: int = 0, grading: Grading | None = None,
               route: str = "weyl") -> SearchRun:
    """Run the naive (``mode="naive"``) or graded search up to degree ``m``."""
    if R.algebra != A:
        raise ValueError("realisation belongs to a different algebra")
    if m < 1:
        raise ValueError("degree must be >= 1")
    results = []
    G = None
    if mode == "naive":
        results.append(search_class(R, build_ansatz(A, None, m), m, None, route))
    elif mode == "graded":
        G = grading or compute_grading(A)
        classes = weight_classes(G, A, m)
        for W in select_weights(G, A, m, weights):
            results.append(search_class(R, classes[W], m, W, route))
    else:
        raise ValueError(f"unknown mode {mode!r}")

    # ascending degree, then class order, then position within class
    order = sorted(((K.degree, ci, ki) for ci, res in enumerate(results)
                    for ki, K in enumerate(res.genuine)))
    jr = JacobianRank(A.dim, trials, seed)
    for _, ci, ki in order:
        K = results[ci].genuine[ki]
        if jr.would_increase(K):
            jr.add(K)
            results[ci].independent.append(K)
    return SearchRun(A, R.name, m, mode, G, results)
