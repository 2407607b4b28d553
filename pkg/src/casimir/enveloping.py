"""PBW-ordered arithmetic in the universal enveloping algebra.

A PBW monomial is an exponent tuple ``(w_1, ..., w_N)`` standing for
``X_1^w_1 ... X_N^w_N`` in the algebra's declared basis order. Elements are
sparse maps from such tuples to rationals.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .algebra import LieAlgebra
from .errors import DegreeLimitError, ParseError
from . import exprparse

Monomial = tuple[int, ...]
DEFAULT_MAX_DEGREE = 12


def _acc(out: dict, key, val) -> None:
    nv = out.get(key, 0) + val
    if nv:
        out[key] = nv
    else:
        out.pop(key, None)


class UEAElement:
    """Immutable linear combination of PBW monomials."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Monomial, object] | None = None):
        self.n = n
        clean = {}
        for mono, c in (terms or {}).items():
            if len(mono) != n:
                raise ValueError(f"monomial {mono} has wrong length for dim {n}")
            if c:
                clean[tuple(mono)] = Fraction(c)
        self.terms: dict[Monomial, Fraction] = clean

    @classmethod
    def one(cls, n: int) -> "UEAElement":
        return cls(n, {(0,) * n: 1})

    @classmethod
    def generator(cls, n: int, i: int) -> "UEAElement":
        mono = [0] * n
        mono[i] = 1
        return cls(n, {tuple(mono): 1})

    @classmethod
    def monomial(cls, mono: Sequence[int], coeff=1) -> "UEAElement":
        return cls(len(mono), {tuple(mono): coeff})

    def _check(self, other: "UEAElement") -> None:
        if other.n != self.n:
            raise ValueError("elements belong to algebras of different dimension")

    def __add__(self, other):
        if not isinstance(other, UEAElement):
            other = UEAElement.one(self.n) * other
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return UEAElement(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return UEAElement(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, UEAElement):
            other = UEAElement.one(self.n) * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, scalar):
        """Scalar multiplication only; products need :class:`Enveloping`."""
        if isinstance(scalar, UEAElement):
            return NotImplemented
        s = Fraction(scalar)
        return UEAElement(self.n, {k: v * s for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, UEAElement):
            return self.n == other.n and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"UEAElement({self.n}, {self.terms!r})"

    @property
    def degree(self) -> int:
        """Maximum term degree; ``-1`` for zero."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms, key=graded_lex_key)

    def leading_monomial(self) -> Monomial | None:
        return max(self.terms, key=graded_lex_key) if self.terms else None

    def normalized(self) -> "UEAElement":
        """Integer primitive coefficients with positive leading coefficient."""
        if not self.terms:
            return self
        den = reduce(lcm, (c.denominator for c in self.terms.values()), 1)
        ints = {k: int(c * den) for k, c in self.terms.items()}
        g = reduce(gcd, ints.values(), 0)
        if ints[self.leading_monomial()] < 0:
            g = -g
        return UEAElement(self.n, {k: Fraction(v, g) for k, v in ints.items()})

    def symbol(self) -> dict[Monomial, Fraction]:
        """Commutative polynomial in ``y_1..y_N``: forget the ordering."""
        return dict(self.terms)

    def homogeneous_components(self, weight_of) -> dict:
        """Split by ``weight_of(monomial)``; returns ``{weight: element}``."""
        parts: dict = {}
        for mono, c in self.terms.items():
            parts.setdefault(weight_of(mono), {})[mono] = c
        return {w: UEAElement(self.n, t) for w, t in parts.items()}

    def format(self, names: Sequence[str]) -> str:
        return format_element(self, names)


def graded_lex_key(mono: Monomial):
    return (sum(mono), mono)


class Enveloping:
    """Multiplication in ``U(g)`` for a fixed Lie algebra, with memoised rewriting."""

    def __init__(self, algebra: LieAlgebra, max_degree: int = DEFAULT_MAX_DEGREE):
        self.algebra = algebra
        self.n = algebra.dim
        self.max_degree = max_degree
        self._right: dict[tuple[Monomial, int], dict[Monomial, Fraction]] = {}
        self._left: dict[tuple[int, Monomial], dict[Monomial, Fraction]] = {}

    # -- element construction -------------------------------------------------

    def gen(self, i: int | str) -> UEAElement:
        if isinstance(i, str):
            i = self.algebra.index(i)
        return UEAElement.generator(self.n, i)

    def one(self) -> UEAElement:
        return UEAElement.one(self.n)

    def zero(self) -> UEAElement:
        return UEAElement(self.n)

    # -- rewriting primitives -------------------------------------------------

    def _right_gen(self, mono: Monomial, j: int) -> dict[Monomial, Fraction]:
        """``X^mono * X_j`` in PBW form."""
        key = (mono, j)
        hit = self._right.get(key)
        if hit is not None:
            return hit
        k = -1
        for idx in range(self.n - 1, -1, -1):
            if mono[idx]:
                k = idx
                break
        if k <= j:
            m = list(mono)
            m[j] += 1
            out = {tuple(m): Fraction(1)}
        else:
            m = list(mono)
            m[k] -= 1
            rest = tuple(m)
            out = {}
            # X^rest X_k X_j = (X^rest X_j) X_k + X^rest [X_k, X_j]
            for mono2, c in self._right_gen(rest, j).items():
                for mono3, c3 in self._right_gen(mono2, k).items():
                    _acc(out, mono3, c * c3)
            for l, cl in self.algebra.bracket_terms(k, j):
                for mono3, c3 in self._right_gen(rest, l).items():
                    _acc(out, mono3, cl * c3)
        self._right[key] = out
        return out

    def _left_gen(self, j: int, mono: Monomial) -> dict[Monomial, Fraction]:
        """``X_j * X^mono`` in PBW form."""
        key = (j, mono)
        hit = self._left.get(key)
        if hit is not None:
            return hit
        k = self.n
        for idx in range(self.n):
            if mono[idx]:
                k = idx
                break
        if j <= k:
            m = list(mono)
            m[j] += 1
            out = {tuple(m): Fraction(1)}
        else:
            m = list(mono)
            m[k] -= 1
            rest = tuple(m)
            out = {}
            # X_j X_k X^rest = X_k (X_j X^rest) + [X_j, X_k] X^rest
            for mono2, c in self._left_gen(j, rest).items():
                for mono3, c3 in self._left_gen(k, mono2).items():
                    _acc(out, mono3, c * c3)
            for l, cl in self.algebra.bracket_terms(j, k):
                for mono3, c3 in self._left_gen(l, rest).items():
                    _acc(out, mono3, cl * c3)
        self._left[key] = out
        return out

    def _guard(self, terms: Mapping[Monomial, Fraction]) -> UEAElement:
        el = UEAElement(self.n, terms)
        if el.degree > self.max_degree:
            raise DegreeLimitError(
                f"degree {el.degree} exceeds the limit {self.max_degree}")
        return el

    def right_multiply_generator(self, u: UEAElement, j: int) -> UEAElement:
        out: dict[Monomial, Fraction] = {}
        for mono, c in u.terms.items():
            for m2, c2 in self._right_gen(mono, j).items():
                _acc(out, m2, c * c2)
        return self._guard(out)

    def left_multiply_generator(self, j: int, u: UEAElement) -> UEAElement:
        out: dict[Monomial, Fraction] = {}
        for mono, c in u.terms.items():
            for m2, c2 in self._left_gen(j, mono).items():
                _acc(out, m2, c * c2)
        return self._guard(out)

    # -- public operations ----------------------------------------------------

    def normal_order(self, word: Iterable[int | str]) -> UEAElement:
        """Rewrite the product ``X_{w_1} X_{w_2} ...`` in the PBW basis."""
        terms = {(0,) * self.n: Fraction(1)}
        for g in word:
            j = self.algebra.index(g) if isinstance(g, str) else g
            if not 0 <= j < self.n:
                raise IndexError(f"generator index {j} out of range")
            out: dict[Monomial, Fraction] = {}
            for mono, c in terms.items():
                for m2, c2 in self._right_gen(mono, j).items():
                    _acc(out, m2, c * c2)
            terms = out
        return self._guard(terms)

    def multiply(self, u: UEAElement, v: UEAElement) -> UEAElement:
        if u.degree + v.degree > self.max_degree:
            raise DegreeLimitError(
                f"product degree {u.degree + v.degree} exceeds the limit {self.max_degree}")
        out: dict[Monomial, Fraction] = {}
        for mono_v, cv in v.terms.items():
            word = [i for i, e in enumerate(mono_v) for _ in range(e)]
            cur = {m: c * cv for m, c in u.terms.items()}
            for j in word:
                nxt: dict[Monomial, Fraction] = {}
                for mono, c in cur.items():
                    for m2, c2 in self._right_gen(mono, j).items():
                        _acc(nxt, m2, c * c2)
                cur = nxt
            for m, c in cur.items():
                _acc(out, m, c)
        return UEAElement(self.n, out)

    def mul(self, *factors: UEAElement) -> UEAElement:
        return reduce(self.multiply, factors, self.one())

    def power(self, u: UEAElement, k: int) -> UEAElement:
        return self.mul(*([u] * k))

    def commutator_with_generator(self, K: UEAElement, i: int) -> UEAElement:
        """``[K, X_i] = K X_i - X_i K``."""
        out: dict[Monomial, Fraction] = {}
        for mono, c in K.terms.items():
            for m2, c2 in self._right_gen(mono, i).items():
                _acc(out, m2, c * c2)
            for m2, c2 in self._left_gen(i, mono).items():
                _acc(out, m2, -c * c2)
        return UEAElement(self.n, out)

    def commutator(self, u: UEAElement, v: UEAElement) -> UEAElement:
        return self.multiply(u, v) - self.multiply(v, u)

    def first_noncommuting(self, K: UEAElement) -> tuple[int, UEAElement] | None:
        for i in range(self.n):
            c = self.commutator_with_generator(K, i)
            if c:
                return i, c
        return None

    def is_casimir(self, K: UEAElement) -> bool:
        return self.first_noncommuting(K) is None

    # -- text ------------------------------------------------------------------

    def parse(self, text: str) -> UEAElement:
        return parse_expression(text, self)

    def format(self, u: UEAElement) -> str:
        return format_element(u, self.algebra.basis_names)


def enveloping(A: LieAlgebra, max_degree: int = DEFAULT_MAX_DEGREE) -> Enveloping:
    """Shared :class:`Enveloping` instance for ``A`` (caches persist)."""
    key = ("enveloping", max_degree)
    env = A._cache.get(key)
    if env is None:
        env = A._cache[key] = Enveloping(A, max_degree)
    return env


def normal_order(A: LieAlgebra, word: Iterable[int | str]) -> UEAElement:
    return enveloping(A).normal_order(word)


def multiply(A: LieAlgebra, u: UEAElement, v: UEAElement) -> UEAElement:
    return enveloping(A).multiply(u, v)


def commutator_with_generator(A: LieAlgebra, K: UEAElement, i: int) -> UEAElement:
    return enveloping(A).commutator_with_generator(K, i)


def is_casimir(A: LieAlgebra, K: UEAElement) -> bool:
    return enveloping(A).is_casimir(K)


def symbol(K: UEAElement) -> dict[Monomial, Fraction]:
    return K.symbol()


# ---------------------------------------------------------------------------
# expression text
# ---------------------------------------------------------------------------

def _fmt_monomial(mono: Monomial, names: Sequence[str]) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 1:
            parts.append(names[i])
        elif e > 1:
            parts.append(f"{names[i]}^{e}")
    return "*".join(parts)


def format_element(u: UEAElement, names: Sequence[str]) -> str:
    """Render as ``c*X^k*Y - ...``; monomials in descending graded-lex order."""
    if not u.terms:
        return "0"
    out = []
    for n, mono in enumerate(sorted(u.terms, key=graded_lex_key, reverse=True)):
        c = u.terms[mono]
        body = _fmt_monomial(mono, names)
        a = abs(c)
        if not body:
            text = str(a)
        elif a == 1:
            text = body
        else:
            text = f"{a}*{body}"
        if n == 0:
            out.append(text if c > 0 else f"-{text}")
        else:
            out.append((" + " if c > 0 else " - ") + text)
    return "".join(out)


def expression_ring(env: Enveloping) -> exprparse.Ring:
    A = env.algebra

    def ident(name):
        try:
            return env.gen(A.index(name))
        except KeyError:
            raise ParseError(f"unknown generator {name!r}") from None

    return exprparse.Ring(
        number=lambda q: env.one() * q,
        ident=ident,
        add=lambda a, b: a + b,
        neg=lambda a: -a,
        mul=env.multiply,
    )


def parse_expression(text: str, env: Enveloping) -> UEAElement:
    """Parse an enveloping-algebra expression; products are normal-ordered."""
    return exprparse.parse(text, expression_ring(env))
