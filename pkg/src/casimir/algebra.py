"""Finite-dimensional Lie algebras with exact rational structure constants.

Only brackets ``[X_i, X_j]`` with ``i < j`` are stored; the rest of the table
follows from antisymmetry and is computed on demand.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping

from .errors import ParseError
from .linalg import rank

Rational = Fraction
IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class LieAlgebra:
    """A Lie algebra given by its ordered basis and bracket table.

    ``brackets`` maps ``(i, j)`` with ``i < j`` (0-based) to a tuple of
    ``(k, coefficient)`` pairs, sorted by ``k`` with no zero coefficients.
    """

    name: str
    basis_names: tuple[str, ...]
    brackets: Mapping[tuple[int, int], tuple[tuple[int, Fraction], ...]]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        if not self.basis_names:
            raise ValueError("a Lie algebra needs at least one generator")
        if len(set(self.basis_names)) != len(self.basis_names):
            raise ValueError("duplicate basis names")
        n = len(self.basis_names)
        clean = {}
        for (i, j), terms in self.brackets.items():
            if not (0 <= i < j < n):
                raise ValueError(f"bracket key {(i, j)} must satisfy 0 <= i < j < {n}")
            ks = [k for k, _ in terms]
            if len(set(ks)) != len(ks):
                raise ValueError(f"duplicate target in bracket {(i, j)}")
            t = tuple(sorted((int(k), Fraction(c)) for k, c in terms if c != 0))
            for k, _ in t:
                if not 0 <= k < n:
                    raise ValueError(f"bracket target {k} out of range")
            if t:
                clean[(i, j)] = t
        object.__setattr__(self, "brackets", dict(sorted(clean.items())))

    def __hash__(self) -> int:
        return hash((self.name, self.basis_names, tuple(self.brackets.items())))

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def index(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r} in algebra {self.name}") from None

    def bracket_terms(self, i: int, j: int) -> tuple[tuple[int, Fraction], ...]:
        """Structure constants of ``[X_i, X_j]`` as ``((k, c), ...)``, 0-based."""
        if i == j:
            return ()
        if i < j:
            return self.brackets.get((i, j), ())
        return tuple((k, -c) for k, c in self.brackets.get((j, i), ()))

    def nonzero_brackets(self):
        """Yield ``(i, j, k, c)`` for every stored term with ``i < j``."""
        for (i, j), terms in self.brackets.items():
            for k, c in terms:
                yield i, j, k, c


def bracket(A: LieAlgebra, i: int, j: int) -> dict[int, Fraction]:
    """``[X_i, X_j]`` as a ``{k: c}`` map (0-based indices, no zero entries)."""
    n = A.dim
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"generator index out of range for dim {n}: ({i}, {j})")
    return dict(A.bracket_terms(i, j))


def _lie(A: LieAlgebra, u: dict[int, Fraction], v: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for i, a in u.items():
        for j, b in v.items():
            for k, c in A.bracket_terms(i, j):
                out[k] = out.get(k, 0) + a * b * c
    return {k: c for k, c in out.items() if c}


@dataclass(frozen=True)
class JacobiFailure:
    triple: tuple[int, int, int]
    residual: dict[int, Fraction]

    def describe(self, A: LieAlgebra) -> str:
        names = ", ".join(A.basis_names[t] for t in self.triple)
        res = " + ".join(f"({c})*{A.basis_names[k]}" for k, c in sorted(self.residual.items()))
        return f"Jacobi identity fails for ({names}): residual {res}"


def jacobi_check(A: LieAlgebra) -> JacobiFailure | None:
    """Return ``None`` when the Jacobi identity holds, else the first bad triple."""
    for i, j, k in combinations(range(A.dim), 3):
        total: dict[int, Fraction] = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = dict(A.bracket_terms(a, b))
            for idx, val in _lie(A, inner, {c: Fraction(1)}).items():
                total[idx] = total.get(idx, 0) + val
        total = {idx: v for idx, v in total.items() if v}
        if total:
            return JacobiFailure((i, j, k), total)
    return None


def random_points(n: int, trials: int, seed: int = 0, bound: int = 1000) -> list[list[int]]:
    rng = random.Random(seed)
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(trials)]


def beltrametti_blasi_count(A: LieAlgebra, trials: int = 5, seed: int = 0) -> int:
    """Number of independent (generalised) invariants, ``N - generic rank``.

    The rank of ``M_ij(y) = sum_k C^k_ij y_k`` is maximised over ``trials``
    seeded integer points.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n = A.dim
    best = 0
    for y in random_points(n, trials, seed):
        mat = [[0] * n for _ in range(n)]
        for i, j, k, c in A.nonzero_brackets():
            mat[i][j] += c * y[k]
            mat[j][i] -= c * y[k]
        best = max(best, rank(mat))
    return n - best


# ---------------------------------------------------------------------------
# built-in families
# ---------------------------------------------------------------------------

class _Table:
    """Helper that accepts brackets in any order and checks consistency."""

    def __init__(self, names: list[str]):
        self.names = names
        self.idx = {n: i for i, n in enumerate(names)}
        self.table: dict[tuple[int, int], dict[int, Fraction]] = {}

    def set(self, a: str, b: str, terms: Mapping[str, object]) -> None:
        i, j = self.idx[a], self.idx[b]
        if i == j:
            return
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        new = {self.idx[k]: sign * Fraction(c) for k, c in terms.items() if c != 0}
        old = self.table.get((i, j))
        if old is not None and old != new:
            raise ValueError(f"conflicting brackets for [{a},{b}]")
        self.table[(i, j)] = new

    def build(self, name: str) -> LieAlgebra:
        return LieAlgebra(name, tuple(self.names),
                          {k: tuple(v.items()) for k, v in self.table.items() if v})


def filiform(n: int) -> LieAlgebra:
    """Model filiform algebra: ``[e_k, e_n] = e_{k-1}`` for ``2 <= k <= n-1``."""
    if n < 3:
        raise ValueError("filiform:n needs n >= 3")
    t = _Table([f"e{k}" for k in range(1, n + 1)])
    for k in range(2, n):
        t.set(f"e{k}", f"e{n}", {f"e{k - 1}": 1})
    return t.build(f"filiform:{n}")


def schrodinger_names(d: int) -> list[str]:
    names = ["M"]
    names += [f"P0_{i}" for i in range(1, d + 1)]
    names += [f"P1_{i}" for i in range(1, d + 1)]
    names += ["H", "D", "C"]
    names += [f"J{i}_{j}" for i, j in combinations(range(1, d + 1), 2)]
    return names


def schrodinger(d: int) -> LieAlgebra:
    """Centrally extended Schrodinger algebra in ``d`` spatial dimensions."""
    if d < 1:
        raise ValueError("schrodinger:d needs d >= 1")
    t = _Table(schrodinger_names(d))

    def P(n, i):
        return f"P{n}_{i}"

    def J(i, j):
        # J_ij = -J_ji; returns (name, sign)
        if i < j:
            return f"J{i}_{j}", 1
        return f"J{j}_{i}", -1

    t.set("D", "H", {"H": 2})
    t.set("D", "C", {"C": -2})
    t.set("C", "H", {"D": 1})
    for i in range(1, d + 1):
        t.set("H", P(1, i), {P(0, i): -1})
        t.set("D", P(0, i), {P(0, i): 1})
        t.set("D", P(1, i), {P(1, i): -1})
        t.set("C", P(0, i), {P(1, i): 1})
        t.set(P(0, i), P(1, i), {"M": -1})
    # [J_ij, P_nk] = d_ik P_nj - d_jk P_ni
    for i, j in combinations(range(1, d + 1), 2):
        Jij, _ = J(i, j)
        for n in (0, 1):
            t.set(Jij, P(n, i), {P(n, j): 1})
            t.set(Jij, P(n, j), {P(n, i): -1})
    # [J_ij, J_kl] = d_ik J_jl + d_jl J_ik - d_il J_jk - d_jk J_il
    pairs = list(combinations(range(1, d + 1), 2))
    for (i, j), (k, l) in combinations(pairs, 2):
        out: dict[str, int] = {}

        def add(delta, a, b, s):
            if delta and a != b:
                name, sg = J(a, b)
                out[name] = out.get(name, 0) + s * sg

        add(i == k, j, l, 1)
        add(j == l, i, k, 1)
        add(i == l, j, k, -1)
        add(j == k, i, l, -1)
        t.set(J(i, j)[0], J(k, l)[0], out)
    return t.build(f"schrodinger:{d}")


def heisenberg(d: int) -> LieAlgebra:
    """``[p_i, q_i] = z``."""
    if d < 1:
        raise ValueError("heisenberg:d needs d >= 1")
    names = [f"p{i}" for i in range(1, d + 1)] + [f"q{i}" for i in range(1, d + 1)] + ["z"]
    t = _Table(names)
    for i in range(1, d + 1):
        t.set(f"p{i}", f"q{i}", {"z": 1})
    return t.build(f"heisenberg:{d}")


def sl2() -> LieAlgebra:
    t = _Table(["h", "e", "f"])
    t.set("h", "e", {"e": 2})
    t.set("h", "f", {"f": -2})
    t.set("e", "f", {"h": 1})
    return t.build("sl2")


def abelian(n: int) -> LieAlgebra:
    if n < 1:
        raise ValueError("abelian:n needs n >= 1")
    return LieAlgebra(f"abelian:{n}", tuple(f"a{i}" for i in range(1, n + 1)), {})


_FAMILIES = {
    "filiform": filiform,
    "schrodinger": schrodinger,
    "heisenberg": heisenberg,
    "abelian": abelian,
}


def builtin(spec: str) -> LieAlgebra:
    """Instantiate ``filiform:n``, ``schrodinger:d``, ``heisenberg:d``, ``sl2`` or ``abelian:n``."""
    spec = spec.strip()
    if spec == "sl2":
        return sl2()
    family, sep, param = spec.partition(":")
    if family not in _FAMILIES:
        raise ValueError(f"unknown algebra family {family!r}")
    if not sep or not param.strip().lstrip("-").isdigit():
        raise ValueError(f"{family} needs an integer parameter, e.g. {family}:4")
    return _FAMILIES[family](int(param))


def is_builtin_spec(spec: str) -> bool:
    spec = spec.strip()
    return spec == "sl2" or spec.partition(":")[0] in _FAMILIES


# ---------------------------------------------------------------------------
# algebra file format
# ---------------------------------------------------------------------------

_RATIONAL = r"[+-]?\d+(?:/\d+)?"
_TERM = re.compile(rf"\s*([+-])?\s*(?:({_RATIONAL})\s*\*\s*)?([A-Za-z][A-Za-z0-9_]*)\s*")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(_RATIONAL, text):
        raise ParseError(f"not a rational number: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}") from None


def _parse_linear(rhs: str) -> list[tuple[str, Fraction]]:
    rhs = rhs.strip()
    if rhs == "0":
        return []
    pos, out, first = 0, [], True
    while pos < len(rhs):
        m = _TERM.match(rhs, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse bracket term near {rhs[pos:]!r}")
        sign, coef, ident = m.groups()
        if sign is None and not first:
            raise ParseError(f"missing '+' or '-' before {ident!r}")
        c = parse_rational(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        out.append((ident, c))
        pos, first = m.end(), False
    return out


def parse_algebra(text: str, source: str | None = None) -> LieAlgebra:
    """Parse the line-based algebra format (see README)."""
    lines = []
    for n, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if s:
            lines.append((n, s))

    def fail(msg, lineno):
        raise ParseError(msg, source, lineno)

    header = {}
    for key in ("algebra", "dim", "basis"):
        if not lines:
            fail(f"missing '{key}' line", None)
        n, s = lines.pop(0)
        word, _, rest = s.partition(" ")
        if word != key:
            fail(f"expected '{key}' line, got {s!r}", n)
        header[key] = (n, rest.strip())
    name = header["algebra"][1]
    if not name:
        fail("empty algebra name", header["algebra"][0])
    n_dim, dim_txt = header["dim"]
    if not dim_txt.isdigit() or int(dim_txt) < 1:
        fail(f"dim must be a positive integer, got {dim_txt!r}", n_dim)
    n_basis, basis_txt = header["basis"]
    basis = basis_txt.split()
    for b in basis:
        if not IDENT.match(b):
            fail(f"invalid identifier {b!r}", n_basis)
    if len(set(basis)) != len(basis):
        fail("duplicate basis identifier", n_basis)
    if len(basis) != int(dim_txt):
        fail(f"basis has {len(basis)} identifiers but dim is {dim_txt}", n_basis)
    idx = {b: i for i, b in enumerate(basis)}

    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    origin: dict[tuple[int, int], int] = {}
    for n, s in lines:
        m = re.fullmatch(r"bracket\s+(\S+)\s+(\S+)\s*=\s*(.*)", s)
        if not m:
            fail(f"expected 'bracket <a> <b> = ...', got {s!r}", n)
        a, b, rhs = m.groups()
        for ident in (a, b):
            if ident not in idx:
                fail(f"unknown identifier {ident!r}", n)
        try:
            terms = _parse_linear(rhs)
        except ParseError as e:
            raise e.located(source, n) from None
        vec: dict[int, Fraction] = {}
        for ident, c in terms:
            if ident not in idx:
                fail(f"unknown identifier {ident!r}", n)
            if idx[ident] in vec:
                fail(f"generator {ident!r} repeated in one bracket", n)
            vec[idx[ident]] = c
        vec = {k: c for k, c in vec.items() if c}
        i, j = idx[a], idx[b]
        if i == j:
            if vec:
                fail(f"[{a},{a}] must be zero", n)
            continue
        if i > j:
            i, j = j, i
            vec = {k: -c for k, c in vec.items()}
        if (i, j) in table:
            if table[(i, j)] != vec:
                fail(f"bracket [{a},{b}] conflicts with line {origin[(i, j)]}", n)
            continue
        table[(i, j)] = vec
        origin[(i, j)] = n
    return LieAlgebra(name, tuple(basis), {k: tuple(v.items()) for k, v in table.items() if v})


def _fmt_coef_term(c: Fraction, ident: str, first: bool) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    body = ident if a == 1 else f"{a}*{ident}"
    if first:
        return body if sign == "+" else f"-{body}"
    return f" {sign} {body}"


def serialize_algebra(A: LieAlgebra) -> str:
    lines = [f"algebra {A.name}", f"dim {A.dim}", "basis " + " ".join(A.basis_names)]
    for (i, j), terms in A.brackets.items():
        rhs = "".join(_fmt_coef_term(c, A.basis_names[k], n == 0) for n, (k, c) in enumerate(terms))
        lines.append(f"bracket {A.basis_names[i]} {A.basis_names[j]} = {rhs}")
    return "\n".join(lines) + "\n"


def load_algebra(spec: str) -> LieAlgebra:
    """A built-in family spec or a path to an algebra file."""
    if is_builtin_spec(spec):
        return builtin(spec)
    with open(spec, encoding="utf-8") as fh:
        return parse_algebra(fh.read(), source=spec)
