"""Polynomial-coefficient differential operators and Lie algebra realisations.

An operator is stored in normal form ``sum c * x^t * d^k`` with all
coordinate and parameter factors to the left of all derivatives. ``t`` runs
over variables followed by parameters; ``k`` over variables only, since
parameters are never differentiated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, perm
from typing import Mapping, Sequence

from .algebra import LieAlgebra, load_algebra
from .enveloping import Monomial, UEAElement
from .errors import ParseError
from . import exprparse

Key = tuple[tuple[int, ...], tuple[int, ...]]


class DifferentialOperator:
    __slots__ = ("n_vars", "n_params", "terms")

    def __init__(self, n_vars: int, n_params: int = 0, terms: Mapping[Key, object] | None = None):
        self.n_vars = n_vars
        self.n_params = n_params
        clean = {}
        for (t, k), c in (terms or {}).items():
            if len(t) != n_vars + n_params or len(k) != n_vars:
                raise ValueError("term key has the wrong shape")
            if c:
                clean[(tuple(t), tuple(k))] = c if isinstance(c, (int, Fraction)) else Fraction(c)
        self.terms: dict[Key, Fraction | int] = clean

    # constructors --------------------------------------------------------------

    @classmethod
    def constant(cls, n_vars, n_params, c) -> "DifferentialOperator":
        return cls(n_vars, n_params, {((0,) * (n_vars + n_params), (0,) * n_vars): Fraction(c)})

    @classmethod
    def identity(cls, n_vars, n_params=0) -> "DifferentialOperator":
        return cls.constant(n_vars, n_params, 1)

    @classmethod
    def coordinate(cls, n_vars, n_params, i) -> "DifferentialOperator":
        """Multiplication by variable ``i`` (or parameter ``i - n_vars``)."""
        t = [0] * (n_vars + n_params)
        t[i] = 1
        return cls(n_vars, n_params, {(tuple(t), (0,) * n_vars): 1})

    @classmethod
    def derivative(cls, n_vars, n_params, j) -> "DifferentialOperator":
        k = [0] * n_vars
        k[j] = 1
        return cls(n_vars, n_params, {((0,) * (n_vars + n_params), tuple(k)): 1})

    # arithmetic ---------------------------------------------------------------

    def _same_space(self, other: "DifferentialOperator") -> None:
        if (self.n_vars, self.n_params) != (other.n_vars, other.n_params):
            raise ValueError("operators act on different variable spaces")

    def __add__(self, other):
        if not isinstance(other, DifferentialOperator):
            other = DifferentialOperator.constant(self.n_vars, self.n_params, other)
        self._same_space(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return DifferentialOperator(self.n_vars, self.n_params, out)

    __radd__ = __add__

    def __neg__(self):
        return DifferentialOperator(self.n_vars, self.n_params, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, DifferentialOperator):
            return weyl_multiply(self, other)
        s = Fraction(other)
        return DifferentialOperator(self.n_vars, self.n_params, {k: c * s for k, c in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if isinstance(other, DifferentialOperator):
            return (self.n_vars, self.n_params, self.terms) == (other.n_vars, other.n_params, other.terms)
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n_vars, self.n_params, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"DifferentialOperator({self.n_vars}, {self.n_params}, {self.terms!r})"

    @property
    def order(self) -> int:
        return max((sum(k) for _, k in self.terms), default=0)

    def format(self, var_names: Sequence[str], param_names: Sequence[str] = ()) -> str:
        return format_operator(self, var_names, param_names)


def weyl_multiply(a: DifferentialOperator, b: DifferentialOperator) -> DifferentialOperator:
    """Composition ``a o b`` in normal form via the Leibniz rule."""
    a._same_space(b)
    nv = a.n_vars
    out: dict[Key, Fraction | int] = {}
    # group b by derivative part is not needed; the inner loop is short
    for (t1, k1), c1 in a.terms.items():
        if not any(k1):
            for (t2, k2), c2 in b.terms.items():
                key = (tuple(x + y for x, y in zip(t1, t2)), k2)
                v = out.get(key, 0) + c1 * c2
                if v:
                    out[key] = v
                else:
                    del out[key]
            continue
        for (t2, k2), c2 in b.terms.items():
            # d^k1 x^t2 = sum_s prod_i C(k1_i, s_i) * t2_i!/(t2_i - s_i)! x^(t2-s) d^(k1-s)
            ranges = [range(min(k1[i], t2[i]) + 1) for i in range(nv)]
            for s in product(*ranges):
                coef = c1 * c2
                for i in range(nv):
                    si = s[i]
                    if si:
                        coef *= comb(k1[i], si) * perm(t2[i], si)
                t = list(x + y for x, y in zip(t1, t2))
                k = list(k2)
                for i in range(nv):
                    t[i] -= s[i]
                    k[i] += k1[i] - s[i]
                key = (tuple(t), tuple(k))
                v = out.get(key, 0) + coef
                if v:
                    out[key] = v
                else:
                    del out[key]
    res = DifferentialOperator.__new__(DifferentialOperator)
    res.n_vars, res.n_params, res.terms = a.n_vars, a.n_params, out
    return res


def operator_commutator(a: DifferentialOperator, b: DifferentialOperator) -> DifferentialOperator:
    return weyl_multiply(a, b) - weyl_multiply(b, a)


# ---------------------------------------------------------------------------
# realisations
# ---------------------------------------------------------------------------

@dataclass
class Realization:
    """Images of the algebra's generators as first-order operators."""

    name: str
    algebra: LieAlgebra
    var_names: tuple[str, ...]
    param_names: tuple[str, ...]
    images: tuple[DifferentialOperator, ...]
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.images) != self.algebra.dim:
            raise ValueError("one image per generator required")
        nv, npar = len(self.var_names), len(self.param_names)
        for g, op in zip(self.algebra.basis_names, self.images):
            if (op.n_vars, op.n_params) != (nv, npar):
                raise ValueError(f"image of {g} acts on the wrong variable space")
            if op.order > 1:
                raise ValueError(f"image of {g} has derivative order {op.order}; at most 1 allowed")

    @property
    def n_vars(self) -> int:
        return len(self.var_names)

    @property
    def n_params(self) -> int:
        return len(self.param_names)

    def identity(self) -> DifferentialOperator:
        return DifferentialOperator.identity(self.n_vars, self.n_params)

    def image_of_monomial(self, mono: Monomial) -> DifferentialOperator:
        """``rho(X_1)^w_1 o ... o rho(X_N)^w_N``, memoised on prefixes."""
        hit = self._memo.get(mono)
        if hit is not None:
            return hit
        last = -1
        for i in range(len(mono) - 1, -1, -1):
            if mono[i]:
                last = i
                break
        if last < 0:
            op = self.identity()
        else:
            prev = list(mono)
            prev[last] -= 1
            op = weyl_multiply(self.image_of_monomial(tuple(prev)), self.images[last])
        self._memo[mono] = op
        return op

    def format_image(self, i: int) -> str:
        return format_operator(self.images[i], self.var_names, self.param_names)


def apply(R: Realization, K: UEAElement) -> DifferentialOperator:
    """Image of an enveloping-algebra element under the realisation."""
    out: dict[Key, Fraction | int] = {}
    for mono, c in K.terms.items():
        for key, v in R.image_of_monomial(mono).terms.items():
            nv = out.get(key, 0) + c * v
            if nv:
                out[key] = nv
            else:
                del out[key]
    return DifferentialOperator(R.n_vars, R.n_params, out)


@dataclass(frozen=True)
class RealizationFailure:
    pair: tuple[int, int]
    difference: DifferentialOperator

    def describe(self, R: Realization) -> str:
        a, b = (R.algebra.basis_names[i] for i in self.pair)
        diff = format_operator(self.difference, R.var_names, R.param_names)
        return f"rho([{a},{b}]) - [rho({a}),rho({b})] = {diff}, expected 0"


def check_realization(R: Realization) -> RealizationFailure | None:
    """Verify ``rho([X_i, X_j]) = [rho(X_i), rho(X_j)]`` for all ``i < j``."""
    A = R.algebra
    zero = DifferentialOperator(R.n_vars, R.n_params)
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            lhs = zero
            for k, c in A.bracket_terms(i, j):
                lhs = lhs + R.images[k] * c
            diff = lhs - operator_commutator(R.images[i], R.images[j])
            if diff:
                return RealizationFailure((i, j), diff)
    return None


def coadjoint_realization(A: LieAlgebra) -> Realization:
    """``X_i -> sum_{j,k} C^k_ij x_k d/dx_j`` on ``N`` variables."""
    n = A.dim
    images = []
    for i in range(n):
        terms: dict[Key, Fraction] = {}
        for j in range(n):
            for k, c in A.bracket_terms(i, j):
                t = [0] * n
                t[k] = 1
                d = [0] * n
                d[j] = 1
                key = (tuple(t), tuple(d))
                terms[key] = terms.get(key, 0) + c
        images.append(DifferentialOperator(n, 0, terms))
    return Realization("coadjoint", A, tuple(f"x{i}" for i in range(1, n + 1)), (), tuple(images))


def _filiform_realization(A: LieAlgebra, n: int) -> Realization:
    nv = n
    x = lambda i: DifferentialOperator.coordinate(nv, 0, i - 1)  # noqa: E731
    d = lambda i: DifferentialOperator.derivative(nv, 0, i - 1)  # noqa: E731
    images = [DifferentialOperator(nv, 0)]
    for k in range(2, n):
        images.append(x(k - 1) * d(n))
    last = DifferentialOperator(nv, 0)
    for k in range(2, n):
        last = last - x(k - 1) * d(k)
    images.append(last)
    return Realization(f"filiform:{n}", A, tuple(f"x{i}" for i in range(1, n + 1)), (), tuple(images))


def _schrodinger_realization(A: LieAlgebra, dd: int) -> Realization:
    nv = dd + 1  # t, x1..xd
    half = Fraction(1, 2)
    t = DifferentialOperator.coordinate(nv, 1, 0)
    dt = DifferentialOperator.derivative(nv, 1, 0)
    m = DifferentialOperator.coordinate(nv, 1, nv)
    xs = [DifferentialOperator.coordinate(nv, 1, i) for i in range(1, nv)]
    ds = [DifferentialOperator.derivative(nv, 1, i) for i in range(1, nv)]
    euler = DifferentialOperator(nv, 1)
    xsq = DifferentialOperator(nv, 1)
    for xi, di in zip(xs, ds):
        euler = euler + xi * di
        xsq = xsq + xi * xi
    img = {
        "M": m,
        "H": dt,
        "D": -2 * t * dt - euler - half,
        "C": t * t * dt + t * euler + half * m * xsq + half * t,
    }
    for i in range(dd):
        img[f"P0_{i + 1}"] = ds[i]
        img[f"P1_{i + 1}"] = -(t * ds[i]) - m * xs[i]
        for j in range(i + 1, dd):
            img[f"J{i + 1}_{j + 1}"] = -(xs[i] * ds[j]) + xs[j] * ds[i]
    images = tuple(img[name] for name in A.basis_names)
    return Realization(f"schrodinger:{dd}", A, ("t",) + tuple(f"x{i}" for i in range(1, nv)),
                       ("m",), images)


def builtin_realization(spec: str, A: LieAlgebra | None = None) -> Realization:
    """The vector-field realisations of ``filiform:n`` and ``schrodinger:d``."""
    family, _, param = spec.strip().partition(":")
    if family not in ("filiform", "schrodinger") or not param.isdigit():
        raise ValueError(f"no built-in realisation for {spec!r}")
    if A is None:
        A = load_algebra(spec)
    elif A.name != spec.strip():
        raise ValueError(f"built-in realisation {spec!r} does not match algebra {A.name!r}")
    if family == "filiform":
        return _filiform_realization(A, int(param))
    return _schrodinger_realization(A, int(param))


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------

def _fmt_factors(t, k, var_names, param_names) -> str:
    names = list(var_names) + list(param_names)
    parts = []
    for i, e in enumerate(t):
        if e == 1:
            parts.append(names[i])
        elif e > 1:
            parts.append(f"{names[i]}^{e}")
    for j, e in enumerate(k):
        if e == 1:
            parts.append(f"d/d{var_names[j]}")
        elif e > 1:
            parts.append(f"d/d{var_names[j]}^{e}")
    return "*".join(parts)


def format_operator(op: DifferentialOperator, var_names: Sequence[str],
                    param_names: Sequence[str] = ()) -> str:
    if not op.terms:
        return "0"
    out = []
    keys = sorted(op.terms, key=lambda key: (sum(key[1]), key[1], sum(key[0]), key[0]), reverse=True)
    for n, key in enumerate(keys):
        c = Fraction(op.terms[key])
        body = _fmt_factors(key[0], key[1], var_names, param_names)
        a = abs(c)
        text = str(a) if not body else (body if a == 1 else f"{a}*{body}")
        if n == 0:
            out.append(text if c > 0 else f"-{text}")
        else:
            out.append((" + " if c > 0 else " - ") + text)
    return "".join(out)


def parse_operator(text: str, var_names: Sequence[str], param_names: Sequence[str] = ()) -> DifferentialOperator:
    nv, npar = len(var_names), len(param_names)
    index = {name: i for i, name in enumerate(list(var_names) + list(param_names))}

    def ident(name):
        if name not in index:
            raise ParseError(f"unknown variable or parameter {name!r}")
        return DifferentialOperator.coordinate(nv, npar, index[name])

    def deriv(name):
        if name not in index or index[name] >= nv:
            raise ParseError(f"cannot differentiate with respect to {name!r}")
        return DifferentialOperator.derivative(nv, npar, index[name])

    ring = exprparse.Ring(
        number=lambda q: DifferentialOperator.constant(nv, npar, q),
        ident=ident,
        add=lambda a, b: a + b,
        neg=lambda a: -a,
        mul=weyl_multiply,
        deriv=deriv,
    )
    return exprparse.parse(text, ring)


def parse_realization(text: str, A: LieAlgebra, source: str | None = None) -> Realization:
    """Parse the line-based realisation format (see README)."""
    lines = []
    for n, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if s:
            lines.append((n, s))

    def fail(msg, lineno):
        raise ParseError(msg, source, lineno)

    if not lines or lines[0][1].split(None, 1)[0] != "realization":
        fail("expected 'realization <name>' line", lines[0][0] if lines else None)
    n0, s0 = lines.pop(0)
    parts = s0.split(None, 1)
    if len(parts) < 2:
        fail("empty realisation name", n0)
    name = parts[1].strip()
    var_names: list[str] = []
    param_names: list[str] = []
    seen_header = set()
    while lines and lines[0][1].split(None, 1)[0] in ("vars", "params"):
        n, s = lines.pop(0)
        word, _, rest = s.partition(" ")
        if word in seen_header:
            fail(f"duplicate '{word}' line", n)
        seen_header.add(word)
        names = rest.split()
        for v in names:
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", v):
                fail(f"invalid identifier {v!r}", n)
            if v in var_names or v in param_names:
                fail(f"variable and parameter names must be distinct ({v!r} repeated)", n)
            (var_names if word == "vars" else param_names).append(v)
    if "vars" not in seen_header:
        fail("missing 'vars' line", lines[0][0] if lines else n0)

    images: dict[int, DifferentialOperator] = {}
    for n, s in lines:
        m = re.fullmatch(r"map\s+(\S+)\s*=\s*(.+)", s)
        if not m:
            fail(f"expected 'map <generator> = <operator>', got {s!r}", n)
        gen, rhs = m.groups()
        if gen not in A.basis_names:
            fail(f"unknown generator {gen!r}", n)
        i = A.index(gen)
        if i in images:
            fail(f"generator {gen!r} mapped twice", n)
        try:
            op = parse_operator(rhs, var_names, param_names)
        except ParseError as e:
            raise e.located(source, n) from None
        if op.order > 1:
            fail(f"image of {gen} has derivative order {op.order}; only first-order images are allowed", n)
        images[i] = op
    missing = [A.basis_names[i] for i in range(A.dim) if i not in images]
    if missing:
        fail("no image given for " + ", ".join(missing), None)
    return Realization(name, A, tuple(var_names), tuple(param_names),
                       tuple(images[i] for i in range(A.dim)))


def serialize_realization(R: Realization) -> str:
    lines = [f"realization {R.name}", "vars " + " ".join(R.var_names),
             ("params " + " ".join(R.param_names)).rstrip()]
    for i, g in enumerate(R.algebra.basis_names):
        lines.append(f"map {g} = {R.format_image(i)}")
    return "\n".join(lines) + "\n"


def load_realization(spec: str, A: LieAlgebra) -> Realization:
    """``coadjoint``, ``builtin`` (the algebra's own), a family spec, or a file path."""
    spec = spec.strip()
    if spec == "coadjoint":
        return coadjoint_realization(A)
    if spec == "builtin":
        return builtin_realization(A.name, A)
    family = spec.partition(":")[0]
    if family in ("filiform", "schrodinger"):
        return builtin_realization(spec, A)
    with open(spec, encoding="utf-8") as fh:
        return parse_realization(fh.read(), A, source=spec)
