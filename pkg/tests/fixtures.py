"""Published Casimir operators and related elements, transcribed as expressions.

Generator names follow the built-in algebras: ``e1..en`` for the filiform
family; ``M, P0_i, P1_i, H, D, C, Jij`` (written ``Ji_j``) for Schrodinger.
Products are read left to right and then normal-ordered.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial

from casimir.algebra import filiform, schrodinger
from casimir.enveloping import Enveloping, UEAElement, enveloping


# ---------------------------------------------------------------------------
# model filiform L_n
# ---------------------------------------------------------------------------

def filiform_env(n: int) -> Enveloping:
    return enveloping(filiform(n))


def Q(env: Enveloping, k: int) -> UEAElement:
    """``e_{k+1}^2 + 2 sum_{j=1}^k (-1)^j e_{k+1-j} e_{k+1+j}``."""
    e = lambda i: env.gen(f"e{i}")  # noqa: E731
    out = env.mul(e(k + 1), e(k + 1))
    for j in range(1, k + 1):
        out = out + env.mul(e(k + 1 - j), e(k + 1 + j)) * (2 * (-1) ** j)
    return out


def C(env: Enveloping, k: int) -> UEAElement:
    """Cubic Casimir with the first sum multiplied by ``e_1`` (homogeneous form)."""
    e = lambda i: env.gen(f"e{i}")  # noqa: E731
    s = (-1) ** k
    out = env.zero()
    for j in range(1, k + 2):
        out = out + env.mul(e(1), e(j), e(2 * k + 3 - j)) * (s * (2 * k + 3 - 2 * j) * (-1) ** j)
    out = out + env.mul(e(1), e(2), e(2 * k + 1)) * (2 * s)
    out = out - env.mul(e(2), e(k + 1), e(k + 1))
    for j in range(1, k + 1):
        out = out + env.mul(e(2), e(1 + j), e(2 * k + 1 - j)) * (s * 2 * (-1) ** j)
    return out


def C_uncorrected(env: Enveloping, k: int) -> UEAElement:
    """The displayed formula without the ``e_1`` factor (inhomogeneous)."""
    e = lambda i: env.gen(f"e{i}")  # noqa: E731
    s = (-1) ** k
    out = env.zero()
    for j in range(1, k + 2):
        out = out + env.mul(e(j), e(2 * k + 3 - j)) * (s * (2 * k + 3 - 2 * j) * (-1) ** j)
    out = out + env.mul(e(1), e(2), e(2 * k + 1)) * (2 * s)
    out = out - env.mul(e(2), e(k + 1), e(k + 1))
    for j in range(1, k + 1):
        out = out + env.mul(e(2), e(1 + j), e(2 * k + 1 - j)) * (s * 2 * (-1) ** j)
    return out


def xi(env: Enveloping, k: int) -> UEAElement:
    e = lambda i: env.gen(f"e{i}")  # noqa: E731
    out = env.power(e(2), k + 1) * Fraction((-1) ** k * k, factorial(k + 1))
    for i in range(k):
        term = env.mul(env.power(e(2), i), e(k + 2 - i), env.power(e(1), k - i))
        out = out + term * Fraction((-1) ** i, factorial(i))
    return out


# ---------------------------------------------------------------------------
# Schrodinger sch(d)
# ---------------------------------------------------------------------------

def sch_env(d: int) -> Enveloping:
    return enveloping(schrodinger(d))


K3_1 = "M*D^2 - 3*M*D - 4*M*H*C + 2*P1_1^2*H + 2*P0_1^2*C - 2*P0_1*P1_1*D"

K2_2 = "M*J1_2 + P0_1*P1_2 - P0_2*P1_1"

K3_2 = ("M*D^2 - 4*M*D - 4*M*H*C + 2*P1_1^2*H + 2*P1_2^2*H + 2*P0_1^2*C + 2*P0_2^2*C"
        " - 2*P0_1*P1_1*D - 2*P0_2*P1_2*D + M*J1_2^2 + 2*P0_1*P1_2*J1_2 - 2*P0_2*P1_1*J1_2")

SCH2_CUBIC_SPURIOUS = {
    "Ka": ("M*D^2 - 4*M*D - 4*M*H*C + 2*P1_1^2*H + 2*P1_2^2*H + 2*P0_1^2*C"
           " + 2*P0_2^2*C - 2*P0_1*P1_1*D - 2*P0_2*P1_2*D - M*J1_2^2"),
    "Kb": "M*J1_2^2 + P0_1*P1_2*J1_2 - P0_2*P1_1*J1_2",
}

# K for sch(2) built from the virtual copy of sl(2), expanded as printed
K_VIRTUAL_2 = ("M^2*D^2 - 4*M^2*D - 4*M^2*H*C + 2*M*P1_1^2*H + 2*M*P1_2^2*H + 2*M*P0_1^2*C"
               " + 2*M*P0_2^2*C - 2*M*P0_1*P1_1*D - 2*M*P0_2*P1_2*D + M*P0_1*P1_1 + M*P0_2*P1_2"
               " + 2*P0_1*P0_2*P1_1*P1_2 - P0_1^2*P1_2^2 - P0_2^2*P1_1^2 - M^2")

SCH3_CUBIC_SPURIOUS = {
    "Ka": ("-5*M*D + M*D^2 - 4*M*H*C + 2*P1_1^2*H + 2*P1_2^2*H + 2*P1_3^2*H"
           " + 2*P0_1^2*C + 2*P0_2^2*C + 2*P0_3^2*C - 2*P0_1*P1_1*D - 2*P0_2*P1_2*D - 2*P0_3*P1_3*D"
           " - M*J1_2^2 - M*J1_3^2 - M*J2_3^2"),
    "Kb": "M*J1_2^2 - P0_2*P1_1*J1_2 + P0_1*P1_2*J1_2",
    "Kc": "M*J1_3^2 - P0_3*P1_1*J1_3 + P0_1*P1_3*J1_3",
    "Kd": "M*J2_3^2 - P0_3*P1_2*J2_3 + P0_2*P1_3*J2_3",
}

SCH3_QUARTIC_SPURIOUS = {
    "Ka": "M^2*J1_2^2 - M*P0_1*P1_1 + M*P0_2*P1_2 + 2*M*P0_1*P1_2*J1_2 - P0_2^2*P1_1^2 + P0_1^2*P1_2^2",
    "Kb": "M^2*J1_2^2 + M*P0_1*P1_1 + M*P0_2*P1_2 - P0_1^2*P1_2^2 - P0_2^2*P1_1^2 + 2*P0_1*P0_2*P1_1*P1_2",
    "Kc": "-M^2*J1_2^2 - M*P0_1*P1_1 + M*P0_2*P1_2 + 2*M*P0_2*P1_1*J1_2 - P0_2^2*P1_1^2 + P0_1^2*P1_2^2",
    "Kd": "M^2*J1_3^2 - M*P0_1*P1_1 + M*P0_3*P1_3 + 2*M*P0_1*P1_3*J1_3 - P0_3^2*P1_1^2 + P0_1^2*P1_3^2",
    "Ke": "M^2*J1_3^2 + M*P0_1*P1_1 + M*P0_3*P1_3 - P0_1^2*P1_3^2 - P0_3^2*P1_1^2 + 2*P0_1*P0_3*P1_1*P1_3",
    "Kf": "-M^2*J1_3^2 - M*P0_1*P1_1 + M*P0_3*P1_3 + 2*M*P0_3*P1_1*J1_3 - P0_3^2*P1_1^2 + P0_1^2*P1_3^2",
    "Kg": "M^2*J2_3^2 - M*P0_2*P1_2 + M*P0_3*P1_3 + 2*M*P0_2*P1_3*J2_3 - P0_3^2*P1_2^2 + P0_2^2*P1_3^2",
    "Kh": "M^2*J2_3^2 + M*P0_2*P1_2 + M*P0_3*P1_3 - P0_2^2*P1_3^2 - P0_3^2*P1_2^2 + 2*P0_2*P0_3*P1_2*P1_3",
    "Ki": "-M^2*J2_3^2 - M*P0_2*P1_2 + M*P0_3*P1_3 + 2*M*P0_3*P1_2*J2_3 - P0_3^2*P1_2^2 + P0_2^2*P1_3^2",
}

K4_3 = ("-2*M*(P0_1*P1_1 + P0_2*P1_2 + P0_3*P1_3) + M^2*(J1_2^2 + J1_3^2 + J2_3^2)"
        " + 2*M*(P0_1*P1_2 - P0_2*P1_1)*J1_2 + 2*M*(P0_1*P1_3 - P0_3*P1_1)*J1_3"
        " + 2*M*(P0_2*P1_3 - P0_3*P1_2)*J2_3 + P0_1^2*P1_2^2 + P0_2^2*P1_1^2"
        " + P0_1^2*P1_3^2 + P0_3^2*P1_1^2 + P0_2^2*P1_3^2 + P0_3^2*P1_2^2"
        " - 2*P0_1*P0_2*P1_1*P1_2 - 2*P0_1*P0_3*P1_1*P1_3 - 2*P0_2*P0_3*P1_2*P1_3")

K3_4 = ("M*D^2 - 6*M*D - 4*M*H*C + 2*(P1_1^2 + P1_2^2 + P1_3^2 + P1_4^2)*H"
        " + 2*(P0_1^2 + P0_2^2 + P0_3^2 + P0_4^2)*C"
        " - 2*(P0_1*P1_1 + P0_2*P1_2 + P0_3*P1_3 + P0_4*P1_4)*D"
        " + M*(J1_2^2 + J1_3^2 + J1_4^2 + J2_3^2 + J2_4^2 + J3_4^2)"
        " - 2*(P0_2*P1_1 - P0_1*P1_2)*J1_2 - 2*(P0_3*P1_1 - P0_1*P1_3)*J1_3"
        " - 2*(P0_4*P1_1 - P0_1*P1_4)*J1_4 - 2*(P0_3*P1_2 - P0_2*P1_3)*J2_3"
        " - 2*(P0_4*P1_2 - P0_2*P1_4)*J2_4 - 2*(P0_4*P1_3 - P0_3*P1_4)*J3_4")

KBAR3_4 = ("M*(J1_2*J3_4 - J1_3*J2_4 + J1_4*J2_3) + (P0_1*P1_2 - P0_2*P1_1)*J3_4"
           " + (P0_3*P1_1 - P0_1*P1_3)*J2_4 + (P0_2*P1_3 - P0_3*P1_2)*J1_4"
           " + (P0_1*P1_4 - P0_4*P1_1)*J2_3 + (P0_4*P1_2 - P0_2*P1_4)*J1_3"
           " + (P0_3*P1_4 - P0_4*P1_3)*J1_2")

K4_4 = ("-3*M*(P0_1*P1_1 + P0_2*P1_2 + P0_3*P1_3 + P0_4*P1_4)"
        " + M^2*(J1_2^2 + J1_3^2 + J1_4^2 + J2_3^2 + J2_4^2 + J3_4^2)"
        " + 2*M*(P0_1*P1_2 - P0_2*P1_1)*J1_2 + 2*M*(P0_1*P1_3 - P0_3*P1_1)*J1_3"
        " + 2*M*(P0_1*P1_4 - P0_4*P1_1)*J1_4 + 2*M*(P0_2*P1_3 - P0_3*P1_2)*J2_3"
        " + 2*M*(P0_2*P1_4 - P0_4*P1_2)*J2_4 + 2*M*(P0_3*P1_4 - P0_4*P1_3)*J3_4"
        " + (P0_1^2*P1_2^2 + P0_2^2*P1_1^2) + (P0_1^2*P1_3^2 + P0_3^2*P1_1^2)"
        " + (P0_1^2*P1_4^2 + P0_4^2*P1_1^2) + (P0_2^2*P1_3^2 + P0_3^2*P1_2^2)"
        " + (P0_2^2*P1_4^2 + P0_4^2*P1_2^2) + (P0_3^2*P1_4^2 + P0_4^2*P1_3^2)"
        " - 2*P0_1*P0_2*P1_1*P1_2 - 2*P0_1*P0_3*P1_1*P1_3 - 2*P0_1*P0_4*P1_1*P1_4"
        " - 2*P0_2*P0_3*P1_2*P1_3 - 2*P0_2*P0_4*P1_2*P1_4 - 2*P0_3*P0_4*P1_3*P1_4")


def J(env: Enveloping, i: int, j: int) -> UEAElement:
    """``J_ij`` for any ordered pair, using ``J_ji = -J_ij``."""
    if i < j:
        return env.gen(f"J{i}_{j}")
    return -env.gen(f"J{j}_{i}")


def general_cubic(env: Enveloping, d: int) -> UEAElement:
    """Cubic of weight ``[M]`` for any ``d``, with the ``M`` in ``-4MHC`` and the
    index in ``P_{0,j}P_{1,i}`` restored (the printed closed form drops both)."""
    g = env.gen
    M, H, D, Cc = g("M"), g("H"), g("D"), g("C")
    out = env.mul(M, D, D) - env.mul(M, D) * (d + 2) - env.mul(M, H, Cc) * 4
    for i in range(1, d + 1):
        P0, P1 = g(f"P0_{i}"), g(f"P1_{i}")
        out = out + (env.mul(P1, P1, H) + env.mul(P0, P0, Cc) - env.mul(P0, P1, D)) * 2
    for i, j in combinations(range(1, d + 1), 2):
        Jij = J(env, i, j)
        inner = env.mul(M, Jij) + (env.mul(g(f"P0_{i}"), g(f"P1_{j}")) - env.mul(g(f"P0_{j}"), g(f"P1_{i}"))) * 2
        out = out + env.mul(inner, Jij)
    return out


def general_cubic_as_printed(env: Enveloping, d: int) -> UEAElement:
    """The closed form exactly as displayed (``-4HC``, ``P_{0,j}P_{1,j}``)."""
    g = env.gen
    M, H, D, Cc = g("M"), g("H"), g("D"), g("C")
    out = env.mul(M, D, D) - env.mul(M, D) * (d + 2) - env.mul(H, Cc) * 4
    for i in range(1, d + 1):
        P0, P1 = g(f"P0_{i}"), g(f"P1_{i}")
        out = out + (env.mul(P1, P1, H) + env.mul(P0, P0, Cc) - env.mul(P0, P1, D)) * 2
    for i, j in combinations(range(1, d + 1), 2):
        Jij = J(env, i, j)
        inner = env.mul(M, Jij) + (env.mul(g(f"P0_{i}"), g(f"P1_{j}")) - env.mul(g(f"P0_{j}"), g(f"P1_{j}"))) * 2
        out = out + env.mul(inner, Jij)
    return out


def general_quartic(env: Enveloping, d: int) -> UEAElement:
    g = env.gen
    M = g("M")
    out = env.zero()
    for i, j in combinations(range(1, d + 1), 2):
        P0i, P1i, P0j, P1j = g(f"P0_{i}"), g(f"P1_{i}"), g(f"P0_{j}"), g(f"P1_{j}")
        Jij = J(env, i, j)
        out = (out + env.mul(M, M, Jij, Jij)
               + env.mul(M, env.mul(P0i, P1j) - env.mul(P0j, P1i), Jij) * 2
               + env.mul(P0i, P0i, P1j, P1j) + env.mul(P0j, P0j, P1i, P1i)
               - env.mul(P0i, P1i, P0j, P1j) * 2)
    for i in range(1, d + 1):
        out = out - env.mul(M, g(f"P0_{i}"), g(f"P1_{i}")) * (d - 1)
    return out


def virtual_sl2(env: Enveloping, d: int, shift: Fraction | None = None):
    """``(H~, C~, D~)``; ``shift`` is the multiple of ``M`` in ``D~`` (default ``d/2``)."""
    g = env.gen
    M, H, D, Cc = g("M"), g("H"), g("D"), g("C")
    if shift is None:
        shift = Fraction(d, 2)
    Ht = env.mul(M, H)
    Ct = env.mul(M, Cc)
    Dt = env.mul(M, D) - M * shift
    for i in range(1, d + 1):
        P0, P1 = g(f"P0_{i}"), g(f"P1_{i}")
        Ht = Ht - env.mul(P0, P0) * Fraction(1, 2)
        Ct = Ct - env.mul(P1, P1) * Fraction(1, 2)
        Dt = Dt - env.mul(P0, P1)
    return Ht, Ct, Dt


def virtual_J(env: Enveloping, i: int, j: int) -> UEAElement:
    g = env.gen
    return env.mul(g("M"), J(env, i, j)) + env.mul(g(f"P0_{i}"), g(f"P1_{j}")) - env.mul(g(f"P0_{j}"), g(f"P1_{i}"))


def sl2_casimir_of_virtual_copy(env: Enveloping, d: int, shift: Fraction | None = None) -> UEAElement:
    """``D~^2 - 2 H~C~ - 2 C~H~``."""
    Ht, Ct, Dt = virtual_sl2(env, d, shift)
    return env.mul(Dt, Dt) - env.mul(Ht, Ct) * 2 - env.mul(Ct, Ht) * 2
