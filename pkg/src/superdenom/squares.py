"""Theta series, the Gauss identity and the eight-squares count.

The square-count oracle deliberately stays away from the theta machinery:
r8 is obtained by brute-force enumeration of four-dimensional integer
vectors (with partial-norm pruning) paired against itself, and checked
against the eightfold convolution of the one-square counts and against
the twisted cubic divisor sum.
"""

from __future__ import annotations

import math
import time
from functools import lru_cache

from .report import QReport, compare_series
from .series import GradedSeries, apply_pochhammer, mul, q_lattice

QL = q_lattice()

ENUMERATION_LIMIT = 64


@lru_cache(maxsize=None)
def theta(order: int, sign: int = 1) -> GradedSeries:
    """sum_j (sign*q)^{j^2}, truncated."""
    terms = {(0,): 1}
    j = 1
    while j * j <= order:
        terms[(j * j,)] = 2 * (sign ** (j * j))
        j += 1
    return GradedSeries(QL, order, terms, _validated=True)


@lru_cache(maxsize=None)
def theta_power8(order: int, sign: int = 1) -> GradedSeries:
    t2 = mul(theta(order, sign), theta(order, sign))
    t4 = mul(t2, t2)
    return mul(t4, t4)


def _r1(order: int) -> list[int]:
    out = [0] * (order + 1)
    out[0] = 1
    j = 1
    while j * j <= order:
        out[j * j] = 2
        j += 1
    return out


def _conv(a: list[int], b: list[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, ai in enumerate(a):
        if ai:
            for j in range(0, order - i + 1):
                if b[j]:
                    out[i + j] += ai * b[j]
    return out


def _count4_enumeration(order: int) -> list[int]:
    """Number of v in Z^4 with |v|^2 = n, by direct enumeration."""
    out = [0] * (order + 1)
    r = math.isqrt(order)
    for v1 in range(-r, r + 1):
        n1 = v1 * v1
        if n1 > order:
            continue
        for v2 in range(-r, r + 1):
            n2 = n1 + v2 * v2
            if n2 > order:
                continue
            for v3 in range(-r, r + 1):
                n3 = n2 + v3 * v3
                if n3 > order:
                    continue
                for v4 in range(-r, r + 1):
                    n4 = n3 + v4 * v4
                    if n4 <= order:
                        out[n4] += 1
    return out


def r8_oracle(order: int, method: str = "convolution") -> list[int]:
    """r8(0..order): ordered representations as a sum of eight squares."""
    if method == "convolution":
        r1 = _r1(order)
        r2 = _conv(r1, r1, order)
        r4 = _conv(r2, r2, order)
        return _conv(r4, r4, order)
    if method == "enumeration":
        if order > ENUMERATION_LIMIT:
            raise ValueError(f"enumeration limited to order <= {ENUMERATION_LIMIT}")
        c4 = _count4_enumeration(order)
        return _conv(c4, c4, order)
    raise ValueError(f"unknown method {method!r}")


def gauss_series(order: int) -> GradedSeries:
    """(1-q)_q^inf / (1+q)_q^inf as a truncated series."""
    s = GradedSeries.one(QL, order)
    s = apply_pochhammer(s, (1,), (1,), -1)
    return apply_pochhammer(s, (1,), (1,), +1, inverse=True)


def gauss_check(order: int) -> QReport:
    started = time.perf_counter()
    return compare_series("gauss-identity", gauss_series(order),
                          theta(order, -1), started)


def jacobi_formula(order: int, twist: bool = False) -> GradedSeries:
    """1 + 16 sum_{j,k>=1} (-1)^{(j+1)k} k^3 q^{jk}.

    With twist=True, the companion form 1 + 16 sum (-1)^k k^3 q^{jk}
    (the expansion of the alternating-sign theta power).
    """
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for j in range(1, order + 1):
        for k in range(1, order // j + 1):
            s = (-1) ** k if twist else (-1) ** ((j + 1) * k)
            coeffs[j * k] += 16 * s * k ** 3
    return GradedSeries.from_terms(QL, order,
                                   {(n,): c for n, c in enumerate(coeffs) if c})


def _binom_inv4(j: int) -> int:
    # coefficient of a^j in (1+a)^{-4}
    return (-1) ** j * (j + 1) * (j + 2) * (j + 3) // 6


def intermediate_identity(order: int) -> tuple[GradedSeries, GradedSeries]:
    """Both sides of the evaluated identity:
    ((1-q)_q^inf/(1+q)_q^inf)^8 = 1 - 16 sum_n q^n (q^{2n} - 4 q^n + 1)/(1+q^n)^4,
    with every (1+q^n)^{-4} expanded by the cubic binomial series."""
    g = gauss_series(order)
    g2 = mul(g, g)
    g4 = mul(g2, g2)
    lhs = mul(g4, g4)
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for n in range(1, order + 1):
        for j in range(0, (order - n) // n + 1):
            b = _binom_inv4(j)
            for shift, w in ((2 * n, 1), (n, -4), (0, 1)):
                e = n + shift + j * n
                if e <= order:
                    coeffs[e] += -16 * w * b
    rhs = GradedSeries.from_terms(QL, order,
                                  {(n,): c for n, c in enumerate(coeffs) if c})
    return lhs, rhs


def intermediate_identity_check(order: int) -> QReport:
    started = time.perf_counter()
    lhs, rhs = intermediate_identity(order)
    return compare_series("intermediate-eight-power", lhs, rhs, started)


def verify_jacobi(order: int) -> QReport:
    """Three-way check of r8 plus the sign-twisted companion identity."""
    started = time.perf_counter()
    t8 = theta_power8(order)
    formula = jacobi_formula(order)
    conv = r8_oracle(order, "convolution")
    enum = (r8_oracle(order, "enumeration")
            if order <= ENUMERATION_LIMIT else None)
    theta_coeffs = [t8.coeff((n,)) for n in range(order + 1)]
    formula_coeffs = [formula.coeff((n,)) for n in range(order + 1)]
    twisted_ok = theta_power8(order, -1) == jacobi_formula(order, twist=True)
    rep = compare_series("jacobi-eight-squares", t8, formula, started)
    rep.extra = {
        "theta_vs_formula": theta_coeffs == formula_coeffs,
        "theta_vs_convolution": theta_coeffs == conv,
        "theta_vs_enumeration": (theta_coeffs == enum) if enum is not None else None,
        "twisted_identity": twisted_ok,
    }
    rep.matched = (rep.matched and theta_coeffs == conv and twisted_ok
                   and (enum is None or theta_coeffs == enum))
    return rep


def jacobi_table(order: int) -> list[dict]:
    """Per-n table used by the CLI: enumeration, theta power and divisor formula."""
    t8 = theta_power8(order)
    formula = jacobi_formula(order)
    enum = (r8_oracle(order, "enumeration") if order <= ENUMERATION_LIMIT
            else r8_oracle(order, "convolution"))
    rows = []
    for n in range(order + 1):
        a, b, c = enum[n], t8.coeff((n,)), formula.coeff((n,))
        rows.append({"n": n, "r8_enum": a, "r8_theta": b, "r8_formula": c,
                     "match": a == b == c})
    return rows
