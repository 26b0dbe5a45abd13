"""Exact truncated theta-type series: lattice sums, Pochhammer products,
and the coefficient-transform route through exp.

Orders passed to the constructors here are in integer q-units; the
returned HalfLaurentSeries is valid for every exponent strictly below
that order (internally 2*order half-units).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import f_kh
from .series import HalfLaurentSeries, exp_neg


@dataclass(frozen=True)
class ThetaKind:
    tag: str
    params: tuple = ()


def theta3():
    return ThetaKind("theta3")


def phi():
    """Same series as theta3; kept as the sum-form name."""
    return ThetaKind("theta3")


def psi():
    return ThetaKind("psi")


def f_neg():
    """f(-q) = sum (-1)^n q^(n(3n-1)/2) over all integers n."""
    return ThetaKind("f_neg")


def pochhammer(a_half, step_half, negated=False):
    """(s q^(a/2); q^(step/2))_inf with s = -1 when negated, else +1."""
    if a_half < 1 or step_half < 1:
        raise ValueError("pochhammer needs positive leading exponent and step")
    return ThetaKind("pochhammer", (a_half, step_half, bool(negated)))


def general(k, h):
    """sum over integers n of q^(k n^2 + h n)."""
    if k < 1:
        raise ValueError("general theta requires k >= 1")
    return ThetaKind("general", (k, h))


def alt_general(k, h):
    """sum over integers n of (-1)^n q^(k n^2 + h n)."""
    if k < 1:
        raise ValueError("general theta requires k >= 1")
    return ThetaKind("alt_general", (k, h))


def triangular(m):
    """sum over integers n of q^(t_m(n)), t_m(x) = (x^2 + m x)/2."""
    if m < 0:
        raise ValueError("triangular index m must be >= 0")
    return ThetaKind("triangular", (m,))


def triple_product_rhs(z):
    """prod (1 - q^(2n+2)) (1 + q^(2n+1-z)) (1 + q^(2n+1+z)) over n >= 0."""
    if z < 0:
        raise ValueError("triple_product_rhs requires z >= 0")
    return ThetaKind("triple_product_rhs", (z,))


def _quad_range(a, b, limit):
    """All integers n with a*n^2 + b*n < limit (a >= 1), exact."""
    L = limit - 1
    disc = b * b + 4 * a * L
    if disc < 0:
        return range(0)
    s = math.isqrt(disc)
    lo = (-b - s) // (2 * a) - 1
    hi = (-b + s) // (2 * a) + 2
    return range(lo, hi)


def _sum_form(order_half, exponents_coeffs):
    acc = {}
    for e, c in exponents_coeffs:
        acc[e] = acc.get(e, 0) + c
    return HalfLaurentSeries.from_terms(
        [(e, c) for e, c in acc.items() if c or e == 0], order_half
    )


def _factor_mul(s, e, sign):
    """Multiply s by (1 + sign*q^(e/2)); e may be negative or zero."""
    if e == 0:
        return s.scale(1 + sign)
    return s + s.shift(e).scale(sign)


def series(kind, order):
    """Exact truncated series for the kind, valid below q^order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    oh = 2 * order
    tag = kind.tag
    if tag == "theta3":
        terms = [(0, 1)] + [(2 * n * n, 2) for n in range(1, math.isqrt(order) + 1) if n * n < order]
        return _sum_form(oh, terms)
    if tag == "psi":
        terms = []
        n = 0
        while n * (n + 1) < oh:
            terms.append((n * (n + 1), 1))
            n += 1
        return _sum_form(oh, terms)
    if tag == "f_neg":
        terms = []
        for n in _quad_range(3, -1, oh):
            e = n * (3 * n - 1)
            if 0 <= e < oh:
                terms.append((e, -1 if n % 2 else 1))
        return _sum_form(oh, terms)
    if tag == "general" or tag == "alt_general":
        k, h = kind.params
        terms = []
        for n in _quad_range(k, h, order):
            e = k * n * n + h * n
            if e < order:
                c = -1 if (tag == "alt_general" and n % 2) else 1
                terms.append((2 * e, c))
        return _sum_form(oh, terms)
    if tag == "triangular":
        (m,) = kind.params
        terms = []
        for n in _quad_range(1, m, oh):
            e = n * n + m * n
            if e < oh:
                terms.append((e, 1))
        return _sum_form(oh, terms)
    if tag == "pochhammer":
        a, step, negated = kind.params
        return _pochhammer_product(a, step, negated, oh)
    if tag == "triple_product_rhs":
        (z,) = kind.params
        return _triple_product(z, oh)
    raise ValueError(f"unknown theta kind {tag!r}")


def _pochhammer_product(a_half, step_half, negated, order_half):
    sign = 1 if negated else -1
    s = HalfLaurentSeries.one(order_half)
    e = a_half
    while e < order_half:
        s = _factor_mul(s, e, sign)
        e += step_half
    return s


def _triple_product(z, order_half):
    neg_room = sum(2 * z - 4 * n - 2 for n in range((2 * z - 2) // 4 + 1) if 4 * n + 2 - 2 * z < 0)
    work = order_half + neg_room + 2
    factors = []
    for start, sign in ((4, -1), (2 - 2 * z, 1), (2 + 2 * z, 1)):
        e = start
        while e < work:
            factors.append((e, sign))
            e += 4
    factors.sort()
    s = HalfLaurentSeries.one(work)
    for e, sign in factors:
        if e < s.order:
            s = _factor_mul(s, e, sign)
    if s.order > order_half:
        s = s.truncate(order_half)
    return s


def phi_product(order):
    """Product form of theta3: (-q;q^2)(q^2;q^2) / [(q;q^2)(-q^2;q^2)]."""
    num = series(pochhammer(2, 4, True), order) * series(pochhammer(4, 4, False), order)
    den = series(pochhammer(2, 4, False), order) * series(pochhammer(4, 4, True), order)
    return num * den.inverse()


def psi_product(order):
    """Product form of psi: (q^2;q^2) / (q;q^2)."""
    num = series(pochhammer(4, 4, False), order)
    den = series(pochhammer(2, 4, False), order)
    return num * den.inverse()


def f_neg_product(order):
    """Product form of f(-q): (q;q)_inf."""
    return series(pochhammer(2, 2, False), order)


def general_theta_via_exp(k, h, order):
    """General theta as exp(-(sum (-1)^n f_kh(n) q^n)).

    Valid when k > |h| > 0 and k + h is odd.
    """
    if not (k > abs(h) > 0):
        raise ValueError("exp route requires k > |h| > 0")
    if (k + h) % 2 == 0:
        raise ValueError("exp route requires k and h of opposite parity")
    terms = [(2 * n, (f_kh(k, h, n) if n % 2 == 0 else -f_kh(k, h, n))) for n in range(1, order)]
    a = HalfLaurentSeries.from_terms(terms, 2 * order)
    return exp_neg(a)


def triple_product_check(p, order):
    """Odd-index triangular sums against their product and psi reductions.

    Checks sum q^(n^2+(2p+1)n) = 2 q^(-p(p+1)) f(-q^2) (-q^2;q^2)^2 and
    sum q^(t_(2p+1)(n)) = 2 q^(-p(p+1)/2) psi(q).
    """
    if p < 0:
        raise ValueError("p must be >= 0")
    z = 2 * p + 1
    lhs1 = series(general(1, z), order)
    fq2 = _sum_form(
        2 * order,
        [
            (2 * n * (3 * n - 1), -1 if n % 2 else 1)
            for n in _quad_range(6, -2, 2 * order)
            if 0 <= 2 * n * (3 * n - 1) < 2 * order
        ],
    )
    poch = series(pochhammer(4, 4, True), order)
    rhs1 = (fq2 * poch.square()).shift(-2 * p * (p + 1)).scale(2)
    if lhs1 != rhs1:
        return False
    lhs2 = series(triangular(z), order)
    rhs2 = series(psi(), order).shift(-p * (p + 1)).scale(2)
    return lhs2 == rhs2


def even_shift_check(p, order):
    """sum q^(t_(2p)(n)) = q^(-p^2/2) * sum q^(n^2/2)."""
    if p < 0:
        raise ValueError("p must be >= 0")
    lhs = series(triangular(2 * p), order)
    rhs = series(triangular(0), order).shift(-p * p)
    return lhs == rhs
