"""Divisor sums, character-weighted divisor functions, indicators and
class numbers of negative discriminants.

Everything here is exact: integer or Fraction valued, no floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def divisors(n):
    """Positive divisors of n >= 1, ascending."""
    if n < 1:
        raise ValueError("divisors requires n >= 1")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    small.extend(reversed(large))
    return small


@dataclass(frozen=True)
class DivisorFilter:
    """Weight attached to each divisor in a divisor sum.

    kind 'all' and 'odd' weigh matching divisors by 1; 'residue' keeps
    d = a (mod m); 'odd-signed' weighs odd d by (-1)^((d-1)/2).
    """

    kind: str
    a: int = 0
    m: int = 0

    def weight(self, d):
        if self.kind == "all":
            return 1
        if self.kind == "odd":
            return 1 if d % 2 == 1 else 0
        if self.kind == "odd-signed":
            if d % 2 == 0:
                return 0
            return -1 if (d - 1) // 2 % 2 else 1
        if self.kind == "residue":
            return 1 if d % self.m == self.a else 0
        raise ValueError(f"unknown divisor filter kind {self.kind!r}")


ALL = DivisorFilter("all")
ODD = DivisorFilter("odd")
ODD_SIGNED = DivisorFilter("odd-signed")


def residue(a, m):
    """Filter keeping divisors congruent to a mod m."""
    if m < 1 or not 0 <= a < m:
        raise ValueError("residue filter needs 0 <= a < m")
    return DivisorFilter("residue", a, m)


def divisor_sum(n, nu=1, flt=ALL):
    """sum of w(d) * d^nu over divisors d of n, w given by the filter."""
    total = 0
    for d in divisors(n):
        w = flt.weight(d)
        if w:
            total += w * d**nu
    return total


def sigma1(n):
    return divisor_sum(n, 1, ALL)


def chi0(n):
    """Period-4 weight taking -2, 3, -2, 1 at n = 1, 2, 3, 0 (mod 4)."""
    r = n % 4
    if r == 0:
        return 1
    if r == 2:
        return 3
    return -2


def chi_kh(k, h, n):
    """1 when n = 0, k+h or k-h (mod 2k), else 0."""
    if k < 1:
        raise ValueError("chi_kh requires k >= 1")
    r = n % (2 * k)
    return 1 if r in (0, (k + h) % (2 * k), (k - h) % (2 * k)) else 0


def f_kh(k, h, n):
    """(1/n) * sum of chi_kh(d) * d over divisors d of n, exact."""
    if n < 1:
        raise ValueError("f_kh requires n >= 1")
    s = sum(d for d in divisors(n) if chi_kh(k, h, d))
    return _ratio(s, n)


def sigma_star(a, n):
    """(1/n) * sum of divisors of n coprime to a, exact."""
    if n < 1:
        raise ValueError("sigma_star requires n >= 1")
    s = sum(d for d in divisors(n) if math.gcd(d, a) == 1)
    return _ratio(s, n)


def indicator_I(a, n):
    """1 when a divides n."""
    if a < 1:
        raise ValueError("indicator_I requires a >= 1")
    return 1 if n % a == 0 else 0


def _ratio(p, q):
    f = Fraction(p, q)
    return f.numerator if f.denominator == 1 else f


def square_indicator(t):
    """1 when t is the square of a nonnegative integer.

    Accepts exact rationals; non-integers and negatives give 0, and 0
    itself counts as a square.
    """
    if isinstance(t, Fraction):
        if t.denominator != 1:
            return 0
        t = t.numerator
    if t < 0:
        return 0
    r = math.isqrt(t)
    return 1 if r * r == t else 0


def power_indicator(nu, t):
    """1 when t = m^nu for an integer m >= 0 (so 0 and 1 always count)."""
    if nu < 1:
        raise ValueError("power_indicator requires nu >= 1")
    if isinstance(t, Fraction):
        if t.denominator != 1:
            return 0
        t = t.numerator
    if t < 0:
        return 0
    r = _iroot(t, nu)
    return 1 if r**nu == t else 0


def poly_indicator(coeffs, t):
    """1 when t = A(m) for an integer m >= 0, A having positive integer coefficients.

    coeffs lists A as (a_0, a_1, ..., a_deg).
    """
    coeffs = tuple(coeffs)
    if not coeffs or any(c < 1 for c in coeffs):
        raise ValueError("poly_indicator requires positive integer coefficients")
    if isinstance(t, Fraction):
        if t.denominator != 1:
            return 0
        t = t.numerator
    m = 0
    while True:
        v = _poly_eval(coeffs, m)
        if v == t:
            return 1
        if v > t:
            return 0
        m += 1


def indicator(kind, t):
    """Dispatch on ('square',), ('power', nu) or ('poly', coeffs)."""
    tag = kind[0]
    if tag == "square":
        return square_indicator(t)
    if tag == "power":
        return power_indicator(kind[1], t)
    if tag == "poly":
        return poly_indicator(kind[1], t)
    raise ValueError(f"unknown indicator kind {tag!r}")


def _poly_eval(coeffs, x):
    v = 0
    for c in reversed(coeffs):
        v = v * x + c
    return v


def _iroot(t, nu):
    """Floor of the nu-th root of t >= 0."""
    if t < 2:
        return t
    if nu == 1:
        return t
    if nu == 2:
        return math.isqrt(t)
    r = int(round(t ** (1.0 / nu)))
    while r > 0 and r**nu > t:
        r -= 1
    while (r + 1) ** nu <= t:
        r += 1
    return r


def reduced_forms(D):
    """Primitive reduced binary quadratic forms (a, b, c) of discriminant D < 0.

    Reduction: |b| <= a <= c, with b >= 0 whenever |b| = a or a = c.
    """
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError("discriminant must be negative and 0 or 1 mod 4")
    forms = []
    amax = math.isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(-a, a + 1):
            if (b - D) % 2 != 0:
                continue
            num = b * b - D
            if num % (4 * a) != 0:
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and (b == -a or a == c):
                continue
            if math.gcd(math.gcd(a, abs(b)), c) != 1:
                continue
            forms.append((a, b, c))
    return forms


def class_number(D):
    """h(D): number of primitive reduced forms of discriminant D < 0."""
    return len(reduced_forms(D))
