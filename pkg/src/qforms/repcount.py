"""Representation numbers of integers by quadratic, triangular and odd-power
forms: brute-force oracles, series routes, and divisor-sum closed forms.

Conventions: counts are over ordered integer tuples ("lattice") unless a
form or closed expression is documented as nonnegative-domain ("nonneg").
Closed forms that mix conventions say so in their docstrings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import arith
from .arith import ODD, ODD_SIGNED, divisor_sum, divisors, residue
from .series import HalfLaurentSeries, exp_neg
from . import theta


@dataclass(frozen=True)
class FormSpec:
    """(sum a_l x_l^2 + b_l x_l + constant) / scale, counted where integral."""

    terms: tuple
    scale: int = 1
    constant: int = 0
    convention: str = "lattice"

    def __post_init__(self):
        if self.scale not in (1, 2):
            raise ValueError("scale must be 1 or 2")
        if self.convention not in ("lattice", "nonneg"):
            raise ValueError("convention must be 'lattice' or 'nonneg'")
        terms = tuple((int(a), int(b)) for a, b in self.terms)
        if not terms or any(a < 1 for a, _ in terms):
            raise ValueError("need at least one term, each with a_l >= 1")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def diagonal(cls, coeffs):
        return cls(tuple((a, 0) for a in coeffs))

    @classmethod
    def two_form(cls, A, B):
        return cls(((A, 0), (B, 0)))

    @classmethod
    def affine(cls, A, B, C, D, E):
        return cls(((A, C), (B, D)), constant=E)

    @classmethod
    def triangular_sum(cls, m, N, convention="lattice"):
        return cls(tuple((1, m) for _ in range(N)), scale=2, convention=convention)

    def describe(self):
        body = "+".join(f"{a}x{i}^2{b:+d}x{i}" if b else f"{a}x{i}^2" for i, (a, b) in enumerate(self.terms))
        if self.constant:
            body += f"{self.constant:+d}"
        if self.scale != 1:
            body = f"({body})/{self.scale}"
        return f"{body} [{self.convention}]"


@dataclass(frozen=True)
class RepTable:
    """Counts for every target in n_range, tagged with how they were computed."""

    spec: object
    n_range: range
    counts: tuple
    method: str

    def count(self, n):
        if n not in self.n_range:
            raise ValueError(f"{n} outside tabulated range")
        return self.counts[n - self.n_range.start]


def _term_min(a, b, convention):
    """Minimum of a x^2 + b x over the term's domain."""
    cands = []
    v = -b // (2 * a)
    for x in (v, v + 1):
        if convention == "nonneg" and x < 0:
            continue
        cands.append(a * x * x + b * x)
    if convention == "nonneg":
        cands.append(0)  # x = 0 is always allowed
    return min(cands)


def _term_values(a, b, convention, vmax):
    """Map value -> multiplicity for a x^2 + b x <= vmax over the domain."""
    out = {}
    for x in theta._quad_range(a, b, vmax + 1):
        if convention == "nonneg" and x < 0:
            continue
        v = a * x * x + b * x
        if v <= vmax:
            out[v] = out.get(v, 0) + 1
    return out


def oracle_count(spec, n_max):
    """Brute-force enumeration of spec over 0..n_max (independent of series)."""
    s, c = spec.scale, spec.constant
    vtotal = s * n_max - c
    mins = [_term_min(a, b, spec.convention) for a, b in spec.terms]
    dist = {0: 1}
    for i, (a, b) in enumerate(spec.terms):
        other = sum(mins) - mins[i]
        vals = _term_values(a, b, spec.convention, vtotal - other)
        rest = sum(mins[i + 1 :])
        new = {}
        for pv, pc in dist.items():
            for v, vc in vals.items():
                t = pv + v
                if t + rest <= vtotal:
                    new[t] = new.get(t, 0) + pc * vc
        dist = new
    counts = [dist.get(s * n - c, 0) for n in range(n_max + 1)]
    return RepTable(spec, range(n_max + 1), tuple(counts), "oracle")


# -- two squares and diagonal forms ------------------------------------


def r2(n):
    """Ordered integer pairs with x^2 + y^2 = n."""
    if n < 0:
        raise ValueError("r2 requires n >= 0")
    if n == 0:
        return 1
    return 4 * divisor_sum(n, 0, ODD_SIGNED)


def _r2_list(n_max):
    return [r2(n) for n in range(n_max + 1)]


def _int_sqrt_list(f):
    """Exact coefficientwise square root of an integer series with f[0] = 1."""
    if f[0] != 1:
        raise ValueError("square-root pass requires constant term 1")
    n = len(f)
    g = [0] * n
    g[0] = 1
    for t in range(1, n):
        acc = f[t]
        for k in range(1, t):
            gk = g[k]
            if gk:
                gt = g[t - k]
                if gt:
                    acc -= gk * gt
        if acc % 2:
            raise ValueError("square-root pass hit an odd coefficient")
        g[t] = acc // 2
    return g


def _bucket(n):
    return max(16, 1 << int(n).bit_length())


@lru_cache(maxsize=64)
def _two_form_counts(A, B, n_max):
    r2s = _r2_list(n_max)
    f = [0] * (n_max + 1)
    for k in range(0, n_max // A + 1):
        a = r2s[k]
        if not a:
            continue
        base = A * k
        for l in range(0, (n_max - base) // B + 1):
            b = r2s[l]
            if b:
                f[base + B * l] += a * b
    return tuple(_int_sqrt_list(f))


def two_form_table(A, B, n_max):
    """Counts of A x^2 + B y^2 = n for 0 <= n <= n_max (transform route)."""
    if A < 1 or B < 1:
        raise ValueError("coefficients must be >= 1")
    if math.gcd(A, B) != 1:
        raise ValueError("two-square transform requires gcd(A, B) = 1")
    counts = _two_form_counts(A, B, _bucket(n_max))[: n_max + 1]
    return RepTable(FormSpec.two_form(A, B), range(n_max + 1), counts, "transform")


def count_two_form(A, B, n):
    """Ordered integer pairs with A x^2 + B y^2 = n, gcd(A, B) = 1."""
    return two_form_table(A, B, n).count(n)


def count_diagonal(coeffs, n_max):
    """Counts for sum A_k x_k^2 = n via one square-root pass over the
    N-fold convolution of two-square counts."""
    coeffs = [int(a) for a in coeffs]
    if not coeffs or any(a < 1 for a in coeffs):
        raise ValueError("coefficients must be >= 1")
    g = 0
    for a in coeffs:
        g = math.gcd(g, a)
    if g != 1:
        raise ValueError("diagonal transform requires gcd of coefficients 1")
    r2s = np.array(_r2_list(n_max), dtype=np.int64)
    f = None
    for a in coeffs:
        stretched = np.zeros(n_max + 1, dtype=np.int64)
        stretched[:: a] = r2s[: (n_max // a) + 1]
        f = stretched if f is None else np.convolve(f, stretched)[: n_max + 1]
    counts = _int_sqrt_list([int(v) for v in f])
    return RepTable(FormSpec.diagonal(coeffs), range(n_max + 1), tuple(counts), "transform")


def count_affine(A, B, C, D, E, n):
    """Ordered integer pairs with A x^2 + B y^2 + C x + D y + E = n.

    Requires 2A | C and 2B | D (integer square completion) and gcd(A, B) = 1.
    """
    if A < 1 or B < 1:
        raise ValueError("A and B must be >= 1")
    if C % (2 * A) != 0 or D % (2 * B) != 0:
        raise ValueError("affine shift requires 2A | C and 2B | D")
    shifted = n + (C * C) // (4 * A) + (D * D) // (4 * B) - E
    if shifted < 0:
        return 0
    return count_two_form(A, B, shifted)


def integer_roots(coeffs, target):
    """Integer solutions t of P(t) = target, P given as (c_0, c_1, ...)."""
    q = list(coeffs)
    if len(q) < 2 or all(c == 0 for c in q[1:]):
        raise ValueError("polynomial must be nonconstant")
    q[0] -= target
    roots = [0] if q[0] == 0 else []
    while q[0] == 0 and len(q) > 1:  # factor out t; nonzero roots are unchanged
        q = q[1:]
    if len(q) == 1 or all(c == 0 for c in q[1:]):
        return roots
    for d in divisors(abs(q[0])):
        for t in (d, -d):
            if arith._poly_eval(q, t) == 0 and t not in roots:
                roots.append(t)
    return sorted(roots)


def count_poly_composed(poly, A, B, C, D, E, n):
    """Counts of the affine form evaluated at P(t) = n over integer roots t."""
    return sum(count_affine(A, B, C, D, E, t) for t in integer_roots(poly, n))


# -- power sums ----------------------------------------------------------


def _indicator_values(kind, n_max):
    tag = kind[0]
    vals = []
    if tag == "square":
        m = 0
        while m * m <= n_max:
            vals.append(m * m)
            m += 1
    elif tag == "power":
        nu = kind[1]
        m = 0
        while m**nu <= n_max:
            vals.append(m**nu)
            m += 1
    elif tag == "poly":
        coeffs = kind[1]
        m = 0
        while True:
            v = arith._poly_eval(coeffs, m)
            if v > n_max:
                break
            vals.append(v)
            m += 1
    else:
        raise ValueError(f"unknown indicator kind {tag!r}")
    return vals


def count_power_sum(kind, n):
    """Ordered pairs (k, n-k) with both parts hit by the indicator kind."""
    if n < 0:
        raise ValueError("count_power_sum requires n >= 0")
    return sum(arith.indicator(kind, n - v) for v in _indicator_values(kind, n))


# -- odd power forms: cubic and quintic ----------------------------------


def oracle_odd_power_pairs(nu, n, domain="integer"):
    """Ordered pairs with x^nu + y^nu = n by direct enumeration."""
    if nu < 3 or nu % 2 == 0:
        raise ValueError("nu must be odd and >= 3")
    if n < 1:
        raise ValueError("n must be >= 1")
    if domain == "nonneg":
        count = 0
        x = 0
        while x**nu <= n:
            rest = n - x**nu
            y = arith._iroot(rest, nu)
            if y**nu == rest:
                count += 1
            x += 1
        return count
    if domain != "integer":
        raise ValueError("domain must be 'integer' or 'nonneg'")
    if nu == 3:
        bound = math.isqrt(4 * n // 3) + 2
    else:
        bound = int(round((4 * n) ** (1.0 / (nu - 1)))) + 2
    count = 0
    for x in range(-bound, bound + 1):
        rest = n - x**nu
        y = arith._iroot(abs(rest), nu)
        if rest >= 0:
            if y**nu == rest:
                count += 1
        elif y**nu == -rest:
            count += 1
    return count


def cubic_count(n):
    """Ordered integer pairs with x^3 + y^3 = n, by the divisor closed form."""
    if n < 1:
        raise ValueError("cubic_count requires n >= 1")
    exact = 0
    total = 0
    for d in divisors(n):
        if d**3 == 4 * n:
            exact += 1
            continue
        total += 2 * arith.square_indicator(Fraction(-d * d + 4 * (n // d), 3))
    return exact + total


def quintic_count(n, variant="amended"):
    """Ordered pair count for x^5 + y^5 = n by the nested-radical closed form.

    'amended' counts over nonnegative integers and matches the enumeration
    oracle; 'as-printed' keeps the leading minus sign and excludes the
    argument 0, reproducing the printed formula's defects (-1 at n = 64,
    0 at n = 32).
    """
    if n < 1:
        raise ValueError("quintic_count requires n >= 1")
    if variant not in ("amended", "as-printed"):
        raise ValueError("variant must be 'amended' or 'as-printed'")
    first = 0
    second = 0
    for d in divisors(n):
        if d**5 == 16 * n:
            first += 1
            continue
        inner = 5 * d**4 + 20 * (n // d)
        if not arith.square_indicator(inner):
            continue
        s1 = math.isqrt(inner)
        outer = -25 * d * d + 10 * s1
        if not arith.square_indicator(outer):
            continue
        s2 = math.isqrt(outer)
        num = 5 * d - s2
        if num % 10 != 0:
            continue
        arg = num // 10
        if arg >= 1 or (arg == 0 and variant == "amended"):
            second += 2
    return (first if variant == "amended" else -first) + second


# -- triangular forms -----------------------------------------------------


def tri_count(m, N, n_max, convention="lattice"):
    """Counts of sum t_m(x_k) = n (N variables) from theta series powers."""
    if m < 0 or N < 1:
        raise ValueError("need m >= 0 and N >= 1")
    B = (m * m) // 4  # deepest half-unit exponent of one factor
    order_half = 2 * n_max + (N - 1) * B + 2
    order_q = order_half // 2 + 1
    if convention == "lattice":
        one = theta.series(theta.triangular(m), order_q)
    elif convention == "nonneg":
        terms = []
        x = 0
        while x * x + m * x < 2 * order_q:
            terms.append((x * x + m * x, 1))
            x += 1
        one = HalfLaurentSeries.from_terms(terms, 2 * order_q)
    else:
        raise ValueError("convention must be 'lattice' or 'nonneg'")
    base = one.base
    arr = np.array([int(c) for c in one.coeffs], dtype=np.int64)
    prod, pbase = arr, base
    for _ in range(N - 1):
        prod = np.convolve(prod, arr)
        pbase += base
    counts = []
    for n in range(n_max + 1):
        idx = 2 * n - pbase
        counts.append(int(prod[idx]) if 0 <= idx < len(prod) else 0)
    spec = FormSpec.triangular_sum(m, N, convention)
    return RepTable(spec, range(n_max + 1), tuple(counts), "series")


@lru_cache(maxsize=32)
def _delta_counts(N, n_max):
    """Lattice counts for N-fold sums of t_1 values."""
    return tri_count(1, N, n_max).counts


def tri_reduce(m, N, n):
    """Reduce a general triangular count to t_1 sums or square counts.

    Odd m = 2p+1 maps to the N-fold t_1 count at n + N p(p+1)/2; even
    m = 2p maps to r_N(2n + N p^2).  Both sides use lattice convention.
    """
    if m < 0 or N < 1 or n < 0:
        raise ValueError("need m >= 0, N >= 1, n >= 0")
    if m % 2 == 1:
        p = (m - 1) // 2
        k = n + N * p * (p + 1) // 2
        return _delta_counts(N, _bucket(k))[k]
    p = m // 2
    k = 2 * n + N * p * p
    return r_N_squares(N, _bucket(k)).counts[k]


@lru_cache(maxsize=32)
def _rN_counts(N, n_max):
    arr = np.zeros(n_max + 1, dtype=np.int64)
    arr[0] = 1
    i = 1
    while i * i <= n_max:
        arr[i * i] = 2
        i += 1
    prod = arr
    for _ in range(N - 1):
        prod = np.convolve(prod, arr)[: n_max + 1]
    return tuple(int(v) for v in prod)


def r_N_squares(N, n_max):
    """r_N(n): lattice points on spheres sum x_k^2 = n, from theta3^N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    counts = _rN_counts(N, _bucket(n_max))[: n_max + 1]
    return RepTable(FormSpec.diagonal([1] * N), range(n_max + 1), counts, "series")


def s_m(m, n):
    """Closed form for pairs t_m(x) + t_m(y) = n (lattice convention).

    Even m: a signed odd-divisor sum at n + m^2/4 (value 1 when that
    argument is 0); odd m: 4(d_1 - d_3)(m^2 + 4n) counting divisors 1 and
    3 mod 4.
    """
    if m < 0 or n < 0:
        raise ValueError("need m >= 0 and n >= 0")
    if m % 2 == 0:
        k = n + (m // 2) ** 2
        if k == 0:
            return 1
        return 4 * divisor_sum(k, 0, ODD_SIGNED)
    M = m * m + 4 * n
    return 4 * (divisor_sum(M, 0, residue(1, 4)) - divisor_sum(M, 0, residue(3, 4)))


def r4_closed(n):
    """r_4(n): 8 sigma(n) for odd n, 24 * (odd-divisor sigma) for even n."""
    if n < 0:
        raise ValueError("r4_closed requires n >= 0")
    if n == 0:
        return 1
    if n % 2 == 1:
        return 8 * divisor_sum(n, 1, arith.ALL)
    return 24 * divisor_sum(n, 1, ODD)


def _squarefree(n):
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


_R3_TABLE = {1: 6, 2: 12, 3: 8}


def r3_closed(n):
    """r_3(n) by class numbers, on its validated domain.

    Validated: after removing factors of 4, the residual is 1, 2 or 3
    (tabled), is 7 mod 8 (zero), or is squarefree (class-number formula).
    Anything else raises, signalling fallback to the theta3^3 series.
    """
    if n < 0:
        raise ValueError("r3_closed requires n >= 0")
    if n == 0:
        return 1
    m = n
    while m % 4 == 0:
        m //= 4
    if m in _R3_TABLE:
        return _R3_TABLE[m]
    if m % 8 == 7:
        return 0
    if not _squarefree(m):
        raise ValueError(
            f"r3 closed form validated only for squarefree residuals: {n} reduces to {m}"
        )
    if m % 8 == 3:
        return 24 * arith.class_number(-m)
    return 12 * arith.class_number(-4 * m)


def r3(n):
    """r_3(n): class-number closed form with series fallback."""
    try:
        return r3_closed(n)
    except ValueError:
        return r_N_squares(3, _bucket(n)).counts[n]


def tri_N_closed(m, N, n):
    """Divisor-sum counts for N-fold t_m sums, N in {3, 4}.

    N = 4, even m: r_4(2n + 4p^2), lattice convention.  N = 4, odd m:
    sigma_1(2n + 4p(p+1) + 1), nonneg convention (lattice is 16x this).
    N = 3 requires even m and gives r_3(2n + 3p^2), lattice convention.
    """
    if n < 0 or m < 0:
        raise ValueError("need m >= 0 and n >= 0")
    if N == 4:
        if m % 2 == 0:
            p = m // 2
            return r4_closed(2 * n + 4 * p * p)
        p = (m - 1) // 2
        return divisor_sum(2 * n + 4 * p * (p + 1) + 1, 1, arith.ALL)
    if N == 3:
        if m % 2 == 1:
            raise ValueError("no closed three-variable form for odd m")
        p = m // 2
        return r3(2 * n + 3 * p * p)
    raise ValueError("closed forms cover N in {3, 4} only")


def tri_N_closed_strict(m, N, n):
    """Like tri_N_closed but never falls back to the series for r_3."""
    if N == 3:
        if m % 2 == 1:
            raise ValueError("no closed three-variable form for odd m")
        p = m // 2
        arg = 2 * n + 3 * p * p
        return r3_closed(arg) if arg else 1
    return tri_N_closed(m, N, n)


# -- exp-transform route ---------------------------------------------------


def exp_method_count(terms, n_max):
    """Counts for sum (k_l x_l^2 + h_l x_l) = n via the exp transform.

    Each term needs k > |h| > 0 with k + h odd; the exponent series is
    sum over n of (-1)^n (sum_l f_(k_l,h_l)(n)) q^n.
    """
    terms = tuple((int(k), int(h)) for k, h in terms)
    if not terms:
        raise ValueError("need at least one (k, h) term")
    for k, h in terms:
        if not (k > abs(h) > 0):
            raise ValueError(f"exp route requires k > |h| > 0, got ({k}, {h})")
        if (k + h) % 2 == 0:
            raise ValueError(f"exp route requires opposite parity, got ({k}, {h})")
    order = n_max + 1
    a_terms = []
    for nn in range(1, order):
        v = sum(arith.f_kh(k, h, nn) for k, h in terms)
        a_terms.append((2 * nn, v if nn % 2 == 0 else -v))
    a = HalfLaurentSeries.from_terms(a_terms, 2 * order)
    e = exp_neg(a)
    counts = []
    for nn in range(n_max + 1):
        c = e.coeff(2 * nn)
        if not isinstance(c, int):
            raise ArithmeticError("exp transform produced a non-integer count")
        counts.append(c)
    spec = FormSpec(tuple((k, h) for k, h in terms))
    return RepTable(spec, range(n_max + 1), tuple(counts), "transform")
