"""Lattice-point counting for the disk and the oscillatory-series
diagnostics around it: Hardy's Bessel series, the P/Q expansion of the
error term R(x), Fresnel closed forms, Euler-Maclaurin defects, and
boundedness scans.

Exact counts use pure integer arithmetic.  The infinite series here are
conditionally convergent; truncated partial sums are averaged over a
window of consecutive cutoffs (TruncationSpec.smooth_window) to tame the
persistent oscillation of plain truncation.  Everything is single-pass
deterministic: outputs depend only on the inputs, never on scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import special as _sp


@dataclass(frozen=True)
class TruncationSpec:
    """Cutoffs for the conditionally convergent series: n_cut/k_cut bound
    the outer/inner sums, smooth_window is how many consecutive
    truncation points get averaged."""

    n_cut: int = 2000
    k_cut: int = 2000
    smooth_window: int = 64

    def __post_init__(self):
        if self.n_cut < 1 or self.k_cut < 1 or self.smooth_window < 1:
            raise ValueError("cutoffs and window must be positive")
        if self.smooth_window > self.n_cut:
            raise ValueError("smooth_window must not exceed n_cut")


@dataclass(frozen=True)
class ScanRow:
    x: float
    count: int
    pi_x: float
    R: float
    R_scaled: float


@dataclass(frozen=True)
class ScanResult:
    rows: list
    summary: dict


def lattice_count(x):
    """#{(i,j) in Z^2 : i^2 + j^2 <= x}, exactly; the <= test is done in
    integer/rational arithmetic, never on floats."""
    if x < 0:
        raise ValueError("x must be nonnegative")
    X = Fraction(x)
    top = math.floor(X)
    total = 0
    for i in range(math.isqrt(top) + 1):
        # j^2 <= X - i^2 for integer j iff j <= isqrt(floor(X) - i^2)
        jmax = math.isqrt(top - i * i)
        total += (2 if i else 1) * (2 * jmax + 1)
    return total


def r2_table(n_max):
    """numpy int64 array of r2(0..n_max) by direct lattice sieving."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    arr = np.zeros(n_max + 1, dtype=np.int64)
    arr[0] = 1
    top = math.isqrt(n_max)
    for i in range(1, top + 1):
        arr[i * i] += 4
        jmax = math.isqrt(n_max - i * i)
        if jmax:
            js = np.arange(1, jmax + 1, dtype=np.int64)
            arr[i * i + js * js] += 4  # indices distinct for fixed i
    return arr


def _window_mean(partials, window):
    w = min(window, len(partials))
    return float(np.mean(partials[-w:]))


def c1(m):
    """Exact rational (-1)^m (-1/2)_m (3/2)_m / m!."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    num = Fraction(1)
    for j in range(m):
        num *= (Fraction(-1, 2) + j) * (Fraction(3, 2) + j)
    return (-1) ** m * num / math.factorial(m)


def bessel_j1(x, method="series", N=3):
    """J_1(x).  'series' sums the power series in adaptive-precision
    arithmetic (immune to the cancellation that kills doubles for large
    x); 'asymptotic' evaluates the large-x cosine/sine expansion with
    c1-coefficient sums truncated at N."""
    if method == "series":
        if x < 0:
            raise ValueError("x must be nonnegative")
        if x == 0:
            return 0.0
        import mpmath

        with mpmath.workdps(20 + int(0.45 * x)):
            half = mpmath.mpf(x) / 2
            term = half
            total = term
            m = 1
            while True:
                term *= -half * half / (m * (m + 1))
                total += term
                if abs(term) < mpmath.mpf(10) ** (-25) * abs(total):
                    return float(total)
                m += 1
    if method == "asymptotic":
        if x <= 0:
            raise ValueError("asymptotic form needs x > 0")
        cos_sum = math.fsum((-1) ** n * float(c1(2 * n)) / (2 * x) ** (2 * n)
                            for n in range(N + 1))
        sin_sum = math.fsum((-1) ** n * float(c1(2 * n + 1)) / (2 * x) ** (2 * n + 1)
                            for n in range(N + 1))
        w = x - 3 * math.pi / 4
        return math.sqrt(2 / (math.pi * x)) * (math.cos(w) * cos_sum
                                               - math.sin(w) * sin_sum)
    raise ValueError(f"unknown method {method!r}")


def hardy_sum(x, spec=TruncationSpec()):
    """pi x + sqrt(x) sum_n r2(n) J_1(2 pi sqrt(nx))/sqrt(n), truncated at
    n_cut and averaged over smooth_window consecutive cutoffs."""
    if x <= 0:
        raise ValueError("x must be positive")
    if float(x).is_integer():
        raise ValueError("integer x sits on a jump of the lattice count")
    n = np.arange(1, spec.n_cut + 1, dtype=np.float64)
    weights = r2_table(spec.n_cut)[1:].astype(np.float64)
    terms = weights / np.sqrt(n) * _sp.j1(2 * math.pi * np.sqrt(n * x))
    partials = math.pi * x + math.sqrt(x) * np.cumsum(terms)
    return _window_mean(partials, spec.smooth_window)


def _odd_k_partials(s, a, b_arr, k_cut):
    """Partial sums over odd k of (-1)^((k+1)/2) trig(a + b sqrt(k))/k^s
    for every b in b_arr; returns (cos_partials, sin_partials) of shape
    (len(b_arr), #odd k)."""
    k = np.arange(1, k_cut + 1, 2, dtype=np.float64)
    sign = np.where((((k + 1) // 2) % 2).astype(bool), -1.0, 1.0)
    w = sign / k ** s
    phase = a + np.outer(np.asarray(b_arr, dtype=np.float64), np.sqrt(k))
    return np.cumsum(np.cos(phase) * w, axis=1), np.cumsum(np.sin(phase) * w, axis=1)


def oscillatory_sum(which, s, a, b, spec=TruncationSpec()):
    """Truncated M_s, N_s (sums over odd k with alternating sign) and
    their n-weighted double versions P_s, Q_s; inner sums are plainly
    truncated at k_cut, the reported value averages the last
    smooth_window outer partial sums."""
    if which in ("M", "N"):
        cp, sp = _odd_k_partials(s, a, [b], spec.k_cut)
        partials = cp[0] if which == "M" else sp[0]
        return _window_mean(partials, spec.smooth_window)
    if which in ("P", "Q"):
        n = np.arange(1, spec.n_cut + 1, dtype=np.float64)
        inner = np.empty(spec.n_cut, dtype=np.float64)
        block = max(1, 4_000_000 // max(1, spec.k_cut // 2))
        for lo in range(0, spec.n_cut, block):
            hi = min(lo + block, spec.n_cut)
            cp, sp = _odd_k_partials(s, a, b * np.sqrt(n[lo:hi]), spec.k_cut)
            inner[lo:hi] = cp[:, -1] if which == "P" else sp[:, -1]
        partials = np.cumsum(inner / n ** s)
        return _window_mean(partials, spec.smooth_window)
    raise ValueError(f"unknown oscillatory sum {which!r}")


def R_expansion(x, N, spec=TruncationSpec()):
    """The P/Q expansion of R(x) = lattice_count(x) - pi x, with the
    remainder term dropped.  The P/Q series carry the odd-divisor kernel
    of r2(n)/4, so the whole expansion is scaled by 4 to land on R(x)."""
    if x <= 1:
        raise ValueError("x must exceed 1")
    a, b = math.pi / 4, 2 * math.pi * math.sqrt(x)
    total = x ** 0.25 / math.pi * oscillatory_sum("P", 0.75, a, b, spec)
    for s in range(1, N + 1):
        total += ((-1) ** s * float(c1(2 * s))
                  * oscillatory_sum("P", s + 0.75, a, b, spec)
                  / (2 ** (4 * s) * math.pi ** (2 * s + 1) * x ** (s - 0.25)))
    for s in range(0, N + 1):
        total -= ((-1) ** s * float(c1(2 * s + 1))
                  * oscillatory_sum("Q", s + 1.25, a, b, spec)
                  / (2 ** (4 * s + 2) * math.pi ** (2 * s + 2) * x ** (s + 0.25)))
    return 4.0 * total


def S_sum(x, spec=TruncationSpec()):
    """Double (n,l) form of the scaled error series: sum over n and odd
    p = 2l-1 of (-1)^(l-1) cos(2 pi sqrt(npx) + pi/4) / (np)^(3/4)."""
    if x <= 0:
        raise ValueError("x must be positive")
    n = np.arange(1, spec.n_cut + 1, dtype=np.float64)
    p = np.arange(1, 2 * spec.k_cut, 2, dtype=np.float64)
    sign = np.where(np.arange(len(p)) % 2 == 0, 1.0, -1.0)
    inner = np.empty(spec.n_cut, dtype=np.float64)
    block = max(1, 4_000_000 // len(p))
    for lo in range(0, spec.n_cut, block):
        hi = min(lo + block, spec.n_cut)
        prod = np.outer(n[lo:hi], p)
        terms = sign * np.cos(2 * math.pi * np.sqrt(prod * x) + math.pi / 4) / prod ** 0.75
        inner[lo:hi] = terms.sum(axis=1)
    partials = np.cumsum(inner)
    return _window_mean(partials, spec.smooth_window)


def G(h, x, M):
    """sum_{n<=M} cos(2 pi sqrt(nx) + pi/4) / n^(3/4-h), compensated."""
    if not 0 <= h < 0.25:
        raise ValueError("h must satisfy 0 <= h < 1/4")
    if M < 1:
        raise ValueError("M must be positive")
    return math.fsum(math.cos(2 * math.pi * math.sqrt(n * x) + math.pi / 4)
                     / n ** (0.75 - h) for n in range(1, M + 1))


def g_running_sup(h, x, M_max):
    """max over 1 <= M <= M_max of |G(h, x, M)|."""
    if not 0 <= h < 0.25:
        raise ValueError("h must satisfy 0 <= h < 1/4")
    n = np.arange(1, M_max + 1, dtype=np.float64)
    terms = np.cos(2 * math.pi * np.sqrt(n * x) + math.pi / 4) / n ** (0.75 - h)
    return float(np.max(np.abs(np.cumsum(terms))))


def fresnel(z):
    """(F_C(z), F_S(z)) with the integral normalization cos/sin(pi t^2/2)."""
    if z < 0:
        raise ValueError("z must be nonnegative")
    s, c = _sp.fresnel(z)
    return float(c), float(s)


def fresnel_closed_sum(a, M):
    """Closed Fresnel form of the Abel-summation evaluation of
    G(0, a, M); exact only for the continuous mass t^2, so it tracks the
    direct sum within an O(sqrt(a)) envelope rather than equaling it."""
    if a <= 0:
        raise ValueError("a must be positive")
    if M < 1:
        raise ValueError("M must be positive")
    fc1, fs1 = fresnel(2 * a ** 0.25)
    fcm, fsm = fresnel(2 * (a * M) ** 0.25)
    root2 = math.sqrt(2.0)
    main = (-2 * fc1 + 2 * fcm + 2 * fs1 - 2 * fsm) / (root2 * a ** 0.25)
    return main + (math.cos(2 * math.pi * math.sqrt(a))
                   - math.sin(2 * math.pi * math.sqrt(a))) / root2


def euler_maclaurin_defect(F, Fp, antider, M):
    """sum_{k=1}^M F(k) minus the fourth-order Euler-Maclaurin main terms
    (integral over [1,M], trapezoidal boundary, first-derivative
    correction); zero for constant F, and bounded by the F'''' remainder
    in general."""
    if M < 2:
        raise ValueError("M must be at least 2")
    direct = math.fsum(F(k) for k in range(1, M + 1))
    main = (antider(M) - antider(1)
            + (F(1) + F(M)) / 2.0
            + (Fp(M) - Fp(1)) / 12.0)
    return direct - main


def _em_phase(a, t):
    return 2 * math.pi * math.sqrt(a * t) + math.pi / 4


def euler_maclaurin_residual(a, M):
    """|Euler-Maclaurin defect| for F(t) = cos(2 pi sqrt(at) + pi/4)/sqrt(t),
    using the exact antiderivative sin(2 pi sqrt(at) + pi/4)/(pi sqrt(a))."""
    if a <= 0:
        raise ValueError("a must be positive")
    sa = math.sqrt(a)

    def F(t):
        return math.cos(_em_phase(a, t)) / math.sqrt(t)

    def Fp(t):
        return (-math.cos(_em_phase(a, t)) / (2 * t ** 1.5)
                - math.pi * sa * math.sin(_em_phase(a, t)) / t)

    def antider(t):
        return math.sin(_em_phase(a, t)) / (math.pi * sa)

    return abs(euler_maclaurin_defect(F, Fp, antider, M))


def euler_maclaurin_f4_bound(a, M):
    """(1/120) sum over unit intervals of an upper envelope of |F''''|;
    each of the five terms of F'''' decays in t, so its value at the left
    endpoint bounds the interval."""
    if a <= 0:
        raise ValueError("a must be positive")
    if M < 2:
        raise ValueError("M must be at least 2")
    pi = math.pi
    env = [pi ** 4 * a * a / k ** 2.5
           + 5 * pi ** 3 * a ** 1.5 / k ** 3
           + 105 * pi * math.sqrt(a) / (8 * k ** 4)
           + 45 * pi * pi * a / (4 * k ** 3.5)
           + 105 / (16 * k ** 4.5)
           for k in range(1, M)]
    return math.fsum(env) / 120.0


def em_f4(a, t):
    """The fourth derivative of cos(2 pi sqrt(at) + pi/4)/sqrt(t), written
    with the phase pi(8 sqrt(ta) + 1)/4."""
    w = math.pi * (8 * math.sqrt(t * a) + 1) / 4
    pi = math.pi
    return (pi ** 4 * a * a * math.cos(w) / t ** 2.5
            - 5 * pi ** 3 * a * math.sqrt(t * a) * math.sin(w) / t ** 3.5
            + 105 * pi * math.sqrt(t * a) * math.sin(w) / (8 * t ** 4.5)
            - 45 * pi * pi * a * math.cos(w) / (4 * t ** 3.5)
            + 105 * math.cos(w) / (16 * t ** 4.5))


def scan_columns(x_max, step):
    """Column arrays (x, count, pi_x, R, R_scaled) at x = step, 2 step, ...
    <= x_max, counting through a cumulative r2 sieve."""
    if x_max < 1 or step <= 0:
        raise ValueError("need x_max >= 1 and step > 0")
    k = np.arange(1, int(math.floor(x_max / step)) + 1, dtype=np.float64)
    x = k * step
    cum = np.cumsum(r2_table(int(math.floor(x[-1]))))
    counts = cum[np.floor(x).astype(np.int64)]
    pi_x = math.pi * x
    R = counts - pi_x
    return x, counts, pi_x, R, R / x ** 0.25


def scan_R(x_max, step=1.0, delta=0.1, collect_rows=True):
    """Scan of the circle-problem error: rows per step plus a summary with
    sup |R(x)|/x^(1/4) and the running sups of |G| (at h = 0 and h =
    delta) over M <= 2^17 on a 20-point x grid."""
    if not 0 <= delta < 0.25:
        raise ValueError("delta must satisfy 0 <= delta < 1/4")
    x, counts, pi_x, R, R_scaled = scan_columns(x_max, step)
    grid = [j * x_max / 20 + 0.5 for j in range(1, 21)]
    sup_g = max(g_running_sup(0.0, gx, 1 << 17) for gx in grid)
    sup_g_half = max(g_running_sup(0.0, gx, 1 << 16) for gx in grid)
    sup_g_delta = max(g_running_sup(delta, gx, 1 << 17) for gx in grid)
    summary = {
        "sup_R_scaled": float(np.max(np.abs(R_scaled))),
        "sup_G": sup_g,
        "sup_G_halfM": sup_g_half,
        "sup_G_delta": sup_g_delta,
    }
    rows = []
    if collect_rows:
        rows = [ScanRow(float(a), int(b), float(c), float(d), float(e))
                for a, b, c, d, e in zip(x, counts, pi_x, R, R_scaled)]
    return ScanResult(rows=rows, summary=summary)
