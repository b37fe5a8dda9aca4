"""Gauss hypergeometric 2F1 on [0, 1), vectorized, tuned for operator kernels.

The fractional-integral kernels need 2F1(a, b; c; w) with w running over
quadrature nodes that approach 1 arbitrarily closely.  The direct series
needs O(1/(1-w)) terms there, so for w > 1/2 the evaluation switches to
an expansion in powers of u = 1-w.  Three regimes cover every input:

* terminating (a or b a nonpositive integer): exact polynomial for any w;
* c-a-b not an integer: the two-branch connection formula

      2F1(a,b;c;w) = A * 2F1(a, b; a+b-c+1; u)
                   + B * u^(c-a-b) * 2F1(c-a, c-b; c-a-b+1; u)

  with gamma-ratio coefficients A, B;
* c-a-b an integer m (the two branches above degenerate): the logarithmic
  expansion, a finite polynomial plus u^max(m,0) * (analytic + log(u) *
  analytic) series with digamma coefficients.

``kernel_split`` exposes the decomposition itself (coefficient, power of u,
optional log(u) factor, analytic series per branch) so quadrature can absorb
each u-power into an exact endpoint weight instead of sampling a singular
integrand.  Inputs within 2e-9 of an integer c-a-b use the integer branch:
below that offset the connection coefficients lose more to cancellation
(~eps/offset) than the integer formula loses to the parameter rounding
(~offset * |log u|), and the crossover sits near sqrt(eps).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError
from .gammafns import digamma, gamma_ratio, is_pole

_SERIES_MAX = 4000
_INT_TOL = 2e-9


def _series_2f1(a: float, b: float, c: float, w: np.ndarray, tol: float = 1e-15) -> np.ndarray:
    """Direct 2F1 series, vectorized over w with |w| <= ~0.6."""
    if is_pole(c):
        raise DomainError(f"2F1 series: lower parameter {c!r} is a nonpositive integer")
    total = np.ones_like(w)
    term = np.ones_like(w)
    for n in range(_SERIES_MAX):
        term = term * ((a + n) * (b + n) / ((c + n) * (n + 1.0))) * w
        total += term
        m = float(np.max(np.abs(term)))
        if m == 0.0:
            break
        if m <= tol * max(float(np.max(np.abs(total))), 1e-300):
            break
    return total


def _terminating_index(x: float) -> int | None:
    """m such that x == -m (within tolerance) for nonnegative integer m, else None."""
    r = round(x)
    if r <= 0 and abs(x - r) <= 1e-9:
        return -int(r)
    return None


def connection_parts(
    a: float,
    b: float,
    c: float,
    gamma: float | None = None,
    c_minus_a: float | None = None,
    c_minus_b: float | None = None,
):
    """Coefficients and series of the w -> 1-w connection formula.

    Returns (coef_a, gamma_exp, coef_b, f1, f2) so that for u = 1-w in (0, 1):

        2F1(a,b;c;w) = coef_a * f1(u) + coef_b * u**gamma_exp * f2(u)

    where gamma_exp = c-a-b, f1/f2 are vectorized callables convergent for
    u <= ~0.6.  Degenerate (near-integer gamma_exp) inputs raise DomainError;
    callers should switch to log_connection_parts there (kernel_split does).

    gamma, c_minus_a and c_minus_b default to the obvious differences;
    callers that know the parameters as sums of primitives (the operator
    kernel has a = alpha+beta, b = -eta, c = alpha, so c-a-b = eta-beta and
    c-a = -beta exactly) should pass those directly -- near a gamma pole the
    coefficients amplify one rounding of a composite by 1/|pole distance|.
    """
    g = c - a - b if gamma is None else gamma
    if c_minus_a is None:
        c_minus_a = c - a
    if c_minus_b is None:
        c_minus_b = c - b
    if abs(g - round(g)) <= _INT_TOL:
        raise DomainError(f"2F1 connection formula degenerates at integer c-a-b = {g!r}")
    log_a, sign_a = gamma_ratio([c, g], [c_minus_a, c_minus_b])
    log_b, sign_b = gamma_ratio([c, -g], [a, b])
    coef_a = sign_a * math.exp(log_a) if sign_a else 0.0
    coef_b = sign_b * math.exp(log_b) if sign_b else 0.0

    def f1(u: np.ndarray) -> np.ndarray:
        return _series_2f1(a, b, 1.0 - g, u)

    def f2(u: np.ndarray, ca=c_minus_a, cb=c_minus_b) -> np.ndarray:
        return _series_2f1(ca, cb, g + 1.0, u)

    return coef_a, g, coef_b, f1, f2


@dataclass(frozen=True)
class KernelTerm:
    """One branch of the kernel's expansion around u = 1-w = 0.

    Contributes coef * u**exponent * (log(u) if log_factor else 1) * series(u),
    with series analytic on [0, ~0.6) and series(0) finite.
    """

    coef: float
    exponent: float
    log_factor: bool
    series: Callable[[np.ndarray], np.ndarray]


def _gamma_ratio_value(num: Sequence[float], den: Sequence[float]) -> float:
    log_r, sign = gamma_ratio(num, den)
    return sign * math.exp(log_r) if sign else 0.0


def _poly_series(coeffs: Sequence[float]) -> Callable[[np.ndarray], np.ndarray]:
    arr = np.asarray(coeffs, dtype=float)

    def f(u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        total = np.zeros_like(u)
        for cn in arr[::-1]:
            total = total * u + cn
        return total

    return f


def _digamma_weighted_series(
    A: float,
    B: float,
    C: float,
    t0: float,
    d0: float,
    sigmas: Sequence[float],
    rhos: Sequence[float],
) -> Callable[[np.ndarray], np.ndarray]:
    """sum_n t_n d_n u^n with t_{n+1} = t_n (A+n)(B+n)/((C+n)(n+1)) from t_0,
    and d_{n+1} = d_n + sum_i sigmas[i]/(rhos[i] + n) from d_0."""

    def f(u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        poly = np.full_like(u, t0)
        total = poly * d0
        d = d0
        for n in range(_SERIES_MAX):
            poly = poly * ((A + n) * (B + n) / ((C + n) * (n + 1.0))) * u
            d = d + sum(s / (r + n) for s, r in zip(sigmas, rhos))
            total = total + poly * d
            m = float(np.max(np.abs(poly))) * (abs(d) + 1.0)
            if m == 0.0:
                break
            if m <= 1e-16 * max(float(np.max(np.abs(total))), 1e-300):
                break
        return total

    return f


def _rising_poly_coeffs(a: float, b: float, m: int) -> list[float]:
    """[(a)_n (b)_n / (n! (1-m)_n)] for n = 0..m-1 (all denominators nonzero)."""
    coeffs = [1.0]
    for n in range(m - 1):
        coeffs.append(coeffs[-1] * (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n)))
    return coeffs


def log_connection_parts(a: float, b: float, c: float, m: int) -> list[KernelTerm]:
    """Kernel decomposition when c - a - b equals the integer m.

    The two-branch connection formula degenerates there; instead the kernel
    obeys the logarithmic expansion: for m >= 1

        2F1 = Cf * P(u) + Cl * u^m * (S_d(u) + log(u) * S(u)),

    with P a degree-(m-1) polynomial, S the plain coefficient series, S_d the
    same series weighted by digamma sums; m = 0 drops the polynomial, and
    m <= -1 moves the polynomial to exponent m and the series to exponent 0.
    Coefficients at a gamma pole of their denominator are exactly zero.
    """
    terms: list[KernelTerm] = []
    if m == 0:
        # within this branch c == a+b, and c is the less-rounded of the two
        c0 = _gamma_ratio_value([c], [a, b])
        if c0:
            d0 = 2.0 * digamma(1.0) - digamma(a) - digamma(b)
            terms.append(
                KernelTerm(
                    c0, 0.0, False,
                    _digamma_weighted_series(a, b, 1.0, 1.0, d0, (2.0, -1.0, -1.0), (1.0, a, b)),
                )
            )
            terms.append(KernelTerm(-c0, 0.0, True, lambda u: _series_2f1(a, b, 1.0, u)))
        return terms

    if m > 0:
        cf = _gamma_ratio_value([float(m), c], [a + m, b + m])
        if cf:
            terms.append(KernelTerm(cf, 0.0, False, _poly_series(_rising_poly_coeffs(a, b, m))))
        cl = -((-1.0) ** m) * _gamma_ratio_value([c], [a, b])
        if cl:
            t0 = 1.0 / math.factorial(m)
            d0 = (
                -digamma(1.0)
                - digamma(m + 1.0)
                + digamma(a + m)
                + digamma(b + m)
            )
            terms.append(
                KernelTerm(
                    cl, float(m), False,
                    _digamma_weighted_series(
                        a + m, b + m, m + 1.0, t0, d0,
                        (-1.0, -1.0, 1.0, 1.0), (1.0, m + 1.0, a + m, b + m),
                    ),
                )
            )
            terms.append(
                KernelTerm(cl, float(m), True, lambda u, s0=t0: s0 * _series_2f1(a + m, b + m, m + 1.0, u))
            )
        return terms

    mq = -m
    cf = _gamma_ratio_value([float(mq), c], [a, b])
    if cf:
        terms.append(
            KernelTerm(cf, float(m), False, _poly_series(_rising_poly_coeffs(a - mq, b - mq, mq)))
        )
    cl = -((-1.0) ** mq) * _gamma_ratio_value([c], [a - mq, b - mq])
    if cl:
        t0 = 1.0 / math.factorial(mq)
        d0 = (
            -digamma(1.0)
            - digamma(mq + 1.0)
            + digamma(a)
            + digamma(b)
        )
        terms.append(
            KernelTerm(
                cl, 0.0, False,
                _digamma_weighted_series(
                    a, b, mq + 1.0, t0, d0, (-1.0, -1.0, 1.0, 1.0), (1.0, mq + 1.0, a, b)
                ),
            )
        )
        terms.append(
            KernelTerm(cl, 0.0, True, lambda u, s0=t0: s0 * _series_2f1(a, b, mq + 1.0, u))
        )
    return terms


def kernel_split(
    a: float,
    b: float,
    c: float,
    gamma: float | None = None,
    c_minus_a: float | None = None,
    c_minus_b: float | None = None,
) -> list[KernelTerm]:
    """Branches of 2F1(a,b;c;1-u) around u = 0, valid for u in (0, ~0.6).

    Terminating kernels come back as a single analytic term; integer c-a-b
    uses the logarithmic expansion; everything else the two-branch connection
    formula.  Terms with exactly zero coefficient are omitted.  gamma /
    c_minus_a / c_minus_b may be supplied by callers that can form them
    without composite rounding (see connection_parts).
    """
    if _terminating_index(a) is not None or _terminating_index(b) is not None:
        return [
            KernelTerm(
                1.0, 0.0, False,
                lambda u: hyp2f1_kernel(a, b, c, 1.0 - np.asarray(u, dtype=float)),
            )
        ]
    g = c - a - b if gamma is None else gamma
    r = round(g)
    if abs(g - r) <= _INT_TOL:
        return log_connection_parts(a, b, c, int(r))
    coef_a, gam, coef_b, f1, f2 = connection_parts(a, b, c, g, c_minus_a, c_minus_b)
    terms = []
    if coef_a:
        terms.append(KernelTerm(coef_a, 0.0, False, f1))
    if coef_b:
        terms.append(KernelTerm(coef_b, gam, False, f2))
    return terms


def hyp2f1_kernel(a: float, b: float, c: float, w: np.ndarray) -> np.ndarray:
    """2F1(a, b; c; w) for array w in [0, 1)."""
    w = np.asarray(w, dtype=float)
    if w.size and (float(np.min(w)) < 0.0 or float(np.max(w)) >= 1.0):
        raise DomainError("hyp2f1_kernel: arguments must lie in [0, 1)")

    # Terminating series: exact polynomial for any w.
    m = _terminating_index(a)
    mb = _terminating_index(b)
    if mb is not None and (m is None or mb < m):
        a, b = b, a
        m = mb
    if m is not None:
        total = np.ones_like(w)
        term = np.ones_like(w)
        for n in range(m):
            term = term * ((a + n) * (b + n) / ((c + n) * (n + 1.0))) * w
            total += term
        return total

    out = np.empty_like(w)
    near = w <= 0.5
    if np.any(near):
        out[near] = _series_2f1(a, b, c, w[near])
    far = ~near
    if np.any(far):
        u = 1.0 - w[far]
        vals = np.zeros_like(u)
        for t in kernel_split(a, b, c):
            v = t.coef * t.series(u)
            if t.exponent != 0.0:
                v = v * np.power(u, t.exponent)
            if t.log_factor:
                v = v * np.log(u)
            vals = vals + v
        out[far] = vals
    return out
