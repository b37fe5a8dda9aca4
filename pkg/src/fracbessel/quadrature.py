"""Adaptive Gauss-Jacobi quadrature with endpoint-weight absorption.

Integrates  int_lo^hi (hi-u)^exp_hi * (u-lo)^exp_lo * g(u) du  for smooth
vectorized g and exponents > -1.  The algebraic endpoint factors are
absorbed into the Gauss-Jacobi weight on subintervals touching their
endpoint and evaluated directly elsewhere.  Each subinterval is estimated
with an order-n and an order-2n rule; their difference drives adaptive
bisection of the worst subinterval until the summed estimate meets
tolerance, the interval budget runs out, or the estimate hits the
rounding floor of the accumulated values.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from .errors import AccuracyError, DomainError

DEFAULT_ORDER = 60
MAX_INTERVALS = 2000


@dataclass(frozen=True)
class QuadratureResult:
    """Integral value with an a-posteriori error estimate and work count."""

    value: float
    error_estimate: float
    evaluations: int

    def __post_init__(self):
        # normalize numpy scalars so downstream reprs and JSON stay clean
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "error_estimate", float(self.error_estimate))
        object.__setattr__(self, "evaluations", int(self.evaluations))


@lru_cache(maxsize=4096)
def _rule(n: int, a: float, b: float):
    """Gauss-Jacobi nodes/weights on [-1, 1] for weight (1-x)^a (1+x)^b."""
    x, w = roots_jacobi(n, a, b)
    return x, w


class _Workspace:
    """Mutable evaluation-count holder shared across piece evaluations."""

    __slots__ = ("evals",)

    def __init__(self):
        self.evals = 0


def _eval_piece(g, plo, phi, lo, hi, exp_lo, exp_hi, order, ws: _Workspace) -> float:
    """One weighted Gauss rule over [plo, phi] within the original [lo, hi]."""
    touches_lo = plo == lo
    touches_hi = phi == hi
    aj = exp_hi if touches_hi else 0.0
    bj = exp_lo if touches_lo else 0.0
    x, wts = _rule(order, aj, bj)
    h2 = (phi - plo) / 2.0
    u = plo + h2 * (x + 1.0)
    vals = g(u)
    ws.evals += u.size
    if not touches_hi and exp_hi != 0.0:
        vals = vals * np.power(hi - u, exp_hi)
    if not touches_lo and exp_lo != 0.0:
        vals = vals * np.power(u - lo, exp_lo)
    scale = h2 ** (aj + bj + 1.0)
    return scale * float(np.dot(wts, vals))


def integrate_log_jacobi(
    g,
    h: float,
    exp_lo: float,
    tol: float = 1e-9,
    order: int = DEFAULT_ORDER,
    max_pieces: int = MAX_INTERVALS,
) -> QuadratureResult:
    """Integral of u**exp_lo * log(u) * g(u) over (0, h) for g analytic on [0, h].

    The log factor defeats fixed endpoint-weight rules, but on each dyadic
    piece [h/2^(j+1), h/2^j] the whole integrand is analytic, so a single
    Gauss-Legendre rule there is exact to rounding.  Pieces are accumulated
    downward until the analytic bound on the remaining [0, h/2^J] tail
    (|g| bounded near 0, weight integrated exactly) meets the same
    absolute-or-relative tolerance rule as integrate_jacobi.  Piece scales
    h_j^(exp_lo+1) are formed in log space, so arbitrarily deep descent
    cannot overflow.  Requires exp_lo > -1 and 0 < h <= 1.
    """
    if not (0.0 < h <= 1.0):
        raise DomainError(f"integrate_log_jacobi: h must lie in (0, 1], got {h!r}")
    if not (exp_lo > -1.0):
        raise DomainError(
            f"integrate_log_jacobi: endpoint exponent {exp_lo!r} must exceed -1"
        )
    if not (tol > 0):
        raise DomainError(f"integrate_log_jacobi: tol must be positive, got {tol!r}")

    x, wts = _rule(order, 0.0, 0.0)
    s = 1.0 + 0.5 * (x + 1.0)  # nodes mapped to [1, 2]
    s_pow = np.power(s, exp_lo)
    log_s = np.log(s)
    q1 = exp_lo + 1.0
    log_h = math.log(h)

    total = 0.0
    total_abs = 0.0
    evals = 0
    for j in range(max_pieces):
        log_a = log_h - (j + 1.0) * math.log(2.0)
        scale = math.exp(q1 * log_a) * 0.5
        a = math.exp(log_a)
        gv = g(a * s)
        evals += s.size
        piece = scale * float(np.dot(wts, s_pow * (log_a + log_s) * gv))
        total += piece
        total_abs += abs(piece)
        # tail bound: int_0^a u^exp_lo |log u| du * sup |g| on [0, a]
        g_near = float(np.max(np.abs(g(np.array([0.5 * a])))))
        evals += 1
        g_sup = 2.0 * max(float(np.max(np.abs(gv))), g_near)
        tail = math.exp(q1 * log_a) / q1 * (-log_a + 1.0 / q1) * g_sup
        noise = 100.0 * np.finfo(float).eps * total_abs
        err = tail + noise
        if tail <= max(tol, tol * abs(total), noise):
            return QuadratureResult(total, err, evals)
    raise AccuracyError(
        f"integrate_log_jacobi: {max_pieces} pieces without reaching tol={tol!r} "
        f"(tail bound {float(tail)!r})",
        value=float(total),
        error_estimate=float(err),
    )


def integrate_jacobi(
    g,
    lo: float,
    hi: float,
    exp_lo: float = 0.0,
    exp_hi: float = 0.0,
    tol: float = 1e-9,
    order: int = DEFAULT_ORDER,
    max_intervals: int = MAX_INTERVALS,
) -> QuadratureResult:
    """Adaptive integral of (hi-u)^exp_hi (u-lo)^exp_lo g(u) over (lo, hi).

    tol is absolute-or-relative, whichever is larger at the result's scale.
    Raises AccuracyError (carrying the best estimate) if the interval
    budget is exhausted before the estimate meets tolerance.
    """
    if not (hi > lo):
        raise DomainError(f"integrate_jacobi: empty interval [{lo!r}, {hi!r}]")
    if not (exp_lo > -1.0 and exp_hi > -1.0):
        raise DomainError(
            f"integrate_jacobi: endpoint exponents ({exp_lo!r}, {exp_hi!r}) "
            "must exceed -1 for integrability"
        )
    if not (tol > 0):
        raise DomainError(f"integrate_jacobi: tol must be positive, got {tol!r}")

    ws = _Workspace()

    def make_piece(plo, phi):
        coarse = _eval_piece(g, plo, phi, lo, hi, exp_lo, exp_hi, order, ws)
        fine = _eval_piece(g, plo, phi, lo, hi, exp_lo, exp_hi, 2 * order, ws)
        return fine, abs(fine - coarse)

    counter = 0
    heap = []
    val, err = make_piece(lo, hi)
    heapq.heappush(heap, (-err, counter, lo, hi, val, err))
    counter += 1
    total = val
    total_abs = abs(val)
    total_err = err

    while True:
        bound = max(tol, tol * abs(total))
        noise_floor = 100.0 * np.finfo(float).eps * total_abs
        if total_err <= max(bound, noise_floor):
            return QuadratureResult(total, total_err, ws.evals)
        if len(heap) >= max_intervals:
            raise AccuracyError(
                f"integrate_jacobi: {max_intervals} intervals without reaching tol={tol!r} "
                f"(estimate {float(total_err)!r})",
                value=float(total),
                error_estimate=float(total_err),
            )
        neg_err, _, plo, phi, pval, perr = heapq.heappop(heap)
        mid = 0.5 * (plo + phi)
        if mid <= plo or mid >= phi:  # interval at float resolution; keep as is
            heapq.heappush(heap, (0.0, counter, plo, phi, pval, 0.0))
            counter += 1
            total_err -= perr
            continue
        total -= pval
        total_abs -= abs(pval)
        total_err -= perr
        for qlo, qhi in ((plo, mid), (mid, phi)):
            v, e = make_piece(qlo, qhi)
            heapq.heappush(heap, (-e, counter, qlo, qhi, v, e))
            counter += 1
            total += v
            total_abs += abs(v)
            total_err += e
