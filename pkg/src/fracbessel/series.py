"""Series evaluation: generalized hypergeometric pFq, Fox-Wright, and k-Bessel.

All three evaluators share the same truncation contract: summation stops
once three consecutive terms are below tol relative to the running sum
AND the estimated discarded tail is below tol at the result's scale.
The tail estimate is reported so callers can propagate error budgets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError
from .gammafns import gamma_sign, is_pole, log_gamma

MAX_TERMS = 10_000
_TINY = 1e-300


@dataclass(frozen=True)
class SeriesValue:
    """A series sum with bookkeeping: value, work done, and tail honesty."""

    value: float
    terms_used: int
    trunc_estimate: float
    converged: bool


@dataclass(frozen=True)
class HypergeomSpec:
    """pFq parameter lists with an optional scalar prefactor."""

    upper: tuple[float, ...]
    lower: tuple[float, ...]
    prefactor: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(float(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(float(b) for b in self.lower))
        for b in self.lower:
            if is_pole(b):
                raise DomainError(f"HypergeomSpec: lower parameter {b!r} is a nonpositive integer")

    def to_dict(self) -> dict:
        return {
            "kind": "pfq",
            "upper": list(self.upper),
            "lower": list(self.lower),
            "prefactor": self.prefactor,
        }


@dataclass(frozen=True)
class WrightSpec:
    """Fox-Wright parameter pairs (coefficient, step), steps > 0."""

    upper: tuple[tuple[float, float], ...]
    lower: tuple[tuple[float, float], ...]

    def __post_init__(self):
        up = tuple((float(a), float(A)) for a, A in self.upper)
        low = tuple((float(b), float(B)) for b, B in self.lower)
        object.__setattr__(self, "upper", up)
        object.__setattr__(self, "lower", low)
        for _, step in up + low:
            if not (step > 0):
                raise DomainError(f"WrightSpec: steps must be positive, got {step!r}")

    def to_dict(self) -> dict:
        return {
            "kind": "wright",
            "upper": [[a, A] for a, A in self.upper],
            "lower": [[b, B] for b, B in self.lower],
        }


@dataclass(frozen=True)
class KBesselParams:
    """Order v > -1, sign/scale c, deformation k > 0 of the k-Bessel function."""

    v: float
    c: float
    k: float

    def __post_init__(self):
        if not (self.v > -1):
            raise DomainError(f"KBesselParams: v must exceed -1, got {self.v!r}")
        if not (self.k > 0):
            raise DomainError(f"KBesselParams: k must be positive, got {self.k!r}")


def wright_convergence_index(spec: WrightSpec) -> float:
    """Convergence index 1 + sum(lower steps) - sum(upper steps)."""
    return 1.0 + sum(B for _, B in spec.lower) - sum(A for _, A in spec.upper)


def _finish(value: float, n_used: int, tail: float, tol: float) -> SeriesValue:
    converged = tail <= tol * max(abs(value), _TINY) and math.isfinite(value)
    return SeriesValue(value, n_used, tail, converged)


def _tail_estimate(t_next: float, ratio: float) -> float:
    """Bound the discarded tail from its first term and a growth ratio."""
    a = abs(t_next)
    if a == 0.0:
        return 0.0
    if ratio < 0.9:
        return a / (1.0 - ratio)
    return math.inf


def eval_pfq(spec: HypergeomSpec, z: float, tol: float = 1e-12) -> SeriesValue:
    """Sum pFq(upper; lower; z) * prefactor by term recurrence.

    Requires p <= q+1; p == q+1 additionally needs |z| < 1, except that
    the Gauss point z=1 of 2F1 with c-a-b > 0 is routed to the closed form.
    """
    p, q = len(spec.upper), len(spec.lower)
    if z == 0.0:
        return SeriesValue(spec.prefactor * 1.0, 1, 0.0, True)
    if p > q + 1:
        raise ConvergenceError(f"eval_pfq: p={p} > q+1={q + 1} diverges for z != 0")
    if p == q + 1 and abs(z) >= 1.0:
        if p == 2 and z == 1.0 and (spec.lower[0] - spec.upper[0] - spec.upper[1]) > 0:
            g = gauss_2f1_at_1(spec.upper[0], spec.upper[1], spec.lower[0])
            return SeriesValue(spec.prefactor * g, 0, 0.0, True)
        raise ConvergenceError(f"eval_pfq: p=q+1 series diverges at |z|={abs(z)!r} >= 1")

    total = 0.0
    term = 1.0
    small_run = 0
    n = 0
    while n < MAX_TERMS:
        total += term
        n += 1
        num = 1.0
        for a in spec.upper:
            num *= a + (n - 1)
        den = float(n)
        for b in spec.lower:
            den *= b + (n - 1)
        if den == 0.0:
            raise DomainError("eval_pfq: lower parameter hit a nonpositive integer")
        nxt = term * num / den * z
        if nxt == 0.0:  # terminating series (an upper parameter hit 0)
            return SeriesValue(spec.prefactor * total, n, 0.0, True)
        if abs(nxt) <= tol * max(abs(total), _TINY):
            small_run += 1
            if small_run >= 3:
                ratio = abs(nxt) / max(abs(term), _TINY)
                tail = _tail_estimate(nxt, ratio)
                if tail <= tol * max(abs(total), _TINY):
                    return _finish(spec.prefactor * total, n, abs(spec.prefactor) * tail, tol)
        else:
            small_run = 0
        term = nxt
    return SeriesValue(spec.prefactor * total, n, math.inf, False)


def gauss_2f1_at_1(a: float, b: float, c: float) -> float:
    """2F1(a, b; c; 1) = Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)).

    Requires c-a-b > 0 and c off the pole lattice.  Poles of the
    denominator gammas make the value exactly zero.
    """
    s = c - a - b
    if not (s > 0):
        raise DomainError(f"gauss_2f1_at_1: needs c-a-b > 0, got {s!r}")
    num = log_gamma(c).log_abs + log_gamma(s).log_abs
    sign = log_gamma(c).sign * log_gamma(s).sign
    den = 0.0
    for d in (c - a, c - b):
        if is_pole(d):
            return 0.0
        den += math.lgamma(d)
        sign *= gamma_sign(d)
    return sign * math.exp(num - den)


def _wright_log_term(spec: WrightSpec, n: int, log_abs_z: float, sign_z: int):
    """(log|t_n|, sign) of the n-th Fox-Wright term, or (None, 0) when a
    denominator gamma pole annihilates the term.  Numerator poles raise."""
    log_abs = n * log_abs_z - math.lgamma(n + 1)
    sign = 1 if (sign_z > 0 or n % 2 == 0) else -1
    for a, A in spec.upper:
        arg = a + A * n
        if is_pole(arg):
            raise DomainError(
                f"eval_wright: numerator gamma pole at term n={n} (argument {arg!r})"
            )
        log_abs += math.lgamma(arg)
        sign *= gamma_sign(arg)
    for b, B in spec.lower:
        arg = b + B * n
        if is_pole(arg):
            return None, 0
        log_abs -= math.lgamma(arg)
        sign *= gamma_sign(arg)
    return log_abs, sign


def eval_wright(spec: WrightSpec, z: float, tol: float = 1e-12) -> SeriesValue:
    """Sum the Fox-Wright series sum_n prod Gamma(a+An)/prod Gamma(b+Bn) z^n/n!.

    Terms are assembled in the log domain with sign tracking.  Denominator
    gamma poles zero out the affected term; numerator poles are domain errors.
    Convergence: index > 0, or index == 0 with |z| <= 0.9 * radius.
    """
    delta = wright_convergence_index(spec)
    if delta < -1e-12:
        raise ConvergenceError(f"eval_wright: convergence index {delta!r} < 0")
    if abs(delta) <= 1e-12:
        log_rho = sum(B * math.log(B) for _, B in spec.lower)
        log_rho -= sum(A * math.log(A) for _, A in spec.upper)
        rho = math.exp(log_rho)
        if abs(z) > 0.9 * rho:
            raise ConvergenceError(
                f"eval_wright: |z|={abs(z)!r} outside 0.9*radius={0.9 * rho!r} at index 0"
            )

    if z == 0.0:
        log_abs, sign = _wright_log_term(spec, 0, 0.0, 1)
        value = 0.0 if sign == 0 else sign * math.exp(log_abs)
        return SeriesValue(value, 1, 0.0, True)

    log_abs_z = math.log(abs(z))
    sign_z = 1 if z > 0 else -1

    total = 0.0
    small_run = 0
    prev_abs = None
    n = 0
    while n < MAX_TERMS:
        log_t, sign = _wright_log_term(spec, n, log_abs_z, sign_z)
        if sign == 0:
            n += 1
            continue
        t = sign * math.exp(log_t)
        total += t
        n += 1
        a_t = abs(t)
        if a_t <= tol * max(abs(total), _TINY):
            small_run += 1
            if small_run >= 3 and prev_abs is not None:
                ratio = a_t / max(prev_abs, _TINY)
                tail = _tail_estimate(t if t != 0 else a_t, ratio)
                if tail <= tol * max(abs(total), _TINY):
                    return _finish(total, n, tail, tol)
        else:
            small_run = 0
        prev_abs = a_t
    return SeriesValue(total, n, math.inf, False)


def _kb_term(vk: float, log_abs_y: float, sign_y: int, n: int) -> float:
    """n-th reduced k-Bessel term y^n / (Gamma(n+1+v/k) n!), zero at gamma poles."""
    arg = n + 1.0 + vk
    if is_pole(arg):
        return 0.0
    log_t = n * log_abs_y - math.lgamma(n + 1) - math.lgamma(arg)
    sign = gamma_sign(arg) * (1 if (sign_y > 0 or n % 2 == 0) else -1)
    return sign * math.exp(log_t)


def eval_k_bessel(params: KBesselParams, z: float, tol: float = 1e-12) -> SeriesValue:
    """Generalized k-Bessel W_{v,c}^k(z) for z >= 0.

    Evaluated as (z/(2k))^(v/k) * sum_n y^n / (Gamma(n + 1 + v/k) n!) with
    y = -c z^2 / (4k); the k-gamma in the definition is expanded as
    k^(n + v/k) * Gamma(n + 1 + v/k).  Reduces to the classical Bessel J_v
    at k = 1, c = 1.  The series is entire; for c z^2 > 0 it alternates and
    the first discarded term bounds the tail.
    """
    if z < 0:
        raise DomainError(f"eval_k_bessel: z must be >= 0, got {z!r}")
    vk = params.v / params.k
    if z == 0.0:
        if vk > 0:
            return SeriesValue(0.0, 1, 0.0, True)
        if vk == 0:
            return SeriesValue(1.0, 1, 0.0, True)
        raise DomainError("eval_k_bessel: z=0 diverges for v < 0")

    pref = math.exp(vk * math.log(z / (2.0 * params.k)))
    y = -params.c * z * z / (4.0 * params.k)
    if y == 0.0:
        t0 = _kb_term(vk, 0.0, 1, 0)
        return SeriesValue(pref * t0, 1, 0.0, True)
    log_abs_y = math.log(abs(y))
    sign_y = 1 if y > 0 else -1

    total = 0.0
    small_run = 0
    n = 0
    while n < MAX_TERMS:
        t = _kb_term(vk, log_abs_y, sign_y, n)
        total += t
        n += 1
        a_t = abs(t)
        if t != 0.0 and a_t <= tol * max(abs(total), _TINY):
            small_run += 1
            if small_run >= 3:
                t_next = _kb_term(vk, log_abs_y, sign_y, n)
                if y < 0 and abs(t_next) < a_t:
                    tail = abs(t_next)  # alternating, terms decreasing
                else:
                    tail = _tail_estimate(t_next, abs(t_next) / max(a_t, _TINY))
                if tail <= tol * max(abs(total), _TINY):
                    return _finish(pref * total, n, pref * tail, tol)
        elif t != 0.0:
            small_run = 0
    return SeriesValue(pref * total, n, math.inf, False)
