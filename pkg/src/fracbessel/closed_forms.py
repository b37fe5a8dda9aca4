"""Closed-form images of the k-Bessel function under the fractional operators.

Each builder assembles a ClosedForm: a signed log-domain prefactor, a power
of the evaluation point, a series spec (Fox-Wright or, after gamma
duplication, generalized hypergeometric), and the rule z = scale * x^power
for the series argument.  Left-sided forms use z = -c x^2 / (4k); the
right-sided ones z = -c / (4k x^2).

Identifiers follow the verification suite: 2.1 / 2.4 are the left/right
transforms of t^(lam/k-1) W(t) and t^(lam/k-1) W(1/t); 3.1 / 3.4 their
duplication-reduced hypergeometric twins; cor2.x / cor3.x the
Riemann-Liouville and Erdelyi-Kober specializations, where one gamma pair
cancels between numerator and denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import DomainError
from .gammafns import gamma_ratio, is_pole
from .series import (
    HypergeomSpec,
    SeriesValue,
    WrightSpec,
    eval_pfq,
    eval_wright,
)


@dataclass(frozen=True)
class TheoremParams:
    """Operator orders (alpha, beta, eta), power lam, k-Bessel (v, c, k)."""

    alpha: float
    beta: float
    eta: float
    lam: float
    v: float
    c: float
    k: float

    def __post_init__(self):
        if not (self.alpha > 0):
            raise DomainError(f"TheoremParams: alpha must be positive, got {self.alpha!r}")
        if not (self.v > -1):
            raise DomainError(f"TheoremParams: v must exceed -1, got {self.v!r}")
        if not (self.k > 0):
            raise DomainError(f"TheoremParams: k must be positive, got {self.k!r}")

    @property
    def big_l(self) -> float:
        """L = (lam + v)/k, the left-sided index."""
        return (self.lam + self.v) / self.k

    @property
    def big_m(self) -> float:
        """M = 1 - lam/k + v/k, the right-sided index."""
        return 1.0 - self.lam / self.k + self.v / self.k

    def require_left(self) -> None:
        bound = max(0.0, self.beta - self.eta)
        if not (self.big_l > bound):
            raise DomainError(
                f"left-sided validity needs (lam+v)/k > max(0, beta-eta): "
                f"{self.big_l!r} <= {bound!r}"
            )

    def require_right(self) -> None:
        m = self.big_m
        if not (m + self.beta > 0 and m + self.eta > 0):
            raise DomainError(
                f"right-sided validity needs M+beta > 0 and M+eta > 0 with "
                f"M = 1-(lam-v)/k = {m!r}"
            )


@dataclass(frozen=True)
class ClosedForm:
    """value(x) = sign * exp(prefactor_log) * x^power_of_x * series(scale * x^argument_power)."""

    prefactor_log: float
    prefactor_sign: int
    power_of_x: float
    series: Union[WrightSpec, HypergeomSpec]
    argument_scale: float
    argument_power: float
    label: str = ""

    def argument(self, x: float) -> float:
        return self.argument_scale * x**self.argument_power

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "prefactor_log": self.prefactor_log,
            "prefactor_sign": self.prefactor_sign,
            "power_of_x": self.power_of_x,
            "argument_scale": self.argument_scale,
            "argument_power": self.argument_power,
            "series": self.series.to_dict(),
        }


def evaluate_closed_form(cf: ClosedForm, x: float, tol: float = 1e-12) -> SeriesValue:
    """Evaluate a ClosedForm at x > 0, propagating the series bookkeeping."""
    if not (x > 0):
        raise DomainError(f"evaluate_closed_form: x must be positive, got {x!r}")
    z = cf.argument(x)
    if isinstance(cf.series, WrightSpec):
        sv = eval_wright(cf.series, z, tol)
    else:
        sv = eval_pfq(cf.series, z, tol)
    scale = cf.prefactor_sign * math.exp(cf.prefactor_log + cf.power_of_x * math.log(x))
    return SeriesValue(
        value=scale * sv.value,
        terms_used=sv.terms_used,
        trunc_estimate=abs(scale) * sv.trunc_estimate,
        converged=sv.converged,
    )


def _left_base(p: TheoremParams):
    p.require_left()
    vk1 = p.v / p.k + 1.0
    pref_log = -(p.v / p.k) * math.log(2.0 * p.k)
    power = p.big_l - p.beta - 1.0
    scale = -p.c / (4.0 * p.k)
    return vk1, pref_log, power, scale


def _right_base(p: TheoremParams):
    p.require_right()
    vk1 = p.v / p.k + 1.0
    pref_log = -(p.v / p.k) * math.log(2.0 * p.k)
    power = p.lam / p.k - p.v / p.k - p.beta - 1.0
    scale = -p.c / (4.0 * p.k)
    return vk1, pref_log, power, scale


def theorem21_spec(p: TheoremParams) -> ClosedForm:
    """Left transform of t^(lam/k-1) W(t) as a 2-Psi-3 Fox-Wright form."""
    vk1, pref_log, power, scale = _left_base(p)
    big_l = p.big_l
    series = WrightSpec(
        upper=((big_l, 2.0), (big_l + p.eta - p.beta, 2.0)),
        lower=((big_l - p.beta, 2.0), (big_l + p.alpha + p.eta, 2.0), (vk1, 1.0)),
    )
    return ClosedForm(pref_log, 1, power, series, scale, 2.0, label="2.1")


def theorem24_spec(p: TheoremParams) -> ClosedForm:
    """Right transform of t^(lam/k-1) W(1/t) as a 2-Psi-3 Fox-Wright form."""
    vk1, pref_log, power, scale = _right_base(p)
    m = p.big_m
    series = WrightSpec(
        upper=((m + p.beta, 2.0), (m + p.eta, 2.0)),
        lower=((m, 2.0), (m + p.alpha + p.beta + p.eta, 2.0), (vk1, 1.0)),
    )
    return ClosedForm(pref_log, 1, power, series, scale, -2.0, label="2.4")


_WRIGHT_COROLLARIES = {
    "rl_left": "cor2.2",
    "ek_left": "cor2.3",
    "rl_right": "cor2.5",
    "ek_right": "cor2.6",
}


def _substitute_beta(variant: str, p: TheoremParams) -> TheoremParams:
    if variant.startswith("rl"):
        beta = -p.alpha
    elif variant.startswith("ek"):
        beta = 0.0
    else:
        raise DomainError(f"unknown corollary variant {variant!r}")
    return TheoremParams(p.alpha, beta, p.eta, p.lam, p.v, p.c, p.k)


def corollary_wright_spec(variant: str, p: TheoremParams) -> ClosedForm:
    """Fox-Wright corollaries: the parent theorem at beta = -alpha (rl_*) or
    beta = 0 (ek_*), with the cancelling gamma pair removed (1-Psi-2 forms)."""
    if variant not in _WRIGHT_COROLLARIES:
        raise DomainError(
            f"unknown corollary variant {variant!r}; expected one of "
            f"{sorted(_WRIGHT_COROLLARIES)}"
        )
    q = _substitute_beta(variant, p)
    if variant == "rl_left":
        vk1, pref_log, power, scale = _left_base(q)
        big_l = q.big_l
        series = WrightSpec(
            upper=((big_l, 2.0),),
            lower=((big_l + q.alpha, 2.0), (vk1, 1.0)),
        )
        arg_pow = 2.0
    elif variant == "ek_left":
        vk1, pref_log, power, scale = _left_base(q)
        big_l = q.big_l
        series = WrightSpec(
            upper=((big_l + q.eta, 2.0),),
            lower=((big_l + q.alpha + q.eta, 2.0), (vk1, 1.0)),
        )
        arg_pow = 2.0
    elif variant == "rl_right":
        vk1, pref_log, power, scale = _right_base(q)
        m = q.big_m
        series = WrightSpec(
            upper=((m - q.alpha, 2.0),),
            lower=((m, 2.0), (vk1, 1.0)),
        )
        arg_pow = -2.0
    else:  # ek_right
        vk1, pref_log, power, scale = _right_base(q)
        m = q.big_m
        series = WrightSpec(
            upper=((m + q.eta, 2.0),),
            lower=((m + q.alpha + q.eta, 2.0), (vk1, 1.0)),
        )
        arg_pow = -2.0
    return ClosedForm(pref_log, 1, power, series, scale, arg_pow, label=_WRIGHT_COROLLARIES[variant])


def duplication_reduce(
    w: WrightSpec, include_gamma_prefactor: bool = True
) -> tuple[HypergeomSpec, float]:
    """Rewrite a Wright spec with steps in {1, 2} as (pFq spec, argument scale).

    Step-2 pairs split via gamma duplication Gamma(a+2n) =
    Gamma(a) 4^n (a/2)_n ((a+1)/2)_n into two half-shifted pFq parameters;
    step-1 pairs map to themselves.  The 4^n factors cancel when upper and
    lower step-2 counts match; any mismatch scales the series argument by
    4^(upper count - lower count).  With include_gamma_prefactor the
    collected prod Gamma(a_i)/prod Gamma(b_j) lands in the spec's prefactor;
    parameters on the nonpositive-integer lattice cannot be normalized and
    raise DomainError.
    """
    upper: list[float] = []
    lower: list[float] = []
    n_up2 = n_low2 = 0
    for target, pairs, is_upper in ((upper, w.upper, True), (lower, w.lower, False)):
        for coeff, step in pairs:
            if abs(step - 2.0) <= 1e-12:
                target.extend((coeff / 2.0, (coeff + 1.0) / 2.0))
                if is_upper:
                    n_up2 += 1
                else:
                    n_low2 += 1
            elif abs(step - 1.0) <= 1e-12:
                target.append(coeff)
            else:
                raise DomainError(
                    f"duplication_reduce: step {step!r} is not 1 or 2; cannot reduce"
                )
    prefactor = 1.0
    if include_gamma_prefactor:
        for coeff, _ in w.upper + w.lower:
            if is_pole(coeff):
                raise DomainError(
                    f"duplication_reduce: coefficient {coeff!r} on the gamma pole "
                    "lattice; the hypergeometric form degenerates"
                )
        log_r, sign = gamma_ratio(
            [a for a, _ in w.upper], [b for b, _ in w.lower]
        )
        prefactor = sign * math.exp(log_r)
    arg_scale = 4.0 ** (n_up2 - n_low2)
    return HypergeomSpec(tuple(upper), tuple(lower), prefactor), arg_scale


def _reduce_closed_form(cf: ClosedForm, label: str) -> ClosedForm:
    """Duplication-reduce a Wright ClosedForm into its pFq twin, keeping the
    gamma normalization in the log prefactor."""
    w = cf.series
    assert isinstance(w, WrightSpec)
    spec, arg_scale = duplication_reduce(w, include_gamma_prefactor=False)
    for coeff, _ in w.upper + w.lower:
        if is_pole(coeff):
            raise DomainError(
                f"{label}: coefficient {coeff!r} on the gamma pole lattice; "
                "the hypergeometric form degenerates"
            )
    log_r, sign = gamma_ratio([a for a, _ in w.upper], [b for b, _ in w.lower])
    if sign == 0:
        raise DomainError(f"{label}: gamma normalization vanishes; form degenerates")
    return ClosedForm(
        prefactor_log=cf.prefactor_log + log_r,
        prefactor_sign=cf.prefactor_sign * sign,
        power_of_x=cf.power_of_x,
        series=spec,
        argument_scale=cf.argument_scale * arg_scale,
        argument_power=cf.argument_power,
        label=label,
    )


def theorem31_spec(p: TheoremParams) -> ClosedForm:
    """Hypergeometric (4F5) twin of the left-sided Wright form."""
    return _reduce_closed_form(theorem21_spec(p), "3.1")


def theorem34_spec(p: TheoremParams) -> ClosedForm:
    """Hypergeometric (4F5) twin of the right-sided Wright form."""
    return _reduce_closed_form(theorem24_spec(p), "3.4")


_PFQ_COROLLARIES = {
    "rl_left": "cor3.2",
    "ek_left": "cor3.3",
    "rl_right": "cor3.5",
    "ek_right": "cor3.6",
}


def corollary_pfq_spec(variant: str, p: TheoremParams) -> ClosedForm:
    """Hypergeometric (2F3) twins of the Fox-Wright corollaries."""
    if variant not in _PFQ_COROLLARIES:
        raise DomainError(
            f"unknown corollary variant {variant!r}; expected one of "
            f"{sorted(_PFQ_COROLLARIES)}"
        )
    return _reduce_closed_form(corollary_wright_spec(variant, p), _PFQ_COROLLARIES[variant])
