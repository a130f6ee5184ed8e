"""Entropies from generating functions.

The Boltzmann-Gibbs entropy is ``-d/da g(a)`` at ``a = 1`` with
``g(a) = sum p_i**a``.  Replacing the ordinary power by the times-power of
a deformed class gives a generalized generating function ``g_cls``, and
its ordinary derivative a functional ``S^cls``.  The oel class yields the
Tsallis entropy ``S_q = k (1 - sum p_i**q) / (q - 1)``.

Conventions: zero probabilities are skipped in every sum (so ``0 ln 0 = 0``
and ``0**a = 0`` for a > 0), except in the iel functional with q < 1,
where a zero probability makes the functional undefined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import arith
from .arith import op_brackets, tpow, tpow_brackets, dot_brackets, dot_mul
from .calc import DerivKind, Linearity, RealFn, _ridders, d_linear, d_nonlinear, h
from .core import Undefined, exp_q, is_classical, ln_q, rel_residual
from .qnumbers import DeformClass, deform_closed

__all__ = [
    "AdmissibilityReport",
    "Distribution",
    "IDENTITY_NAMES",
    "admissibility_report",
    "deformed_derivative_collapse_check",
    "extensivity_demo",
    "g",
    "g_delta",
    "identity_suite",
    "jackson_d",
    "renyi",
    "renyi_relation_check",
    "s1",
    "s_delta",
    "s_delta_closed",
    "s_delta_via_generator",
    "s_tsallis",
    "s_via_jackson",
    "tsallis_forms",
]

D = DeformClass

#: tolerance on the probability normalization
NORM_TOL = 1e-12
#: step of the central difference in the generating-function parameter
GENERATOR_STEP = 1e-6
#: tolerance on second differences when classifying concavity
CONCAVITY_TOL = 1e-9


@dataclass(frozen=True)
class Distribution:
    """Finite probability vector with the entropy constant ``k``.

    >>> Distribution.uniform(4).probs
    (0.25, 0.25, 0.25, 0.25)
    """

    probs: tuple[float, ...]
    k: float = 1.0

    def __post_init__(self):
        p = tuple(float(v) for v in self.probs)
        object.__setattr__(self, "probs", p)
        if len(p) < 1:
            raise ValueError("a distribution needs at least one state")
        if any(not (0.0 <= v <= 1.0) for v in p):
            raise ValueError("probabilities must lie in [0, 1]")
        if abs(math.fsum(p) - 1.0) > NORM_TOL:
            raise ValueError(f"probabilities sum to {math.fsum(p)!r}, not 1")
        if not self.k > 0:
            raise ValueError("k must be positive")

    @classmethod
    def uniform(cls, w: int, k: float = 1.0) -> "Distribution":
        return cls((1.0 / w,) * w, k)

    @classmethod
    def certainty(cls, w: int = 2, k: float = 1.0) -> "Distribution":
        return cls((1.0,) + (0.0,) * (w - 1), k)

    @classmethod
    def two_state(cls, p: float, k: float = 1.0) -> "Distribution":
        return cls((p, 1.0 - p), k)

    @property
    def w(self) -> int:
        return len(self.probs)

    @property
    def support(self) -> tuple[float, ...]:
        return tuple(v for v in self.probs if v > 0)

    def with_zero(self) -> "Distribution":
        """The same distribution with an extra zero-probability state."""
        return Distribution(self.probs + (0.0,), self.k)


def _as_dist(dist) -> Distribution:
    return dist if isinstance(dist, Distribution) else Distribution(tuple(dist))


# -- ordinary generating function ---------------------------------------------------


def g(dist, alpha: float) -> float:
    """``sum p_i ** alpha`` over the support (``alpha = 0`` counts it).

    >>> g(Distribution.uniform(2), 2.0)
    0.5
    """
    dist = _as_dist(dist)
    return math.fsum(p**alpha for p in dist.support)


def s1(dist) -> float:
    """Boltzmann-Gibbs entropy ``-k sum p ln p``."""
    dist = _as_dist(dist)
    return dist.k * -math.fsum(p * math.log(p) for p in dist.support) + 0.0


def tsallis_forms(dist, q: float) -> tuple[float, float, float]:
    """The three equivalent expressions of the Tsallis entropy:
    ``k (1 - sum p**q) / (q - 1)``, ``-k sum p**q ln_q p`` and
    ``k sum p ln_q(1/p)``."""
    dist = _as_dist(dist)
    if is_classical(q):
        s = s1(dist)
        return (s, s, s)
    sup = dist.support
    k = dist.k
    # 1 - sum p**q = sum (p - p**q) under normalization; the expm1 form
    # keeps the digits that cancel when q is near 1
    a = k * -math.fsum(p * math.expm1((q - 1.0) * math.log(p)) for p in sup) / (q - 1.0)
    b = -k * math.fsum(p**q * ln_q(q, p) for p in sup)
    c = k * math.fsum(p * ln_q(q, 1.0 / p) for p in sup)
    return (a, b, c)


def s_tsallis(dist, q: float) -> float:
    """Tsallis entropy ``k (1 - sum p**q) / (q - 1)``; ``s1`` at q = 1.

    >>> s_tsallis(Distribution.uniform(2), 2.0)
    0.5
    """
    # + 0.0 turns a signed zero at certainty into 0.0
    return tsallis_forms(dist, q)[0] + 0.0


# -- Jackson derivative ------------------------------------------------------------------


def jackson_d(f: Callable[[float], float], big_q: float, x: float) -> float:
    """Jackson derivative ``(f(Q x) - f(x)) / (Q x - x)``.

    When Q is within 1e-12 of 1 the ordinary derivative is returned,
    estimated by extrapolated central differences.

    >>> jackson_d(lambda t: t * t, 2.0, 1.0)
    3.0
    """
    if x == 0:
        return Undefined("Jackson derivative at x = 0")
    if is_classical(big_q):
        return _ridders(lambda s: (f(x + s) - f(x - s)) / (2.0 * s), 1e-2 * max(1.0, abs(x)))
    return (f(big_q * x) - f(x)) / (big_q * x - x)


def s_via_jackson(dist, q: float) -> float:
    """``-k D_q g`` at 1 with the Jackson derivative of dilation q."""
    dist = _as_dist(dist)
    return -dist.k * jackson_d(lambda a: g(dist, a), q, 1.0)


# -- generalized generating functions ----------------------------------------------


def g_delta(cls, q: float, dist, alpha: float) -> float:
    """``sum tpow(cls, q, p_i, alpha)`` over all states.

    Zero probabilities enter through the one-sided limits of the power.
    """
    dist = _as_dist(dist)
    return math.fsum(tpow(cls, q, p, alpha) for p in dist.probs)


def _cut_term(cls: DeformClass, q: float, dist: Distribution) -> str | None:
    """Why some term of ``S^cls`` does not exist, or None."""
    if is_classical(q):
        return None
    c = 1.0 - q
    for p in dist.probs:
        if cls is D.OLE and p > 0 and not 1.0 + c * p > 0:
            return "ile-number of p is past its cutoff"
        if cls is D.IEL:
            if p == 0 and c > 0:
                return "zero probability: no iel-number of 0 for q < 1"
            if p > 0 and not 1.0 + c * math.log(p) > 0:
                return "probability inside the oel-number cutoff"
    return None


def s_delta_via_generator(cls, q: float, dist) -> float:
    """``-k d/da g_cls(a)`` at 1 by central differences starting from step
    1e-6, or a quarter of the distance to the nearest cutoff of a power
    when that is closer (steps only shrink, with Richardson extrapolation).

    Where the closed form has no value the generating function is flat
    (it sits on a cutoff limit), so those cases are reported undefined too.
    """
    cls = D.parse(cls)
    dist = _as_dist(dist)
    why = _cut_term(cls, q, dist)
    if why:
        return Undefined(why)
    for p in dist.support:
        for a in (1.0 - GENERATOR_STEP, 1.0 + GENERATOR_STEP):
            if any(not b > 0 for b in tpow_brackets(cls, q, p, a)):
                return Undefined("a power reaches its cutoff within the differencing step")
    # small probabilities put the power's bracket within a few steps of
    # zero for q < 0; the first step is kept well inside that distance
    h0 = min([GENERATOR_STEP] + [0.25 * d for d in (_cutoff_distance(cls, q, p) for p in dist.support)])
    slope = _ridders(
        lambda s: (g_delta(cls, q, dist, 1.0 + s) - g_delta(cls, q, dist, 1.0 - s)) / (2.0 * s),
        h0,
    )
    return -dist.k * slope


def _cutoff_distance(cls: DeformClass, q: float, p: float) -> float:
    """Distance in the exponent from 1 to the nearest cutoff of
    ``tpow(cls, q, p, a)``, by linear extrapolation of its brackets."""
    da = GENERATOR_STEP
    out = math.inf
    for b0, b1 in zip(tpow_brackets(cls, q, p, 1.0), tpow_brackets(cls, q, p, 1.0 + da)):
        slope = abs(b1 - b0) / da
        if slope > 0 and math.isfinite(b0):
            out = min(out, b0 / slope)
    return out


def _xlnx(a: float, b: float) -> float:
    """``a ln b`` with the product taken as 0 when a = 0."""
    if a == 0:
        return 0.0
    return a * math.log(b) if b > 0 else Undefined("log of a nonpositive number")


def s_delta_closed(cls, q: float, dist) -> float:
    """Closed-form functional ``S^cls``.

    * ile: ``k sum ole(-p) ln ole(p)``
    * ole: ``-k sum v ln v (1 + (1-q) p)`` with ``v = ile(p)``
    * iel: ``-k sum p ln w (1 + (1-q) ln p)`` with ``w = oel(p)``
    * oel: the Tsallis entropy.

    Returns an undefined value where a term does not exist, such as a
    zero (or cut-off) probability in the iel functional for q < 1.

    >>> s_delta_closed("iel", 2.0, Distribution.certainty())
    0.0
    """
    cls = D.parse(cls)
    dist = _as_dist(dist)
    if cls is D.OEL or is_classical(q):
        return s_tsallis(dist, q)
    why = _cut_term(cls, q, dist)
    if why:
        return Undefined(why)
    c = 1.0 - q
    terms = []
    for p in dist.probs:
        if cls is D.ILE:
            if p == 0:
                continue
            terms.append(_xlnx(math.expm1(-c * p) / c, math.expm1(c * p) / c))
        elif cls is D.OLE:
            if p == 0:
                continue
            v = deform_closed(D.ILE, q, p)
            terms.append(-(1.0 + c * p) * _xlnx(v, v))
        else:
            if p == 0:
                continue
            b = 1.0 + c * math.log(p)
            # p ln w = p ln(b) / c
            terms.append(-p * math.log(b) / c * b)
    return dist.k * math.fsum(terms) + 0.0


s_delta = s_delta_closed


def deformed_derivative_collapse_check(kind: DerivKind, q: float, dist) -> float:
    """Residual of ``-D g(1) = h(1)**eta S_1`` for a deformed derivative.

    The derivative is taken numerically; the residual is relative to
    ``max(1, |rhs|)``.
    """
    dist = _as_dist(dist)
    fn = RealFn(lambda a: g(dist, a), name="g")
    if kind.linearity is Linearity.LINEAR:
        lhs = -d_linear(kind.cls, q, fn, 1.0)
    else:
        lhs = -d_nonlinear(kind.cls, q, fn, 1.0)
    h1 = h(kind.cls, q, 1.0)
    rhs = h1**kind.eta * s1(dist) / dist.k
    if lhs != lhs or rhs != rhs:
        return Undefined("h(1) does not exist")
    return abs(lhs - rhs) / max(1.0, abs(rhs))


# -- Renyi ---------------------------------------------------------------------------


def renyi(dist, q: float) -> float:
    """Renyi entropy ``k ln(sum p**q) / (1 - q)``; ``s1`` at q = 1."""
    dist = _as_dist(dist)
    if is_classical(q):
        return s1(dist)
    return dist.k * math.log(g(dist, q)) / (1.0 - q)


def renyi_relation_check(dist, q: float) -> float:
    """Largest residual of ``S^R = ile(S_q)`` and ``S_q = ole(S^R)``
    (in units of k)."""
    dist = _as_dist(dist)
    sq = s_tsallis(dist, q) / dist.k
    sr = renyi(dist, q) / dist.k
    return max(
        rel_residual(sr, deform_closed(D.ILE, q, sq)),
        rel_residual(sq, deform_closed(D.OLE, q, sr)),
    )


# -- admissibility ---------------------------------------------------------------------


@dataclass(frozen=True)
class AdmissibilityReport:
    """Properties of ``S^cls`` on a uniform two-state grid.

    ``concavity`` is ``"concave"``, ``"convex"``, ``"linear"``,
    ``"indefinite"`` or ``"undetermined"`` (fewer than three consecutive
    finite points), judged on the interior of the grid; points where the functional is not finite are left out
    and counted in ``undefined_points``.
    """

    cls: str
    q: float
    resolution: int
    certainty: float
    minimum: float
    negative: bool
    concavity: str
    expansible: bool
    undefined_points: int
    max_second_difference: float = field(default=0.0)
    min_second_difference: float = field(default=0.0)

    @property
    def certainty_zero(self) -> bool:
        return self.certainty == self.certainty and abs(self.certainty) <= 1e-12

    @property
    def admissible(self) -> bool:
        return (
            self.expansible
            and not self.negative
            and self.certainty_zero
            and self.concavity in ("concave", "convex", "linear")
            and self.undefined_points == 0
        )

    def as_dict(self) -> dict:
        return {
            "admissible": self.admissible,
            "certainty": self.certainty,
            "certainty_zero": self.certainty_zero,
            "class": self.cls,
            "concavity": self.concavity,
            "expansible": self.expansible,
            "max_second_difference": self.max_second_difference,
            "min_second_difference": self.min_second_difference,
            "minimum": self.minimum,
            "negative": self.negative,
            "q": self.q,
            "resolution": self.resolution,
            "undefined_points": self.undefined_points,
        }


def two_state_curve(cls, q: float, resolution: int = 1001) -> tuple[np.ndarray, list[float]]:
    """Grid ``p`` on [0, 1] and ``S^cls(p, 1 - p)`` at each point."""
    ps = np.linspace(0.0, 1.0, resolution)
    vals = [s_delta_closed(cls, q, Distribution((float(p), float(1.0 - p)))) for p in ps]
    return ps, vals


def _concavity(vals: Sequence[float]) -> tuple[str, float, float]:
    # interior points only: for q <= 0 the zero-skipping convention makes
    # the functional jump at certainty (p**q diverges as p -> 0)
    vals = vals[1:-1]
    d2 = []
    for a, b, c in zip(vals, vals[1:], vals[2:]):
        if math.isfinite(a) and math.isfinite(b) and math.isfinite(c):
            d2.append(a - 2.0 * b + c)
    if not d2:
        return "undetermined", math.nan, math.nan
    hi, lo = max(d2), min(d2)
    up = hi > CONCAVITY_TOL
    down = lo < -CONCAVITY_TOL
    if up and down:
        kind = "indefinite"
    elif up:
        kind = "convex"
    elif down:
        kind = "concave"
    else:
        kind = "linear"
    return kind, hi, lo


def admissibility_report(cls, q: float, resolution: int = 1001) -> AdmissibilityReport:
    """Scan ``S^cls`` over the two-state simplex.

    Checks the value at certainty, the sign, the concavity (second
    differences with tolerance 1e-9) and expansibility (appending a
    zero-probability state leaves every grid value unchanged).
    """
    if resolution < 3:
        raise ValueError("resolution must be at least 3")
    cls = D.parse(cls)
    ps, vals = two_state_curve(cls, q, resolution)
    finite = [v for v in vals if math.isfinite(v)]
    kind, hi, lo = _concavity(vals)
    expansible = True
    for p, v in zip(ps, vals):
        w = s_delta_closed(cls, q, Distribution((float(p), float(1.0 - p), 0.0)))
        if not (w == v or (math.isfinite(v) and rel_residual(v, w) <= 1e-12)):
            expansible = False
            break
    minimum = min(finite) if finite else math.nan
    return AdmissibilityReport(
        cls=cls.value,
        q=float(q),
        resolution=resolution,
        certainty=vals[-1],
        minimum=minimum,
        negative=bool(finite) and minimum < -1e-12,
        concavity=kind,
        expansible=expansible,
        undefined_points=len(vals) - len(finite),
        max_second_difference=hi,
        min_second_difference=lo,
    )


# -- extensivity -------------------------------------------------------------------------


def extensivity_demo(q: float, w1: float, n: int, k: float = 1.0) -> tuple[float, float]:
    """``(k ln_q W, n k ln_q w1)`` with ``W = tpow(oel, q, w1, n)``.

    The strongly correlated composition ``W = w1 ^ n`` (oel times-power)
    makes the Tsallis entropy of equiprobable states extensive.

    >>> tuple(round(v, 12) for v in extensivity_demo(0.5, 4.0, 3))
    (6.0, 6.0)
    """
    if not w1 > 1:
        raise ValueError("w1 must exceed 1")
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    big_w = tpow(D.OEL, q, w1, float(n))
    if not math.isfinite(big_w) or big_w <= 0:
        return Undefined("oel power hit its cutoff")
    return (k * ln_q(q, big_w), n * k * ln_q(q, w1))


# -- cross-class identities ----------------------------------------------------------------


class _Eval:
    """Evaluates identity members while recording cutoff brackets."""

    def __init__(self, q: float):
        self.q = q
        self.c = 1.0 - q
        self.brackets: list[float] = []

    def expq(self, x):
        if not is_classical(self.q):
            self.brackets.append(1.0 + self.c * x)
        return exp_q(self.q, x)

    def lnq(self, x):
        return ln_q(self.q, x)

    def op(self, cls, kind, x, y):
        self.brackets.extend(op_brackets(cls, kind, self.q, x, y))
        if kind == "div" or kind == "sub" and cls == "ole":
            # distance from the pole, as for the arithmetic samplers
            self.brackets.extend(v * 1e-4 for v in arith.op_poles(cls, kind, self.q, x, y))
        return arith.op_closed(cls, kind, self.q, x, y)

    def pow(self, cls, x, y):
        self.brackets.extend(tpow_brackets(cls, self.q, x, y))
        return tpow(cls, self.q, x, y)

    def dot(self, cls, x, y):
        self.brackets.extend(dot_brackets(cls, self.q, x, y))
        return dot_mul(cls, self.q, x, y)


_LN = math.log


def _identities():
    """name -> (needs positive x and y, fn(ev, x, y) -> (lhs, rhs))."""
    return {
        # logarithm of a product / ratio
        "qlog_product": (True, lambda e, x, y: (e.lnq(x * y), e.op("ole", "add", e.lnq(x), e.lnq(y)))),
        "qlog_oel_product": (True, lambda e, x, y: (e.lnq(e.op("oel", "mul", x, y)), e.lnq(x) + e.lnq(y))),
        "log_iel_product": (True, lambda e, x, y: (_LN(e.op("iel", "mul", x, y)), e.op("ole", "add", _LN(x), _LN(y)))),
        "log_oel_product": (True, lambda e, x, y: (_LN(e.op("oel", "mul", x, y)), e.op("ile", "add", _LN(x), _LN(y)))),
        "qlog_ratio": (True, lambda e, x, y: (e.lnq(x / y), e.op("ole", "sub", e.lnq(x), e.lnq(y)))),
        "qlog_oel_ratio": (True, lambda e, x, y: (e.lnq(e.op("oel", "div", x, y)), e.lnq(x) - e.lnq(y))),
        "log_iel_ratio": (True, lambda e, x, y: (_LN(e.op("iel", "div", x, y)), e.op("ole", "sub", _LN(x), _LN(y)))),
        "log_oel_ratio": (True, lambda e, x, y: (_LN(e.op("oel", "div", x, y)), e.op("ile", "sub", _LN(x), _LN(y)))),
        # logarithm of a power
        "qlog_oel_power": (True, lambda e, x, y: (e.lnq(e.pow("oel", x, y)), y * e.lnq(x))),
        "log_iel_power": (True, lambda e, x, y: (_LN(e.pow("iel", x, y)), e.dot("ole", y, _LN(x)))),
        "log_oel_power": (True, lambda e, x, y: (_LN(e.pow("oel", x, y)), e.dot("ile", y, _LN(x)))),
        # exponential of a sum / difference
        "qexp_ole_sum": (False, lambda e, x, y: (e.expq(e.op("ole", "add", x, y)), e.expq(x) * e.expq(y))),
        "qexp_sum": (False, lambda e, x, y: (e.expq(x + y), e.op("oel", "mul", e.expq(x), e.expq(y)))),
        "exp_ole_sum": (False, lambda e, x, y: (math.exp(e.op("ole", "add", x, y)), e.op("iel", "mul", math.exp(x), math.exp(y)))),
        "exp_ile_sum": (False, lambda e, x, y: (math.exp(e.op("ile", "add", x, y)), e.op("oel", "mul", math.exp(x), math.exp(y)))),
        "qexp_ole_difference": (False, lambda e, x, y: (e.expq(e.op("ole", "sub", x, y)), e.expq(x) / e.expq(y))),
        "qexp_difference": (False, lambda e, x, y: (e.expq(x - y), e.op("oel", "div", e.expq(x), e.expq(y)))),
        "exp_ole_difference": (False, lambda e, x, y: (math.exp(e.op("ole", "sub", x, y)), e.op("iel", "div", math.exp(x), math.exp(y)))),
        "exp_ile_difference": (False, lambda e, x, y: (math.exp(e.op("ile", "sub", x, y)), e.op("oel", "div", math.exp(x), math.exp(y)))),
        # power of an exponential
        "qexp_oel_power": (False, lambda e, x, y: (e.pow("oel", e.expq(x), y), e.expq(y * x))),
        "exp_iel_power": (False, lambda e, x, y: (e.pow("iel", math.exp(x), y), math.exp(e.dot("ole", y, x)))),
        "exp_oel_power": (False, lambda e, x, y: (e.pow("oel", math.exp(x), y), math.exp(e.dot("ile", y, x)))),
    }


_IDS = _identities()
IDENTITY_NAMES: tuple[str, ...] = tuple(_IDS)

#: brackets at or below this mark an identity instance as cut off
IDENTITY_COLLAR = 1e-6


def identity_suite(q: float, x: float, y: float, names: Sequence[str] | None = None) -> dict[str, float]:
    """Relative residuals of the cross-class identities at ``(q, x, y)``.

    Instances that need x, y > 0 but do not have them, or that pass within
    1e-6 of a cutoff border (or 1e-2 of a division pole), or whose members
    are not finite, map to an undefined value whose reason says why.

    >>> identity_suite(2.0, 2.0, 3.0, ["qlog_product"])["qlog_product"] <= 1e-15
    True
    """
    out: dict[str, float] = {}
    for name in names or IDENTITY_NAMES:
        positive, fn = _IDS[name]
        if positive and not (x > 0 and y > 0):
            out[name] = Undefined("identity requires x, y > 0")
            continue
        ev = _Eval(q)
        try:
            lhs, rhs = fn(ev, x, y)
        except (ValueError, OverflowError, ZeroDivisionError):
            out[name] = Undefined("member outside the domain of ln/exp")
            continue
        if any(not b > IDENTITY_COLLAR for b in ev.brackets):
            out[name] = Undefined("instance crosses a cutoff border")
        elif not (math.isfinite(lhs) and math.isfinite(rhs)):
            out[name] = Undefined("member is not finite")
        else:
            out[name] = rel_residual(lhs, rhs)
    return out
