"""The q-logarithm / q-exponential pair and the extended-real value model.

Every deformed map in the package returns an *extended real*, represented
as a plain ``float``:

* finite floats are ordinary values (never NaN),
* ``math.inf`` / ``-math.inf`` are the divergent limits,
* NaN means *undefined*.  Undefined values produced by this package are
  instances of :class:`Undefined`, a NaN that carries a machine-readable
  ``reason``.  Ordinary float arithmetic propagates NaN, so any operation
  touching an undefined value is itself undefined.

Cutoffs of the q-exponential are values, not errors: ``exp_q`` returns
``0.0`` below the cutoff for q < 1 and ``inf`` beyond the divergence for
q > 1.
"""

from __future__ import annotations

import enum
import math

__all__ = [
    "CLASSICAL_TOL",
    "ExtReal",
    "QParam",
    "Tag",
    "Undefined",
    "classify",
    "exp_q",
    "is_classical",
    "is_undefined",
    "ln_q",
    "qlog_nonadditivity_residual",
    "reason",
    "rel_residual",
    "sign",
]

#: ``|q - 1|`` at or below this routes every operator to the ordinary branch.
CLASSICAL_TOL = 1e-12

ExtReal = float

inf = math.inf
nan = math.nan

# largest argument math.exp accepts without OverflowError
_EXP_MAX = 709.782712893384


class Undefined(float):
    """NaN tagged with the reason the value does not exist."""

    __slots__ = ("reason",)

    def __new__(cls, reason: str = "undefined"):
        self = super().__new__(cls, nan)
        self.reason = reason
        return self

    def __repr__(self) -> str:
        return f"Undefined({self.reason!r})"

    __str__ = __repr__

    def __reduce__(self):
        return (Undefined, (self.reason,))


class Tag(enum.Enum):
    FINITE = "finite"
    POS_INF = "inf"
    NEG_INF = "-inf"
    UNDEFINED = "undefined"


def classify(v: float) -> Tag:
    if v != v:
        return Tag.UNDEFINED
    if v == inf:
        return Tag.POS_INF
    if v == -inf:
        return Tag.NEG_INF
    return Tag.FINITE


def is_undefined(v: float) -> bool:
    return v != v


def reason(v: float) -> str | None:
    """Reason code of an undefined value, ``None`` for defined values."""
    if v == v:
        return None
    return getattr(v, "reason", "undefined")


class QParam(float):
    """Deformation parameter q.

    A ``float`` subclass, so it can be passed anywhere a plain q is
    accepted.  Construction rejects NaN and infinities.
    """

    def __new__(cls, q: float):
        q = float(q)
        if not math.isfinite(q):
            raise ValueError(f"q must be finite, got {q!r}")
        return super().__new__(cls, q)

    @property
    def q(self) -> float:
        return float(self)

    @property
    def one_minus_q(self) -> float:
        return 1.0 - float(self)

    @property
    def classical(self) -> bool:
        return is_classical(self)

    @property
    def Q(self) -> float:
        """Quantum-calculus parameter ``2 - q``."""
        return 2.0 - float(self)


def is_classical(q: float) -> bool:
    return abs(q - 1.0) <= CLASSICAL_TOL


def check_q(q: float) -> float:
    q = float(q)
    if not math.isfinite(q):
        raise ValueError(f"q must be finite, got {q!r}")
    return q


def sign(x: float) -> float:
    """sign(x) with sign(0) = 0; NaN stays NaN."""
    if x > 0:
        return 1.0
    if x < 0:
        return -1.0
    if x == 0:
        return 0.0
    return x


def rel_residual(a: float, b: float) -> float:
    """``|a - b| / max(1, |a|, |b|)``; equal infinities give 0, NaN gives NaN."""
    if a == b:
        return 0.0
    if a != a or b != b:
        return nan
    if math.isinf(a) or math.isinf(b):
        return inf
    return abs(a - b) / max(1.0, abs(a), abs(b))


# -- extended elementary functions -----------------------------------------
# These never raise: overflow goes to inf, domain errors to NaN.


def xexp(t: float) -> float:
    if t > _EXP_MAX:
        return inf
    return math.exp(t) if t == t else t


def xexpm1(t: float) -> float:
    if t > _EXP_MAX:
        return inf
    return math.expm1(t) if t == t else t


def xlog(x: float) -> float:
    if x > 0:
        return math.log(x)
    if x == 0:
        return -inf
    return Undefined("log of negative argument") if x == x else x


def xlog1p(u: float) -> float:
    if u > -1:
        return math.log1p(u)
    if u == -1:
        return -inf
    return Undefined("log of negative argument") if u == u else u


def xpow(b: float, e: float) -> float:
    """``b ** e`` for b >= 0 under extended-real conventions."""
    if b != b or e != e:
        return nan
    if b < 0:
        return Undefined("real power of negative base")
    if e == 0:
        return 1.0
    if b == 0:
        return 0.0 if e > 0 else inf
    if b == inf:
        return inf if e > 0 else 0.0
    if e == inf:
        return inf if b > 1 else (0.0 if b < 1 else 1.0)
    if e == -inf:
        return 0.0 if b > 1 else (inf if b < 1 else 1.0)
    try:
        return math.pow(b, e)
    except OverflowError:
        return inf


def plus_pow(b: float, e: float) -> float:
    """``[b]_+ ** e``, the cutoff bracket raised to a power."""
    if b != b:
        return b
    return xpow(b if b > 0 else 0.0, e)


def onep_pow(u: float, c: float) -> float:
    """``[1 + u]_+ ** (1/c)`` evaluated as ``exp(log1p(u) / c)``.

    Keeps full relative accuracy when ``u`` and ``c`` are both small, where
    forming ``1 + u`` first would lose the digits that ``1/c`` amplifies.
    """
    if u != u:
        return u
    if u <= -1.0:
        return 0.0 if c > 0 else inf
    if u == inf:
        return inf if c > 0 else 0.0
    return xexp(math.log1p(u) / c)


def xmul(a: float, b: float) -> float:
    """Product where an exact zero annihilates infinities (sign(0) * inf = 0)."""
    if a == 0 and b == b or b == 0 and a == a:
        return 0.0
    return a * b


# -- the q-logarithm / q-exponential pair ------------------------------------


def ln_q(q: float, x: float) -> float:
    """q-logarithm ``(x**(1-q) - 1) / (1-q)``.

    Defined for x >= 0 (including the limits at 0 and +inf); negative or
    undefined arguments give an undefined result.

    >>> ln_q(2.0, 2.0)
    0.5
    >>> ln_q(0.5, 0.0)
    -2.0
    """
    if x != x:
        return x
    if x < 0:
        return Undefined("ln_q of negative argument")
    if is_classical(q):
        return xlog(x)
    c = 1.0 - q
    if x == 0:
        return -1.0 / c if c > 0 else -inf
    if x == inf:
        return inf if c > 0 else 1.0 / (q - 1.0)
    return xexpm1(c * math.log(x)) / c


def exp_q(q: float, x: float) -> float:
    """q-exponential ``[1 + (1-q) x]_+ ** (1/(1-q))``.

    Returns 0 at and below the cutoff for q < 1 and ``inf`` at and beyond
    the divergence for q > 1.

    >>> round(exp_q(0.5, 6.0), 12)
    16.0
    >>> exp_q(0.5, -3.0)
    0.0
    """
    if x != x:
        return x
    if is_classical(q):
        return xexp(x)
    c = 1.0 - q
    u = c * x
    if u <= -1.0:
        return 0.0 if c > 0 else inf
    if u == inf:
        return inf if c > 0 else 0.0
    return xexp(math.log1p(u) / c)


def qlog_nonadditivity_residual(q: float, x: float, y: float) -> float:
    """``ln_q(xy) - [ln_q x + ln_q y + (1-q) ln_q x ln_q y]`` (zero in exact arithmetic)."""
    if not (x > 0 and y > 0):
        return Undefined("nonadditivity requires x, y > 0")
    a = ln_q(q, x)
    b = ln_q(q, y)
    return ln_q(q, x * y) - (a + b + (1.0 - q) * a * b)
