"""Deformed numbers built from the q-logarithm / q-exponential pair.

Four classes come from composing an ordinary logarithm with an exponential
(``le``) or an exponential with a logarithm (``el``), deforming either the
inner or the outer function:

=====  ==========================  ===========================
class  composition                 closed form, c = 1 - q
=====  ==========================  ===========================
ile    ln(exp_q x)                 ln[1 + c x]_+ / c
ole    ln_q(exp x)                 (e^{c x} - 1) / c
iel    sign(x) exp(ln_q |x|)       sign(x) exp((|x|^c - 1)/c)
oel    sign(x) exp_q(ln |x|)       sign(x) [1 + c ln|x|]_+^{1/c}
=====  ==========================  ===========================

``ile`` and ``ole`` are mutual inverses, as are ``iel`` and ``oel``
(outside the cutoff regions).  The inner-side and outer-side members of a
family are called *complements* of each other.
"""

from __future__ import annotations

import enum
import math
from typing import Callable, NamedTuple

from .core import (
    Undefined,
    exp_q,
    inf,
    is_classical,
    ln_q,
    onep_pow,
    rel_residual,
    sign,
    xexp,
    xexpm1,
    xlog,
    xmul,
)

__all__ = [
    "IDENTITIES",
    "Asymptotes",
    "DeformClass",
    "NumberClass",
    "OracleMismatch",
    "asymptotes",
    "deform",
    "deform2",
    "deform_closed",
    "deform_composed",
    "fixed_point_report",
    "identity_check",
    "in_image",
    "number_brackets",
    "undeform",
]

#: agreement required between the composed and closed forms of a number
ORACLE_TOL = 1e-12


class OracleMismatch(AssertionError):
    """The two independent evaluations of a deformed quantity disagree."""


class DeformClass(str, enum.Enum):
    """One of the four deformation classes."""

    ILE = "ile"
    OLE = "ole"
    IEL = "iel"
    OEL = "oel"

    @property
    def family(self) -> str:
        """``'le'`` (log of exp) or ``'el'`` (exp of log)."""
        return self.value[1:]

    @property
    def side(self) -> str:
        """``'inner'`` or ``'outer'``: which function carries the deformation."""
        return "inner" if self.value[0] == "i" else "outer"

    @property
    def complement(self) -> "DeformClass":
        """The other side of the same family (the inverse number)."""
        return _COMPLEMENT[self]

    @classmethod
    def parse(cls, v: "str | DeformClass") -> "DeformClass":
        if isinstance(v, cls):
            return v
        m = cls._value2member_map_.get(v) if isinstance(v, str) else None
        if m is not None:
            return m
        try:
            return cls(str(v).lower())
        except ValueError:
            raise ValueError(f"unknown deformation class {v!r}") from None

    def __str__(self) -> str:
        return self.value


NumberClass = DeformClass

_COMPLEMENT = {
    DeformClass.ILE: DeformClass.OLE,
    DeformClass.OLE: DeformClass.ILE,
    DeformClass.IEL: DeformClass.OEL,
    DeformClass.OEL: DeformClass.IEL,
}


# -- closed forms -----------------------------------------------------------


def _ile(c: float, x: float) -> float:
    u = c * x
    if u != u:
        return u
    if u <= -1.0:
        # ln of the cut-off q-exponential: 0 (q<1) or the q>1 divergence
        return -inf if c > 0 else inf
    return math.log1p(u) / c


def _ole(c: float, x: float) -> float:
    return xexpm1(c * x) / c


def _iel(c: float, x: float) -> float:
    if x != x:
        return x
    if x == 0:
        if c > 0:
            return Undefined("no iel-number at 0 for q < 1")
        return 0.0
    a = abs(x)
    if a == inf:
        mag = inf if c > 0 else xexp(-1.0 / c)
    else:
        mag = xexp(xexpm1(c * math.log(a)) / c)
    return math.copysign(mag, x)


def _oel(c: float, x: float) -> float:
    if x != x:
        return x
    if x == 0:
        return 0.0
    return xmul(sign(x), onep_pow(c * xlog(abs(x)), c))


_CLOSED: dict[DeformClass, Callable[[float, float], float]] = {
    DeformClass.ILE: _ile,
    DeformClass.OLE: _ole,
    DeformClass.IEL: _iel,
    DeformClass.OEL: _oel,
}


def deform_closed(cls, q: float, x: float) -> float:
    """Closed-form evaluation of the deformed number."""
    cls = DeformClass.parse(cls)
    if x != x:
        return x
    if is_classical(q):
        return float(x)
    return _CLOSED[cls](1.0 - q, float(x))


def deform_composed(cls, q: float, x: float) -> float:
    """Evaluation by literally composing the (deformed) log and exp."""
    cls = DeformClass.parse(cls)
    x = float(x)
    if x != x:
        return x
    if cls is DeformClass.ILE:
        return xlog(exp_q(q, x))
    if cls is DeformClass.OLE:
        return ln_q(q, xexp(x))
    if x == 0:
        if cls is DeformClass.IEL and not is_classical(q) and q < 1:
            return Undefined("no iel-number at 0 for q < 1")
        return 0.0
    if cls is DeformClass.IEL:
        mag = xexp(ln_q(q, abs(x)))
    else:
        mag = exp_q(q, xlog(abs(x)))
    return xmul(sign(x), mag)


def deform(cls, q: float, x: float, *, check: bool = False) -> float:
    """Deformed number of class `cls` at `x`.

    Parameters
    ----------
    cls : DeformClass or str
        ``ile``, ``ole``, ``iel`` or ``oel``.
    q : float
        Deformation parameter.
    x : float
        Argument (extended real).
    check : bool, optional
        Also evaluate the composed definition and raise
        :class:`OracleMismatch` if both are finite and their relative
        residual exceeds 1e-12.

    Returns
    -------
    float
        The closed-form value.  Cutoffs give ``0`` or ``+-inf``; the
        iel-number at 0 for q < 1 does not exist and is undefined.

    Examples
    --------
    >>> round(deform("ole", 0.0, 1.0), 9)
    1.718281828
    >>> round(deform("oel", 0.0, math.e ** 2), 12)
    3.0
    """
    v = deform_closed(cls, q, x)
    if check:
        w = deform_composed(cls, q, x)
        if math.isfinite(v) and math.isfinite(w):
            r = rel_residual(v, w)
            if r > ORACLE_TOL:
                raise OracleMismatch(
                    f"{DeformClass.parse(cls)} q={q!r} x={x!r}: closed {v!r} vs composed {w!r}"
                )
        elif (v != v) != (w != w):
            raise OracleMismatch(
                f"{DeformClass.parse(cls)} q={q!r} x={x!r}: closed {v!r} vs composed {w!r}"
            )
    return v


def in_image(cls, q: float, y: float) -> bool:
    """Whether `y` is attained (or is a limit value) of ``deform(cls, q, .)``."""
    cls = DeformClass.parse(cls)
    if y != y:
        return False
    if is_classical(q):
        return True
    c = 1.0 - q
    if cls is DeformClass.OLE:
        return y >= -1.0 / c if c > 0 else y <= -1.0 / c
    if cls is DeformClass.IEL:
        edge = xexp(-1.0 / c)
        return abs(y) >= edge if c > 0 else abs(y) <= edge
    return True


def undeform(cls, q: float, y: float) -> float:
    """Inverse of :func:`deform`, i.e. the complementary number.

    Values outside the image of ``deform(cls, q, .)`` are undefined.

    >>> round(undeform("oel", 0.0, 3.0), 12) == round(math.e ** 2, 12)
    True
    """
    cls = DeformClass.parse(cls)
    if y != y:
        return y
    if not in_image(cls, q, y):
        return Undefined(f"{y!r} is outside the image of the {cls}-number")
    return deform_closed(cls.complement, q, y)


def number_brackets(cls, q: float, x: float) -> tuple[float, ...]:
    """Quantities whose sign change marks a cutoff of the number at `x`.

    Empty when the class has no cutoff for this q.  The verification
    samplers keep points away from the zeros of these quantities.
    """
    cls = DeformClass.parse(cls)
    if is_classical(q):
        return ()
    c = 1.0 - q
    if cls is DeformClass.ILE:
        return (1.0 + c * x,)
    if cls is DeformClass.IEL:
        return (abs(x),) if c > 0 else ()
    if cls is DeformClass.OEL:
        if x == 0:
            return ()
        return (1.0 + c * math.log(abs(x)),)
    return ()


class Asymptotes(NamedTuple):
    """Asymptotes of the curve ``x -> deform(cls, q, x)``.

    ``vertical`` lists abscissae where the number diverges, beyond which
    it stays infinite.  ``horizontal`` lists levels approached as
    ``|x| -> inf``.  ``plateau`` lists (lo, hi) intervals on which the
    cutoff pins the number to 0.
    """

    vertical: tuple[float, ...] = ()
    horizontal: tuple[float, ...] = ()
    plateau: tuple[tuple[float, float], ...] = ()


def asymptotes(cls, q: float) -> Asymptotes:
    """Asymptotes of the number curve of one class.

    >>> asymptotes("ile", 3.0)
    Asymptotes(vertical=(0.5,), horizontal=(), plateau=())
    >>> asymptotes("ole", -1.0).horizontal
    (-0.5,)
    """
    cls = DeformClass.parse(cls)
    if is_classical(q):
        return Asymptotes()
    c = 1.0 - q
    if cls is DeformClass.ILE:
        return Asymptotes(vertical=(-1.0 / c,)) if c < 0 else Asymptotes()
    if cls is DeformClass.OLE:
        return Asymptotes(horizontal=(-1.0 / c,))
    e = math.exp(-1.0 / c)
    if cls is DeformClass.IEL:
        return Asymptotes(horizontal=(-e, e)) if c < 0 else Asymptotes()
    if c < 0:
        return Asymptotes(vertical=(-e, e))
    return Asymptotes(plateau=((-e, e),))


def fixed_point_report(cls, q: float) -> list[float]:
    """Fixed points ``p = deform(cls, q, p)``, each verified to 1e-12.

    Raises
    ------
    ValueError
        At q = 1, where every point is fixed.
    OracleMismatch
        If a listed point fails verification.
    """
    cls = DeformClass.parse(cls)
    if is_classical(q):
        raise ValueError("every point is fixed at q = 1")
    if cls.family == "le":
        points = [0.0]
    elif cls is DeformClass.IEL and q < 1:
        points = [-1.0, 1.0]
        if deform(cls, q, 0.0) == deform(cls, q, 0.0):
            raise OracleMismatch("iel-number at 0 should not exist for q < 1")
    else:
        points = [-1.0, 0.0, 1.0]
    for p in points:
        v = deform(cls, q, p, check=True)
        if not abs(v - p) <= ORACLE_TOL:
            raise OracleMismatch(f"{cls} q={q!r}: {p} maps to {v!r}")
    return points


# -- identities with ln / exp ---------------------------------------------------
# Each identity is a chain of expressions that must all coincide.


def _d(cls):
    return lambda q, x: deform_closed(cls, q, x)


_ile_n, _ole_n, _iel_n, _oel_n = (_d(c) for c in DeformClass)

IDENTITIES: dict[str, tuple[str, Callable[[float, float], tuple[float, ...]]]] = {
    "ile_of_log": (
        "log", lambda q, x: (_ile_n(q, xlog(x)), xlog(_oel_n(q, x))),
    ),
    "ole_of_log": (
        "log", lambda q, x: (_ole_n(q, xlog(x)), xlog(_iel_n(q, x)), ln_q(q, x)),
    ),
    "ile_of_qlog": (
        "qlog", lambda q, x: (_ile_n(q, ln_q(q, x)), ln_q(q, _oel_n(q, x)), xlog(x)),
    ),
    "ole_of_qlog": (
        "log", lambda q, x: (_ole_n(q, ln_q(q, x)), ln_q(q, _iel_n(q, x))),
    ),
    "iel_of_exp": (
        "exp", lambda q, x: (_iel_n(q, xexp(x)), xexp(_ole_n(q, x))),
    ),
    "oel_of_exp": (
        "qexp", lambda q, x: (_oel_n(q, xexp(x)), xexp(_ile_n(q, x)), exp_q(q, x)),
    ),
    "iel_of_qexp": (
        "qexp", lambda q, x: (_iel_n(q, exp_q(q, x)), exp_q(q, _ole_n(q, x)), xexp(x)),
    ),
    "oel_of_qexp": (
        "qexp", lambda q, x: (_oel_n(q, exp_q(q, x)), exp_q(q, _ile_n(q, x))),
    ),
}


def identity_check(name: str, q: float, x: float) -> float:
    """Largest relative residual among the members of an identity chain.

    Log identities need x > 0.  Identities involving a q-exponential of
    x need ``1 + (1-q) x > 0``, and the one taking ``ln_q`` of an oel-number
    needs ``1 + (1-q) ln x > 0``; past those cutoffs they are undefined.

    >>> identity_check("ole_of_log", 2.0, 2.0)
    0.0
    """
    try:
        kind, fn = IDENTITIES[name]
    except KeyError:
        raise ValueError(f"unknown identity {name!r}") from None
    if kind in ("log", "qlog") and not x > 0:
        return Undefined("logarithmic identity requires x > 0")
    if kind == "qexp" and not 1.0 + (1.0 - q) * x > 0:
        return Undefined("x is past the q-exponential cutoff")
    if kind == "qlog" and not 1.0 + (1.0 - q) * math.log(x) > 0:
        return Undefined("x is past the oel-number cutoff")
    vals = fn(q, float(x))
    if not all(math.isfinite(v) for v in vals):
        return Undefined("identity member is not finite")
    return max(rel_residual(vals[0], v) for v in vals[1:])


# -- two-parameter numbers ---------------------------------------------------


def deform2(family: str, q: float, q2: float, x: float) -> float:
    """Two-parameter number: ``ln_q exp_q2 x`` (le) or ``exp_q ln_q2 x`` (el).

    The el family needs x >= 0.

    >>> round(deform2("le", 1.0, 0.5, 2.0), 6)
    1.386294
    """
    if x != x:
        return x
    if family == "le":
        return ln_q(q, exp_q(q2, x))
    if family == "el":
        if x < 0:
            return Undefined("two-parameter el-number requires x >= 0")
        return exp_q(q, ln_q(q2, x))
    raise ValueError(f"unknown family {family!r}")
