"""Deformed arithmetics of the four classes.

Every operator comes in two independent implementations:

* :func:`op_rule` builds it from the generating rule.  For the inner-side
  classes (``ile``, ``iel``) ``x (*) y = i(o(x) * o(y))`` and for the
  outer-side classes (``ole``, ``oel``) ``x (*) y = o(i(x) * i(y))``, where
  ``i``/``o`` are the inner/outer numbers of the same family and ``*`` is
  the ordinary operator.
* :func:`op_closed` evaluates explicit closed forms, written in
  cancellation-free ``expm1``/``log1p`` form where possible.

All results are extended reals.  A cutoff bracket ``[.]_+`` evaluates to a
value (0 or +-inf), while nonexistent elements and poles are
:class:`~qdeform.core.Undefined`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import (
    Undefined,
    inf,
    is_classical,
    ln_q,
    nan,
    onep_pow,
    sign,
    xexp,
    xexpm1,
    xlog,
    xmul,
    xpow,
)
from .qnumbers import DeformClass, deform2, deform_closed, deform_composed, number_brackets

__all__ = [
    "BinOp",
    "ElementSet",
    "absorbing",
    "cutoff_bracket",
    "dot_brackets",
    "dot_mul",
    "dot_one",
    "inv_mul",
    "neg",
    "neutral_add",
    "neutral_mul",
    "op",
    "op_brackets",
    "op_closed",
    "op_poles",
    "op_rule",
    "op_rule2",
    "ordinary",
    "printed_sign_disagrees",
    "tpow",
    "tpow_brackets",
]

D = DeformClass


class BinOp(str, enum.Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"

    @classmethod
    def parse(cls, v: "str | BinOp") -> "BinOp":
        if isinstance(v, cls):
            return v
        m = cls._value2member_map_.get(v) if isinstance(v, str) else None
        if m is not None:
            return m
        try:
            return cls(str(v).lower())
        except ValueError:
            raise ValueError(f"unknown operator {v!r}") from None

    def __str__(self) -> str:
        return self.value


BinOpKind = BinOp


@dataclass(frozen=True)
class ElementSet:
    """A closed interval of elements, used where a neutral or absorbing
    element is not unique or holds only conditionally.

    ``value`` is the representative returned where a single number is
    needed (the deformed zero).
    """

    lo: float
    hi: float
    value: float = 0.0
    condition: str = ""

    def __contains__(self, v: float) -> bool:
        return self.lo <= v <= self.hi


def ordinary(kind, a: float, b: float) -> float:
    """Ordinary ``a (kind) b`` on extended reals; x/0 is undefined."""
    kind = BinOp.parse(kind)
    if kind is BinOp.ADD:
        return a + b
    if kind is BinOp.SUB:
        return a - b
    if kind is BinOp.MUL:
        return a * b
    if b == 0:
        return Undefined("division by zero")
    return a / b


# -- generating rule ---------------------------------------------------------


def op_rule(cls, kind, q: float, x: float, y: float) -> float:
    """Operator from the generating rule (the reference implementation).

    The numbers are evaluated by literally composing ``ln``/``exp`` with
    ``ln_q``/``exp_q``, independently of the closed forms.

    >>> op_rule("ole", "add", 0.5, 1.0, 1.0)
    2.5
    """
    cls = D.parse(cls)
    other = cls.complement
    a = deform_composed(other, q, x)
    b = deform_composed(other, q, y)
    return deform_composed(cls, q, ordinary(kind, a, b))


def op_rule2(q: float, q2: float, kind, x: float, y: float, family: str = "le") -> float:
    """Two-parameter operator ``outer(inner(x) * inner(y))``.

    ``inner = deform2(family, q2, q, .)`` and ``outer = deform2(family, q, q2, .)``.
    With ``q2 = 1`` this is the ole (le family) or oel (el family)
    arithmetic.
    """
    a = deform2(family, q2, q, x)
    b = deform2(family, q2, q, y)
    return deform2(family, q, q2, ordinary(kind, a, b))


# -- closed forms --------------------------------------------------------------


def _log1p_cut(u: float, c: float) -> float:
    """``ln[1 + u]_+ / c``, the ile-number of ``u / c``."""
    if u != u:
        return u
    if u <= -1.0:
        return -inf if c > 0 else inf
    return math.log1p(u) / c


def _lplus(c: float, x: float) -> float:
    """``ln[1 + c x]_+``."""
    u = c * x
    if u != u:
        return u
    return math.log1p(u) if u > -1.0 else -inf


def _el_log(c: float, x: float) -> float:
    """``c ln|x|``, so that ``|oel(x)| ** c = [1 + c ln|x|]_+``."""
    return c * xlog(abs(x))


def _iel_printed(c: float, x: float) -> float:
    """``sign(x) exp(ln_q |x|)`` with sign(0) = 0 (no nonexistence check)."""
    return xmul(sign(x), xexp(ln_q(1.0 - c, abs(x))))


def _ile_closed(kind: BinOp, c: float, x: float, y: float) -> float:
    ex = xexpm1(c * x)
    ey = xexpm1(c * y)
    if kind is BinOp.ADD:
        return _log1p_cut(ex + ey, c)
    if kind is BinOp.SUB:
        return _log1p_cut(ex - ey, c)
    if kind is BinOp.MUL:
        return _log1p_cut(ex * ey / c, c)
    if ey == 0:
        return Undefined("ile-division by the additive neutral 0")
    return _log1p_cut(c * ex / ey, c)


def _ole_closed(kind: BinOp, c: float, x: float, y: float) -> float:
    if kind is BinOp.ADD:
        return x + y + c * x * y
    if kind is BinOp.SUB:
        d = 1.0 + c * y
        if d == 0:
            return Undefined("ole-subtraction pole at y = 1/(q-1)")
        return (x - y) / d
    lx = _lplus(c, x)
    ly = _lplus(c, y)
    if kind is BinOp.MUL:
        return xexpm1(lx * ly / c) / c
    if ly == 0:
        return Undefined("ole-division by the additive neutral 0")
    return xexpm1(c * lx / ly) / c


def _iel_closed(kind: BinOp, c: float, x: float, y: float) -> float:
    q = 1.0 - c
    if kind in (BinOp.ADD, BinOp.SUB):
        ox = xmul(sign(x), onep_pow(_el_log(c, x), c))
        oy = xmul(sign(y), onep_pow(_el_log(c, y), c))
        if kind is BinOp.ADD:
            s, pre = ox + oy, sign(x + y)
        else:
            s, pre = ox - oy, sign(x - y)
        return xmul(pre, xexp(ln_q(q, abs(s))))
    ux = _el_log(c, x)
    uy = _el_log(c, y)
    if kind is BinOp.MUL:
        # |B(x) B(y)| - 1 with B = [1 + u]_+, expanded to avoid cancellation
        if ux <= -1.0 or uy <= -1.0:
            t = -1.0 if ux == ux and uy == uy else nan
        elif math.isinf(ux) or math.isinf(uy):
            # a zero factor for q > 1: the expanded form would give inf - inf
            t = (1.0 + ux) * (1.0 + uy) - 1.0
        else:
            t = ux + uy + ux * uy
        return xmul(sign(x * y), xexp(t / c))
    if y == 0:
        return Undefined("iel-division by 0")
    if uy <= -1.0:
        if c > 0:
            return Undefined("iel-division by an element of the cutoff set")
        return 0.0
    t = -1.0 if ux <= -1.0 else (ux - uy) / (1.0 + uy)
    return xmul(sign(x / y), xexp(t / c))


def _oel_closed(kind: BinOp, c: float, x: float, y: float) -> float:
    if kind in (BinOp.ADD, BinOp.SUB):
        ix = _iel_printed(c, x)
        iy = _iel_printed(c, y)
        if kind is BinOp.ADD:
            s, pre = ix + iy, sign(x + y)
        else:
            s, pre = ix - iy, sign(x - y)
        return xmul(pre, onep_pow(c * xlog(abs(s)), c))
    # |x|^c +- (|y|^c - 1) written as 1 + expm1(.) +- expm1(.)
    ex = xexpm1(_el_log(c, x))
    ey = xexpm1(_el_log(c, y))
    if kind is BinOp.MUL:
        return xmul(sign(x * y), onep_pow(ex + ey, c))
    if y == 0:
        return Undefined("oel-division by 0")
    return xmul(sign(x / y), onep_pow(ex - ey, c))


_CLOSED = {D.ILE: _ile_closed, D.OLE: _ole_closed, D.IEL: _iel_closed, D.OEL: _oel_closed}


def op_closed(cls, kind, q: float, x: float, y: float) -> float:
    """Deformed ``x (kind) y`` from its closed form.

    Parameters
    ----------
    cls : DeformClass or str
    kind : BinOp or str
        ``add``, ``sub``, ``mul`` or ``div``.
    q, x, y : float

    Returns
    -------
    float
        Extended real.  iel/oel addition and subtraction carry the
        ``sign(x +- y)`` prefactor of the explicit formula; see
        :func:`printed_sign_disagrees` for where it differs from the rule.

    Examples
    --------
    >>> op_closed("oel", "div", 0.5, 16.0, 9.0)
    4.0
    >>> op_closed("oel", "mul", -1.0, 0.3, 0.3)
    0.0
    """
    cls = D.parse(cls)
    kind = BinOp.parse(kind)
    x = float(x)
    y = float(y)
    if x != x or y != y:
        return x + y
    if is_classical(q):
        return ordinary(kind, x, y)
    return _CLOSED[cls](kind, 1.0 - q, x, y)


op = op_closed


def printed_sign_disagrees(cls, kind, q: float, x: float, y: float) -> bool:
    """Whether the explicit el-class sum/difference takes a different sign
    from the generating rule, i.e. ``sign(x +- y) != sign(o(x) +- o(y))``.

    Always ``False`` for le classes, products and quotients.
    """
    cls = D.parse(cls)
    kind = BinOp.parse(kind)
    if cls.family != "el" or kind not in (BinOp.ADD, BinOp.SUB):
        return False
    other = cls.complement
    a = deform_closed(other, q, x)
    b = deform_closed(other, q, y)
    inner = ordinary(kind, a, b)
    return sign(ordinary(kind, x, y)) != sign(inner)


# -- elements ------------------------------------------------------------------


def neg(cls, q: float, y: float) -> float:
    """Additive opposite ``z`` with ``y (+) z`` equal to the additive neutral.

    >>> neg("ole", 0.0, 1.0)
    -0.5
    """
    cls = D.parse(cls)
    y = float(y)
    if y != y:
        return y
    if is_classical(q):
        return -y
    c = 1.0 - q
    if cls is D.ILE:
        e = xexpm1(c * y)
        if e >= 1.0:
            return Undefined("no ile-opposite: exp((1-q) y) >= 2")
        return math.log1p(-e) / c
    if cls is D.OLE:
        d = 1.0 + c * y
        if d == 0:
            return Undefined("no ole-opposite at y = 1/(q-1)")
        return -y / d
    if cls is D.IEL:
        edge = xexp(-1.0 / c)
        inside = abs(y) > edge if c > 0 else abs(y) < edge
        return -y if inside else -sign(y) * edge
    if c > 0:
        return Undefined("no oel-opposite for q < 1")
    return -y


def neutral_add(cls, q: float) -> "float | ElementSet":
    """Neutral element of the deformed addition."""
    cls = D.parse(cls)
    if is_classical(q) or q > 1 or cls.family == "le":
        return 0.0
    if cls is D.IEL:
        edge = xexp(-1.0 / (1.0 - q))
        return ElementSet(-edge, edge, 0.0, "every |n| <= exp(-1/(1-q)) is neutral")
    return Undefined("no oel-additive neutral for q < 1")


def neutral_mul(cls, q: float) -> float:
    """Neutral element of the deformed multiplication.

    >>> round(neutral_mul("ile", 0.5), 6)
    0.81093
    """
    cls = D.parse(cls)
    if is_classical(q):
        return 1.0
    c = 1.0 - q
    if cls is D.ILE:
        if q >= 2:
            return Undefined("no ile-multiplicative neutral for q >= 2")
        return math.log1p(c) / c
    if cls is D.OLE:
        return math.expm1(c) / c
    return 1.0


def absorbing(cls, q: float) -> "float | ElementSet":
    """Absorbing element of the deformed multiplication.

    For oel with q < 1 zero only absorbs factors with ``|x| < 1``; the
    result is an :class:`ElementSet` carrying that condition.
    """
    cls = D.parse(cls)
    if cls is D.IEL:
        return neutral_add(cls, q)
    if cls is D.OEL and not is_classical(q) and q < 1:
        return ElementSet(0.0, 0.0, 0.0, "absorbs only factors with |x| < 1")
    return 0.0


def inv_mul(cls, q: float, y: float) -> float:
    """Multiplicative inverse ``I (/) y``.

    >>> inv_mul("oel", 0.5, 4.0)
    0.0
    >>> inv_mul("oel", 1.0, 4.0)
    0.25
    """
    one = neutral_mul(cls, q)
    if one != one:
        return one
    return op_closed(cls, BinOp.DIV, q, one, y)


# -- powers and dot-multiplications ----------------------------------------------


def tpow(cls, q: float, x: float, y: float) -> float:
    """Times-power ``x ^ y``: repeated deformed multiplication extended to real y.

    Requires x >= 0; ``x = 0`` gives the one-sided limits.

    >>> round(tpow("oel", 0.5, 4.0, 3.0), 12)
    16.0
    """
    cls = D.parse(cls)
    x = float(x)
    y = float(y)
    if x != x or y != y:
        return x + y
    if x < 0:
        return Undefined("times-power requires x >= 0")
    if is_classical(q):
        return xpow(x, y)
    c = 1.0 - q
    if cls is D.ILE:
        base = xexpm1(c * x) / c
        return _log1p_cut(c * xpow(base, y), c)
    if cls is D.OLE:
        base = _lplus(c, x) / c
        return xexpm1(c * xpow(base, y)) / c
    u = _el_log(c, x)
    if cls is D.IEL:
        # ([1 + u]_+ ** y - 1) / c
        if u <= -1.0:
            t = xpow(0.0, y) - 1.0
        else:
            t = xexpm1(xmul(y, math.log1p(u)))
        return xexp(t / c)
    # [y x^c - (y - 1)]_+ ** (1/c) = [1 + y (x^c - 1)]_+ ** (1/c)
    return onep_pow(xmul(y, xexpm1(u)), c)


def dot_mul(cls, q: float, x: float, y: float) -> float:
    """Dot-multiplication ``x (.) y``: repeated deformed addition of the
    summand `y`, extended to a real repetition count `x`.

    Not commutative.  iel and oel require x > 0.

    >>> round(dot_mul("ole", 0.0, 3.0, 1.0), 12)
    7.0
    """
    cls = D.parse(cls)
    x = float(x)
    y = float(y)
    if x != x or y != y:
        return x + y
    if cls.family == "el" and not x > 0:
        return Undefined("el dot-multiplication requires x > 0")
    if is_classical(q):
        return x * y
    c = 1.0 - q
    if cls is D.ILE:
        return _log1p_cut(xmul(x, xexpm1(c * y)), c)
    if cls is D.OLE:
        b = 1.0 + c * y
        if b > 0:
            return xexpm1(xmul(x, math.log1p(c * y))) / c
        return (xpow(0.0, x) - 1.0) / c
    if cls is D.IEL:
        return xmul(sign(y), xexp(ln_q(q, x)) * xpow(abs(y), xpow(x, c)))
    return xmul(sign(y), onep_pow(c * math.log(x) + xexpm1(_el_log(c, y)), c))


def dot_one(cls, q: float, x: float) -> float:
    """``x (.) 1`` through the deformed numbers.

    ile gives ``i(x * o(1))``, ole gives ``o(x * i(1))``; for the el classes
    ``o(1) = i(1) = 1`` so the result is the class's own number.
    """
    cls = D.parse(cls)
    other = cls.complement
    return deform_closed(cls, q, x * deform_closed(other, q, 1.0))


# -- cutoff brackets -----------------------------------------------------------


# magnitudes outside [_TINY, _HUGE] lose digits (subnormals) or overflow
# after one more multiplication
_TINY = 1e-290
_HUGE = 1e290


def _representable(x: float, v: float) -> list[float]:
    """``[-inf]`` when an intermediate left the safely representable range
    (subnormal or zero from a nonzero argument, huge or inf from a finite
    one), else ``[]``.

    Such points are outside what double precision can resolve and are
    treated like cutoff points by the samplers.
    """
    if v != v or x != x:
        return []
    if x != 0 and abs(v) < _TINY:
        return [-inf]
    if math.isfinite(x) and abs(v) > _HUGE:
        return [-inf]
    return []


def op_brackets(cls, kind, q: float, x: float, y: float) -> tuple[float, ...]:
    """Bracket quantities of ``x (kind) y``.

    A bracket is a quantity whose zero is a cutoff border: the arguments of
    ``[.]_+`` met by the operands' complement numbers and by the outer
    number.  A negative bracket means the evaluation went through a cutoff.
    Division poles are reported separately by :func:`op_poles`.
    """
    cls = D.parse(cls)
    kind = BinOp.parse(kind)
    if is_classical(q):
        return ()
    other = cls.complement
    a = deform_closed(other, q, x)
    b = deform_closed(other, q, y)
    out = list(number_brackets(other, q, x)) + list(number_brackets(other, q, y))
    out += _representable(x, a) + _representable(y, b)
    s = ordinary(kind, a, b)
    if kind in (BinOp.MUL, BinOp.DIV) and a != 0 and b != 0:
        out += _representable(a, s)
    if s == s and not math.isinf(s):
        out.extend(number_brackets(cls, q, s))
        out += _representable(s, deform_closed(cls, q, s))
    elif not math.isinf(s):
        out.append(-inf)
    if cls.family == "el" and kind in (BinOp.ADD, BinOp.SUB):
        # the explicit sign prefactor needs a clear sign of x +- y; an
        # exact zero is unambiguous
        t = ordinary(kind, x, y)
        if t != 0:
            out.append(abs(t))
    return tuple(out)


def cutoff_bracket(kind, q: float, x: float, y: float) -> float:
    """Argument of the outer ``[.]_+`` in the closed oel operation.

    The pair ``(x, y)`` lies in the cutoff region of the operation when
    the bracket is not positive.  Zero operands enter through their
    limits, so the axes carry no artificial border.  For multiplication
    the bracket is ``|x|^c + |y|^c - 1`` with ``c = 1 - q``, whose zero
    set is the curve ``|y| = (1 - |x|^c)^(1/c)``.  Returns inf at q = 1.

    >>> round(cutoff_bracket("mul", -1.0, 0.6, 0.8), 12)
    0.0
    >>> cutoff_bracket("mul", 1.0, 0.1, 0.1)
    inf
    """
    kind = BinOp.parse(kind)
    if is_classical(q):
        return inf
    c = 1.0 - q
    if kind in (BinOp.ADD, BinOp.SUB):
        ix = _iel_printed(c, x)
        iy = _iel_printed(c, y)
        s = ix + iy if kind is BinOp.ADD else ix - iy
        if s == 0:
            return inf
        return 1.0 + c * math.log(abs(s))
    ex = xexpm1(_el_log(c, x))
    ey = xexpm1(_el_log(c, y))
    if kind is BinOp.DIV:
        return 1.0 + ex - ey if y != 0 else inf
    return 1.0 + ex + ey


def op_poles(cls, kind, q: float, x: float, y: float) -> tuple[float, ...]:
    """Distance of a division from its pole: ``|o(y)|`` (or ``|y|`` at q = 1),
    where ``o`` is the complement number.  Empty for other operators.
    """
    if BinOp.parse(kind) is not BinOp.DIV:
        return ()
    if is_classical(q):
        return (abs(y),)
    return (abs(deform_closed(D.parse(cls).complement, q, y)),)


def tpow_brackets(cls, q: float, x: float, y: float) -> tuple[float, ...]:
    """Bracket quantities of ``tpow(cls, q, x, y)`` (x > 0)."""
    cls = D.parse(cls)
    if is_classical(q):
        return ()
    other = cls.complement
    a = deform_closed(other, q, x)
    out = list(number_brackets(other, q, x)) + _representable(x, a)
    s = xpow(a, y) if a >= 0 else Undefined("negative base")
    if s == s and not math.isinf(s):
        out.extend(number_brackets(cls, q, s))
    return tuple(out)


def dot_brackets(cls, q: float, x: float, y: float) -> tuple[float, ...]:
    """Bracket quantities of ``dot_mul(cls, q, x, y)``."""
    cls = D.parse(cls)
    if is_classical(q):
        return ()
    other = cls.complement
    b = deform_closed(other, q, y)
    out = list(number_brackets(other, q, y)) + _representable(y, b)
    s = x * b
    if s == s and not math.isinf(s):
        out.extend(number_brackets(cls, q, s))
    return tuple(out)

