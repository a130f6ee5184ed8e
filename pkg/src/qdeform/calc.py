"""Deformed calculus: deforming functions, the eight derivatives and the
deformed integrals.

A deformed differential of the class ``cls`` is ``d_cls x = h(cls, q, x) dx``
where ``h`` is the ordinary derivative of the complementary number.  The
linear derivative deforms the independent variable, ``f'(x) / h(x)``; the
nonlinear one deforms the dependent variable, ``h(f(x)) f'(x)``.

Functions are passed as :class:`RealFn`.  When a function carries an exact
derivative it is used; otherwise derivatives are adaptive central
differences starting from the step ``cbrt(eps) * max(1, |x|)``.
"""

from __future__ import annotations

import contextlib
import contextvars
import enum
import math
import sys
import warnings
from dataclasses import dataclass
from typing import Callable

from scipy import integrate

from .core import Undefined, exp_q, is_classical, ln_q, xexp, xlog
from .qnumbers import DeformClass, deform_closed, number_brackets

__all__ = [
    "Counterexample",
    "DerivKind",
    "IntegrationError",
    "Linearity",
    "RealFn",
    "compose",
    "counterexample_nonlinear_integral",
    "d_linear",
    "d_nonlinear",
    "d_nonlinear2",
    "deformed_derivative",
    "derivative",
    "derivative_of_integral_residual",
    "duality_residual",
    "eigenfunction",
    "exp_fn",
    "h",
    "h_prime",
    "identity_fn",
    "int_linear",
    "int_nonlinear",
    "integral_of_derivative_residual",
    "inverse_number_fn",
    "ln_fn",
    "escort_derivative",
    "nobre_dl",
    "nobre_dnl",
    "power_scaled_derivative",
    "number_fn",
    "power_fn",
    "power_rule_check",
    "product",
    "product_rule_check",
    "qexp_fn",
    "qlog_fn",
    "qlog_integral",
    "running_integral",
    "trace_brackets",
]

D = DeformClass

_EPS = sys.float_info.epsilon
_STEP2 = _EPS ** (1.0 / 3.0)
_STEP4 = _EPS ** (1.0 / 5.0)

#: absolute tolerance requested from the quadrature
QUAD_EPSABS = 1e-10
QUAD_LIMIT = 200


class IntegrationError(ArithmeticError):
    """Quadrature could not reach the requested tolerance."""


# -- bracket tracing ---------------------------------------------------------------
# Samplers keep finite differences away from poles and cutoff borders.  While
# a trace is active, every deforming function and deformed number evaluated
# records the quantities whose zeros are its singular points.

_TRACE: contextvars.ContextVar[list | None] = contextvars.ContextVar("calc_trace", default=None)


@contextlib.contextmanager
def trace_brackets():
    """Collect bracket quantities of all ``h`` and number evaluations.

    >>> with trace_brackets() as br:
    ...     _ = h("ole", 2.0, 0.5)
    >>> br
    [0.5]
    """
    out: list[float] = []
    token = _TRACE.set(out)
    try:
        yield out
    finally:
        _TRACE.reset(token)


def _record(values) -> None:
    out = _TRACE.get()
    if out is not None:
        out.extend(values)


def _h_brackets(cls: DeformClass, c: float, x: float) -> tuple[float, ...]:
    if cls is D.OLE:
        return (abs(1.0 + c * x),)
    if cls is D.IEL:
        return (x, 1.0 + c * math.log(x)) if x > 0 else (x,)
    if cls is D.OEL:
        return (x,)
    return ()


# -- functions -------------------------------------------------------------------


@dataclass(frozen=True)
class RealFn:
    """A real function with optional exact first and second derivatives.

    Instances are immutable; the derivative operators never modify them.

    Parameters
    ----------
    f : callable
        ``float -> float``; may return extended reals.
    deriv, deriv2 : callable, optional
        Exact first and second derivatives.
    domain : tuple of float
        Open interval ``(lo, hi)`` on which `f` is meant to be used.
    name : str
    """

    f: Callable[[float], float]
    deriv: Callable[[float], float] | None = None
    deriv2: Callable[[float], float] | None = None
    domain: tuple[float, float] = (-math.inf, math.inf)
    name: str = "f"

    def __call__(self, x: float) -> float:
        return self.f(x)

    def contains(self, x: float) -> bool:
        return self.domain[0] < x < self.domain[1]

    def numeric(self) -> "RealFn":
        """The same function with its exact derivatives dropped."""
        return RealFn(self.f, domain=self.domain, name=self.name)


def _d1(fn: RealFn, x: float) -> float:
    if fn.deriv is not None:
        return fn.deriv(x)
    return _central(fn.f, x)


def _ridders(stencil: Callable[[float], float], h0: float) -> float:
    """Richardson tableau over shrinking steps for a stencil with an even
    error expansion (Ridders' method); returns the estimate with the
    smallest error."""
    con, con2, safe = 1.4, 1.96, 2.0
    hh = h0
    prev = [stencil(hh)]
    best, err = prev[0], math.inf
    for i in range(1, 8):
        hh /= con
        row = [stencil(hh)]
        fac = con2
        for j in range(1, i + 1):
            row.append((row[j - 1] * fac - prev[j - 1]) / (fac - 1.0))
            fac *= con2
            e = max(abs(row[j] - row[j - 1]), abs(row[j] - prev[j - 1]))
            if e <= err:
                err, best = e, row[j]
        if abs(row[i] - prev[i - 1]) >= safe * err:
            break
        prev = row
    return best


def _central(f: Callable[[float], float], x: float) -> float:
    """Adaptive central difference.

    The first step is ``cbrt(eps) * max(1, |x|)`` and steps only shrink,
    so no evaluation lies farther from `x` than that.
    """
    return _ridders(lambda s: (f(x + s) - f(x - s)) / (2.0 * s), _STEP2 * max(1.0, abs(x)))


def _second(f: Callable[[float], float], x: float) -> float:
    """Adaptive second central difference."""
    fx = f(x)
    return _ridders(
        lambda s: (f(x + s) - 2.0 * fx + f(x - s)) / (s * s), _STEP4 * max(1.0, abs(x))
    )


def derivative(fn: RealFn, x: float) -> float:
    """First derivative, exact when available."""
    return _d1(fn, x)


def compose(outer: RealFn, inner: RealFn, name: str | None = None) -> RealFn:
    """``outer(inner(x))`` with chain-rule derivatives when both are exact."""

    def f(x):
        return outer.f(inner.f(x))

    deriv = deriv2 = None
    if outer.deriv is not None and inner.deriv is not None:

        def deriv(x):
            return outer.deriv(inner.f(x)) * inner.deriv(x)

        if outer.deriv2 is not None and inner.deriv2 is not None:

            def deriv2(x):
                u = inner.f(x)
                du = inner.deriv(x)
                return outer.deriv2(u) * du * du + outer.deriv(u) * inner.deriv2(x)

    return RealFn(f, deriv, deriv2, inner.domain, name or f"{outer.name}({inner.name})")


def product(f: RealFn, g: RealFn) -> RealFn:
    """Pointwise product with the Leibniz rule when both derivatives are exact."""
    deriv = None
    if f.deriv is not None and g.deriv is not None:

        def deriv(x):
            return f.deriv(x) * g.f(x) + f.f(x) * g.deriv(x)

    lo = max(f.domain[0], g.domain[0])
    hi = min(f.domain[1], g.domain[1])
    return RealFn(lambda x: f.f(x) * g.f(x), deriv, None, (lo, hi), f"{f.name}*{g.name}")


def identity_fn() -> RealFn:
    return RealFn(lambda x: x, lambda x: 1.0, lambda x: 0.0, name="x")


def power_fn(n: float) -> RealFn:
    """``x ** n`` (x > 0 unless n is a nonnegative integer)."""
    dom = (-math.inf, math.inf) if float(n).is_integer() and n >= 0 else (0.0, math.inf)
    return RealFn(
        lambda x: x**n,
        lambda x: n * x ** (n - 1) if n != 0 else 0.0,
        lambda x: n * (n - 1) * x ** (n - 2) if n not in (0, 1) else 0.0,
        dom,
        f"x^{n:g}",
    )


def exp_fn() -> RealFn:
    return RealFn(xexp, xexp, xexp, name="exp")


def ln_fn() -> RealFn:
    return RealFn(xlog, lambda x: 1.0 / x, lambda x: -1.0 / (x * x), (0.0, math.inf), "ln")


def qexp_fn(q: float) -> RealFn:
    """``exp_q`` with ``d/dx exp_q = exp_q ** q``."""

    def d1(x):
        return exp_q(q, x) ** q

    def d2(x):
        return q * exp_q(q, x) ** (2 * q - 1)

    c = 1.0 - q
    if is_classical(q):
        dom = (-math.inf, math.inf)
    else:
        dom = (-1.0 / c, math.inf) if c > 0 else (-math.inf, -1.0 / c)
    def f(x):
        if _TRACE.get() is not None and not is_classical(q):
            _record((1.0 + c * x,))
        return exp_q(q, x)

    return RealFn(f, d1, d2, dom, f"exp_{q:g}")


def qlog_fn(q: float) -> RealFn:
    """``ln_q`` with ``d/dx ln_q = x ** -q``."""
    return RealFn(
        lambda x: ln_q(q, x),
        lambda x: x ** (-q),
        lambda x: -q * x ** (-q - 1),
        (0.0, math.inf),
        f"ln_{q:g}",
    )


def number_fn(cls, q: float) -> RealFn:
    """The deformed number ``x -> deform(cls, q, x)``.

    Its exact derivative is the deforming function of the complementary
    class.
    """
    cls = D.parse(cls)
    other = cls.complement
    dom = (0.0, math.inf) if cls.family == "el" else (-math.inf, math.inf)

    def f(x):
        if _TRACE.get() is not None:
            _record(number_brackets(cls, q, x))
        return deform_closed(cls, q, x)

    return RealFn(
        f,
        lambda x: h(other, q, x),
        lambda x: h_prime(other, q, x),
        dom,
        f"{cls.value}_{q:g}",
    )


def inverse_number_fn(cls, q: float) -> RealFn:
    """The inverse map of :func:`number_fn`, i.e. the complementary number."""
    return number_fn(D.parse(cls).complement, q)


def eigenfunction(cls, q: float) -> RealFn:
    """``exp`` of the complementary number: the function the linear
    ``cls``-derivative maps to itself.

    For ole this is ``exp_q``.
    """
    return compose(exp_fn(), number_fn(D.parse(cls).complement, q), f"exp({cls})")


# -- deforming functions ---------------------------------------------------------------


def h(cls, q: float, x: float) -> float:
    """Deforming function ``h`` with ``d_cls x = h(x) dx``.

    ile: ``exp((1-q) x)``; ole: ``1 / (1 + (1-q) x)``;
    iel: ``x**-1 (1 + (1-q) ln x)**(q/(1-q))``;
    oel: ``x**-q exp(ln_q x)``.  The el forms need x > 0 and iel needs
    ``1 + (1-q) ln x > 0``.

    >>> h("ole", 0.0, 1.0)
    0.5
    >>> round(h("oel", 0.5, 4.0), 6)
    3.694528
    """
    cls = D.parse(cls)
    x = float(x)
    if x != x:
        return x
    if is_classical(q):
        if cls.family == "el" and not x > 0:
            return Undefined(f"h_{cls.value} requires x > 0")
        return 1.0
    c = 1.0 - q
    if _TRACE.get() is not None:
        _record(_h_brackets(cls, c, x))
    if cls.family == "el" and not x > 0:
        return Undefined(f"h_{cls.value} requires x > 0")
    if cls is D.ILE:
        return xexp(c * x)
    if cls is D.OLE:
        d = 1.0 + c * x
        if d == 0:
            return Undefined("h_ole pole at x = 1/(q-1)")
        return 1.0 / d
    if cls is D.IEL:
        b = 1.0 + c * math.log(x)
        if not b > 0:
            return Undefined("h_iel outside 1 + (1-q) ln x > 0")
        return xexp(q / c * math.log(b) - math.log(x))
    return xexp(ln_q(q, x) - q * math.log(x))


def h_prime(cls, q: float, x: float) -> float:
    """Ordinary derivative of :func:`h`."""
    cls = D.parse(cls)
    v = h(cls, q, x)
    if v != v or is_classical(q):
        return v if v != v else 0.0
    c = 1.0 - q
    if cls is D.ILE:
        return c * v
    if cls is D.OLE:
        return -c * v * v
    if cls is D.IEL:
        b = 1.0 + c * math.log(x)
        return v * (q - b) / (x * b)
    return v * (x ** (-q) - q / x)


# -- derivatives ---------------------------------------------------------------------


class Linearity(str, enum.Enum):
    LINEAR = "linear"
    NONLINEAR = "nonlinear"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class DerivKind:
    """One of the eight deformed derivatives."""

    linearity: Linearity
    cls: DeformClass

    @property
    def eta(self) -> int:
        """Exponent of ``h(1)`` in the entropy collapse: -1 linear, +1 nonlinear."""
        return -1 if self.linearity is Linearity.LINEAR else 1

    @classmethod
    def all(cls) -> list["DerivKind"]:
        return [cls(lin, c) for lin in Linearity for c in DeformClass]

    @classmethod
    def parse(cls, linearity, klass) -> "DerivKind":
        return cls(Linearity(str(linearity).lower()), D.parse(klass))

    def __str__(self) -> str:
        return f"{self.linearity.value}-{self.cls.value}"


def d_linear(cls, q: float, f: RealFn, x: float) -> float:
    """Linear deformed derivative ``f'(x) / h(cls, q, x)``.

    >>> d_linear("ole", 0.0, identity_fn(), 1.0)
    2.0
    """
    hx = h(cls, q, x)
    if hx != hx or hx == 0 or math.isinf(hx):
        return Undefined(f"h_{D.parse(cls).value}({x!r}) is not finite and nonzero")
    return _d1(f, x) / hx


def d_nonlinear(cls, q: float, f: RealFn, x: float) -> float:
    """Nonlinear deformed derivative ``h(cls, q, f(x)) f'(x)``.

    >>> round(d_nonlinear("ole", 0.5, qlog_fn(0.5), 4.0), 12)
    0.25
    """
    return h(cls, q, f(x)) * _d1(f, x)


def deformed_derivative(kind: DerivKind, q: float, f: RealFn, x: float) -> float:
    if kind.linearity is Linearity.LINEAR:
        return d_linear(kind.cls, q, f, x)
    return d_nonlinear(kind.cls, q, f, x)


def d_nonlinear2(cls, q: float, f: RealFn, x: float) -> float:
    """Second nonlinear derivative ``h(f) d/dx[h(f) f']``.

    The inner derivative is expanded by the chain rule,
    ``h'(f) f'**2 + h(f) f''``, using exact derivatives of `f` when present
    and adaptive central differences otherwise.
    """
    cls = D.parse(cls)
    y = f(x)
    hy = h(cls, q, y)
    d1 = _d1(f, x)
    d2 = f.deriv2(x) if f.deriv2 is not None else _second(f.f, x)
    return hy * (h_prime(cls, q, y) * d1 * d1 + hy * d2)


def escort_derivative(q: float, f: RealFn, x: float) -> float:
    """``f(x) ** (1-q) f'(x)``; ``exp_q`` is its eigenfunction."""
    y = f(x)
    if not y > 0:
        return Undefined("requires f(x) > 0")
    return y ** (1.0 - q) * _d1(f, x)


def power_scaled_derivative(q: float, f: RealFn, x: float) -> float:
    """``x ** (q-1) f'(x)``; maps ``ln_q`` to ``1/x``.

    >>> round(power_scaled_derivative(0.3, qlog_fn(0.3), 2.0), 12)
    0.5
    """
    if not x > 0:
        return Undefined("requires x > 0")
    return x ** (q - 1.0) * _d1(f, x)


nobre_dnl = escort_derivative
nobre_dl = power_scaled_derivative


def duality_residual(cls, q: float, f: RealFn, finv: RealFn, x: float) -> float:
    """``|D f(x) * D~ f^-1(f(x)) - 1|``.

    The linear derivative of `f` is the reciprocal of the nonlinear
    derivative of its inverse, taken at the image point.
    """
    a = d_linear(cls, q, f, x)
    b = d_nonlinear(cls, q, finv, f(x))
    return abs(a * b - 1.0)


def power_rule_check(side: str, linearity, q: float, n: int, x: float, family: str | None = None) -> float:
    """Residual of the deformed power rules.

    * linear, i side: ``D_i (o(x)**n) = n o(x)**(n-1)``, o the o-number;
    * linear, o side: ``D_o (i(x)**n) = n i(x)**(n-1)``;
    * nonlinear: ``D~_side (side-number(x**n)) = n x**(n-1)``.

    Derivatives are central differences.  `family` selects le or el; by
    default the larger residual of both is returned.  Residuals are
    relative to ``max(1, |expected|)``.
    """
    if family is None:
        rs = [power_rule_check(side, linearity, q, n, x, fam) for fam in ("le", "el")]
        return max(rs)
    lin = Linearity(str(linearity).lower())
    if side not in ("i", "o"):
        raise ValueError("side must be 'i' or 'o'")
    cls = {("i", "le"): D.ILE, ("o", "le"): D.OLE, ("i", "el"): D.IEL, ("o", "el"): D.OEL}[(side, family)]
    other = cls.complement
    if lin is Linearity.LINEAR:
        base = number_fn(other, q).numeric()
        fn = RealFn(lambda t: base(t) ** n, name="power")
        got = d_linear(cls, q, fn, x)
        expected = n * base(x) ** (n - 1)
    else:
        own = number_fn(cls, q).numeric()
        fn = RealFn(lambda t: own(t**n), name="power")
        got = d_nonlinear(cls, q, fn, x)
        expected = n * x ** (n - 1)
    if got != got or expected != expected:
        return Undefined("outside the class domain")
    return abs(got - expected) / max(1.0, abs(expected))


def product_rule_check(linearity, cls, q: float, f: RealFn, g: RealFn, x: float) -> float:
    """Residual of the product rule, relative to ``max(1, |lhs|)``.

    Linear: ``D(fg) = D f g + f D g``.  Nonlinear:
    ``D~(fg)/h(fg) = (D~f/h(f)) g + f (D~g/h(g))``.  The product is
    differentiated numerically.
    """
    lin = Linearity(str(linearity).lower())
    fg = product(f, g).numeric()
    fx, gx = f(x), g(x)
    if lin is Linearity.LINEAR:
        lhs = d_linear(cls, q, fg, x)
        rhs = d_linear(cls, q, f, x) * gx + fx * d_linear(cls, q, g, x)
    else:
        lhs = d_nonlinear(cls, q, fg, x) / h(cls, q, fx * gx)
        rhs = d_nonlinear(cls, q, f, x) / h(cls, q, fx) * gx + fx * (
            d_nonlinear(cls, q, g, x) / h(cls, q, gx)
        )
    if lhs != lhs or rhs != rhs:
        return Undefined("outside the class domain")
    return abs(lhs - rhs) / max(1.0, abs(lhs))


# -- integrals ---------------------------------------------------------------------


def _quad(g: Callable[[float], float], a: float, b: float, epsabs: float = QUAD_EPSABS) -> float:
    if a == b:
        return 0.0
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        val, err = integrate.quad(g, a, b, epsabs=epsabs, epsrel=1e-13, limit=QUAD_LIMIT)
    trouble = [w for w in caught if issubclass(w.category, integrate.IntegrationWarning)]
    if trouble or not math.isfinite(val) or err > max(epsabs, 1e-10 * abs(val)):
        raise IntegrationError(f"quadrature on [{a!r}, {b!r}] did not converge (err={err:.3g})")
    return val


def _guarded(g: Callable[[float], float], a: float, b: float) -> float:
    try:
        return _quad(g, a, b)
    except IntegrationError as e:
        return Undefined(str(e))


def int_linear(cls, q: float, f: RealFn, a: float, b: float) -> float:
    """Linear deformed integral ``int_a^b f(t) h(cls, q, t) dt``.

    Returns an undefined value when the quadrature does not converge.

    >>> round(int_linear("ile", 0.0, RealFn(lambda t: 1.0), 0.0, 1.0), 12) == round(math.e - 1, 12)
    True
    """
    return _guarded(lambda t: f(t) * h(cls, q, t), a, b)


def int_nonlinear(cls, q: float, f: RealFn, a: float, b: float) -> float:
    """Nonlinear deformed integral ``int_a^b f(t) / h(cls, q, f(t)) dt``.

    Its derivative is not the inverse of the nonlinear derivative; see
    :func:`counterexample_nonlinear_integral`.
    """
    return _guarded(lambda t: f(t) / h(cls, q, f(t)), a, b)


def qlog_integral(q: float, x: float) -> float:
    """``int_1^x t**-q dt``, which equals ``ln_q x``.

    >>> round(qlog_integral(0.5, 4.0), 10)
    2.0
    """
    if not x > 0:
        return Undefined("requires x > 0")
    return _guarded(lambda t: t ** (-q), 1.0, x)


def running_integral(linearity, cls, q: float, f: RealFn, a: float) -> RealFn:
    """``x -> int_a^x`` of the linear or nonlinear integrand, as a
    :class:`RealFn` without exact derivative.

    Its derivative is a symmetric difference quotient extrapolated over
    shrinking steps.  The difference ``F(x+s) - F(x-s)`` is evaluated as
    one short integral over ``[x-s, x+s]``, so it carries no cancellation
    between two long quadratures.
    """
    lin = Linearity(str(linearity).lower())
    integral = int_linear if lin is Linearity.LINEAR else int_nonlinear

    def F(x):
        return integral(cls, q, f, a, x)

    def dF(x):
        return _ridders(lambda s: integral(cls, q, f, x - s, x + s) / (2.0 * s), 1e-3 * max(1.0, abs(x)))

    return RealFn(F, dF, name=f"int_{lin.value}_{D.parse(cls).value}")


def derivative_of_integral_residual(linearity, cls, q: float, f: RealFn, a: float, x: float) -> float:
    """``|D (int_a^x f) - f(x)|`` with the matching (linear or nonlinear)
    derivative and integral, relative to ``max(1, |f(x)|)``."""
    lin = Linearity(str(linearity).lower())
    F = running_integral(lin, cls, q, f, a)
    if lin is Linearity.LINEAR:
        v = d_linear(cls, q, F, x)
    else:
        v = d_nonlinear(cls, q, F, x)
    fx = f(x)
    return abs(v - fx) / max(1.0, abs(fx))


def integral_of_derivative_residual(linearity, cls, q: float, f: RealFn, a: float, x: float) -> float:
    """``|int_a^x (D f) - (f(x) - f(a))|`` with matching derivative and
    integral, relative to ``max(1, |f(x) - f(a)|)``."""
    lin = Linearity(str(linearity).lower())
    if lin is Linearity.LINEAR:
        Df = RealFn(lambda t: d_linear(cls, q, f, t))
        v = int_linear(cls, q, Df, a, x)
    else:
        Df = RealFn(lambda t: d_nonlinear(cls, q, f, t))
        v = int_nonlinear(cls, q, Df, a, x)
    diff = f(x) - f(a)
    return abs(v - diff) / max(1.0, abs(diff))


@dataclass(frozen=True)
class Counterexample:
    cls: str
    q: float
    function: str
    a: float
    x: float
    derivative_of_integral: float
    integral_of_derivative: float

    @property
    def residual(self) -> float:
        return max(self.derivative_of_integral, self.integral_of_derivative)


def counterexample_nonlinear_integral(
    cls="ole", q: float = 0.5, a: float = 0.0, x: float = 1.0
) -> Counterexample:
    """Evaluate both fundamental-theorem residuals of the nonlinear integral
    for ``f = exp_q``.

    At the default point both residuals are far above quadrature error,
    showing that the nonlinear integral does not invert the nonlinear
    derivative.
    """
    f = qexp_fn(q)
    return Counterexample(
        D.parse(cls).value,
        q,
        f.name,
        a,
        x,
        derivative_of_integral_residual(Linearity.NONLINEAR, cls, q, f, a, x),
        integral_of_derivative_residual(Linearity.NONLINEAR, cls, q, f, a, x),
    )
