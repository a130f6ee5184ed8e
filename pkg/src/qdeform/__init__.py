"""Numerics of the q-logarithm / q-exponential pair and the deformed
arithmetics, calculus and entropies built on it."""

from __future__ import annotations

from . import arith, calc, core, entropy, qnumbers, verify
from .arith import (
    BinOp,
    ElementSet,
    absorbing,
    dot_mul,
    dot_one,
    inv_mul,
    neg,
    neutral_add,
    neutral_mul,
    op,
    op_closed,
    op_rule,
    op_rule2,
    tpow,
)
from .core import (
    QParam,
    Tag,
    Undefined,
    classify,
    exp_q,
    is_undefined,
    ln_q,
    qlog_nonadditivity_residual,
    rel_residual,
    sign,
)
from .qnumbers import (
    DeformClass,
    NumberClass,
    OracleMismatch,
    deform,
    deform2,
    fixed_point_report,
    identity_check,
    undeform,
)

__version__ = "0.1.0"

__all__ = [
    "arith",
    "calc",
    "core",
    "entropy",
    "qnumbers",
    "verify",
    "BinOp",
    "DeformClass",
    "ElementSet",
    "NumberClass",
    "OracleMismatch",
    "QParam",
    "Tag",
    "Undefined",
    "absorbing",
    "classify",
    "deform",
    "deform2",
    "dot_mul",
    "dot_one",
    "exp_q",
    "fixed_point_report",
    "identity_check",
    "inv_mul",
    "is_undefined",
    "ln_q",
    "neg",
    "neutral_add",
    "neutral_mul",
    "op",
    "op_closed",
    "op_rule",
    "op_rule2",
    "qlog_nonadditivity_residual",
    "rel_residual",
    "sign",
    "tpow",
    "undeform",
]
