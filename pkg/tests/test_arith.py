from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qdeform.arith import (
    BinOp,
    ElementSet,
    absorbing,
    cutoff_bracket,
    dot_mul,
    dot_one,
    inv_mul,
    neg,
    neutral_add,
    neutral_mul,
    op_brackets,
    op_closed,
    op_poles,
    op_rule,
    op_rule2,
    ordinary,
    printed_sign_disagrees,
    tpow,
    tpow_brackets,
)
from qdeform.core import exp_q, is_undefined, ln_q, rel_residual
from qdeform.qnumbers import DeformClass

CLASSES = [c.value for c in DeformClass]
KINDS = [k.value for k in BinOp]
E = math.e

# 40-digit mpmath evaluation of the generating rule
FROZEN = [
    ("ile", "add", 0.5, 0.7, 0.4, 0.98996594627077022194),
    ("ile", "div", 2.5, 0.3, 0.2, math.inf),
    ("ole", "mul", 0.5, 0.7, 0.4, 0.23128634068087737343),
    ("ole", "div", -1.0, 1.3, 0.6, 12.385054634013444745),
    ("iel", "add", 0.5, 0.7, 0.4, 0.96897883923095363297),
    ("iel", "mul", 0.5, 0.7, 0.4, 0.32970508592646352547),
    ("iel", "div", 2.5, 0.3, 0.2, 1.1260995686396674187),
    ("oel", "add", 0.5, 0.7, 0.4, 1.1913385930109309471),
    ("oel", "sub", -1.0, 1.3, 0.6, 0.49576279059205533165),
    ("oel", "mul", 2.5, 0.3, 0.2, 0.15576751366502857329),
    ("oel", "div", 0.5, 0.7, 0.4, 1.4501084645749630208),
]


def safe(cls, kind, q, x, y, collar=1e-6, pole=1e-2):
    br = op_brackets(cls, kind, q, x, y)
    return all(b > collar for b in br) and all(p > pole for p in op_poles(cls, kind, q, x, y))


class TestBinOp:
    def test_parse(self):
        assert BinOp.parse("MUL") is BinOp.MUL
        assert str(BinOp.DIV) == "div"
        with pytest.raises(ValueError):
            BinOp.parse("pow")

    def test_ordinary(self):
        assert ordinary("sub", 2.0, 5.0) == -3.0
        assert is_undefined(ordinary("div", 1.0, 0.0))


class TestOperators:
    @pytest.mark.parametrize("cls, kind, q, x, y, expected", FROZEN)
    def test_frozen(self, cls, kind, q, x, y, expected):
        assert op_closed(cls, kind, q, x, y) == pytest.approx(expected, rel=1e-13)
        assert op_rule(cls, kind, q, x, y) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize(
        "cls, kind, q, x, y, expected",
        [
            ("ole", "add", 0.5, 1.0, 1.0, 2.5),
            ("oel", "mul", 0.5, 4.0, 9.0, 16.0),
            ("ile", "add", 1.0, 2.0, 3.0, 5.0),
            ("ole", "sub", 0.0, 3.0, 1.0, 1.0),
            ("oel", "div", 0.5, 16.0, 9.0, 4.0),
            ("ile", "add", 0.0, math.log(2), math.log(2), math.log(3)),
            ("oel", "mul", -1.0, 0.3, 0.3, 0.0),
        ],
    )
    def test_examples(self, cls, kind, q, x, y, expected):
        assert op_closed(cls, kind, q, x, y) == pytest.approx(expected, abs=1e-12)
        assert op_rule(cls, kind, q, x, y) == pytest.approx(expected, abs=1e-12)

    def test_ole_sub_pole(self):
        assert is_undefined(op_closed("ole", "sub", 3.0, 1.0, 0.5))

    def test_division_by_zero(self):
        for cls in CLASSES:
            assert is_undefined(op_closed(cls, "div", 0.5, 1.0, 0.0))

    @pytest.mark.parametrize("cls", CLASSES)
    @pytest.mark.parametrize("kind", KINDS)
    def test_classical(self, cls, kind):
        assert op_closed(cls, kind, 1.0, 3.0, 1.5) == ordinary(kind, 3.0, 1.5)

    def test_nan_propagates(self):
        assert is_undefined(op_closed("ole", "add", 0.5, math.nan, 1.0))

    @pytest.mark.parametrize("cls", CLASSES)
    @pytest.mark.parametrize("kind", KINDS)
    @given(q=st.floats(-2, 3), x=st.floats(-3, 3), y=st.floats(-3, 3))
    @settings(max_examples=150)
    def test_closed_matches_rule(self, cls, kind, q, x, y):
        assume(safe(cls, kind, q, x, y))
        a = op_closed(cls, kind, q, x, y)
        b = op_rule(cls, kind, q, x, y)
        assume(math.isfinite(a) and math.isfinite(b))
        assert rel_residual(a, b) <= 1e-11


class TestPrintedSign:
    def test_le_never(self):
        assert not printed_sign_disagrees("ole", "add", 0.5, 1.0, -2.0)

    def test_inside_oel_cutoff(self):
        # both o-numbers are 0, so the rule needs the iel-number of 0
        q, x, y = -1.0, 0.5, -0.4
        assert printed_sign_disagrees("iel", "add", q, x, y)
        assert is_undefined(op_rule("iel", "add", q, x, y))
        assert op_closed("iel", "add", q, x, y) == pytest.approx(math.exp(-0.5))

    @given(q=st.floats(-2, 3), x=st.floats(-3, 3), y=st.floats(-3, 3))
    def test_agrees_off_cutoff(self, q, x, y):
        for cls in ("iel", "oel"):
            if printed_sign_disagrees(cls, "add", q, x, y):
                assert not safe(cls, "add", q, x, y)


class TestElements:
    @pytest.mark.parametrize(
        "cls, q, y, expected", [("ole", 0.0, 1.0, -0.5), ("iel", 1.0, 4.0, -4.0)]
    )
    def test_neg_examples(self, cls, q, y, expected):
        assert neg(cls, q, y) == expected

    def test_neg_nonexistent(self):
        assert is_undefined(neg("oel", 0.5, 1.0))
        assert is_undefined(neg("ile", 0.5, 3.0))
        assert is_undefined(neg("ole", 3.0, 0.5))

    @pytest.mark.parametrize("cls", CLASSES)
    def test_neg_gives_neutral(self, cls):
        rng = np.random.default_rng(11)
        for _ in range(500):
            q = rng.uniform(-2, 3)
            y = rng.uniform(-2, 2)
            z = neg(cls, q, y)
            if is_undefined(z) or not safe(cls, "add", q, y, z):
                continue
            n = neutral_add(cls, q)
            s = op_closed(cls, "add", q, y, z)
            if isinstance(n, ElementSet):
                assert -1e-12 <= abs(s) <= n.hi + 1e-12
            else:
                assert abs(s - n) <= 1e-10 * max(1.0, abs(y))

    def test_sub_is_add_of_neg(self):
        rng = np.random.default_rng(12)
        n = 0
        for cls in ("ile", "ole", "iel", "oel"):
            for _ in range(500):
                q = rng.uniform(-2, 3)
                x, y = rng.uniform(-2, 2, 2)
                z = neg(cls, q, y)
                if is_undefined(z) or not safe(cls, "sub", q, x, y) or not safe(cls, "add", q, x, z):
                    continue
                a = op_closed(cls, "sub", q, x, y)
                b = op_closed(cls, "add", q, x, z)
                if math.isfinite(a) and math.isfinite(b):
                    assert rel_residual(a, b) <= 1e-10
                    n += 1
        assert n > 500

    def test_neutral_add(self):
        assert neutral_add("ole", 3.0) == 0.0
        s = neutral_add("iel", 0.5)
        assert isinstance(s, ElementSet) and 0.0 in s and s.hi == pytest.approx(math.exp(-2))
        assert is_undefined(neutral_add("oel", 0.5))
        # every element of the iel interval is neutral
        for n in (0.0, 0.1, -0.13):
            assert op_closed("iel", "add", 0.5, 1.7, n) == pytest.approx(1.7, rel=1e-14)

    def test_neutral_mul(self):
        assert neutral_mul("ile", 0.5) == pytest.approx(2 * math.log(1.5), rel=1e-15)
        assert is_undefined(neutral_mul("ile", 2.5))
        assert neutral_mul("oel", 0.5) == 1.0
        for cls in ("ile", "ole", "iel", "oel"):
            for q in (-1.0, 0.5, 1.5):
                one = neutral_mul(cls, q)
                assert op_closed(cls, "mul", q, 0.8, one) == pytest.approx(0.8, rel=1e-12)

    @pytest.mark.parametrize("cls", ["ile", "ole", "iel"])
    @pytest.mark.parametrize("q", [-1.0, 0.5, 2.0])
    def test_absorbing_equals_additive_neutral(self, cls, q):
        z = absorbing(cls, q)
        assert z == neutral_add(cls, q) or (
            isinstance(z, ElementSet) and z.hi == neutral_add(cls, q).hi
        )
        zero = z.value if isinstance(z, ElementSet) else z
        if cls == "iel" and q < 1:
            zero = z.hi / 2
        v = op_closed(cls, "mul", q, 0.7, zero)
        assert abs(v) <= (z.hi if isinstance(z, ElementSet) else 0.0) + 1e-15

    @pytest.mark.parametrize("x", [-1.38, -0.4, 0.4, 2.0])
    def test_iel_zero_factor_above_one(self, x):
        assert op_closed("iel", "mul", 1.18, x, 0.0) == 0.0
        assert op_closed("iel", "mul", 1.18, 0.0, x) == 0.0

    def test_oel_absorbing_is_conditional(self):
        q, c = 0.5, 0.5
        z = absorbing("oel", q)
        assert isinstance(z, ElementSet) and "|x| < 1" in z.condition
        assert absorbing("oel", 2.0) == 0.0
        # y -> 0+ limit of x (x) y is [|x|^c - 1]_+^(1/c)
        tiny = 1e-300
        assert op_closed("oel", "mul", q, 0.6, tiny) == 0.0
        lim = op_closed("oel", "mul", q, 3.0, tiny)
        assert lim == pytest.approx((3.0**c - 1.0) ** (1 / c), rel=1e-12)
        assert lim > 0.5
        # and the rule has no value at y = 0 for q < 1
        assert is_undefined(op_rule("oel", "mul", q, 3.0, 0.0))

    def test_inv_mul(self):
        assert inv_mul("oel", 0.5, 4.0) == 0.0
        assert inv_mul("oel", 1.0, 4.0) == 0.25
        assert inv_mul("oel", 0.5, 1e-300) == pytest.approx(4.0, rel=1e-12)
        assert is_undefined(inv_mul("ile", 2.5, 1.0))
        # closed form sign(y) [2 - |y|^c]_+^(1/c)
        for q, y in [(0.5, 2.0), (0.5, -3.0), (2.0, 3.0), (-1.0, 1.2)]:
            c = 1 - q
            expected = math.copysign(max(2 - abs(y) ** c, 0.0) ** (1 / c), y)
            assert inv_mul("oel", q, y) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("cls", CLASSES)
    def test_inv_mul_gives_neutral(self, cls):
        for q in (-1.0, 0.5, 1.5):
            y = 0.9
            r = op_closed(cls, "mul", q, y, inv_mul(cls, q, y))
            assert r == pytest.approx(neutral_mul(cls, q), rel=1e-10)


class TestPowers:
    @pytest.mark.parametrize(
        "cls, q, x, y, expected",
        [
            ("oel", 0.5, 4.0, 3.0, 16.0),
            ("iel", 2.0, 2.5, 1.0, 2.5),
            # past the oel-number divergence x >= e^(1/(q-1)) the power saturates
            ("iel", 2.0, 5.0, 1.0, E),
            ("ile", 0.5, 3.0, 0.0, 2 * math.log(1.5)),
        ],
    )
    def test_examples(self, cls, q, x, y, expected):
        assert tpow(cls, q, x, y) == pytest.approx(expected, abs=1e-12)

    def test_oel_power_is_qexp_form(self):
        for q in (-1.0, 0.5, 2.0):
            for x, y in [(4.0, 3.0), (0.5, 2.5), (2.0, 0.3)]:
                assert tpow("oel", q, x, y) == pytest.approx(exp_q(q, y * ln_q(q, x)), rel=1e-12)

    def test_negative_base(self):
        assert is_undefined(tpow("ole", 0.5, -1.0, 2.0))

    @pytest.mark.parametrize("cls", CLASSES)
    @pytest.mark.parametrize("q", [-1.0, 0.5, 1.5, 2.5])
    @pytest.mark.parametrize("x", [0.3, 0.9, 1.7])
    def test_repeated_product(self, cls, q, x):
        acc = neutral_mul(cls, q)
        if is_undefined(acc):
            pytest.skip("no multiplicative neutral")
        for n in range(4):
            p = tpow(cls, q, x, float(n))
            if math.isfinite(acc) and math.isfinite(p):
                assert rel_residual(p, acc) <= 1e-10
            acc = op_closed(cls, "mul", q, acc, x)

    @pytest.mark.parametrize("cls", CLASSES)
    def test_right_distributive(self, cls):
        rng = np.random.default_rng(13)
        n = 0
        for _ in range(1000):
            q = rng.uniform(-2, 3)
            x, y = rng.uniform(0.2, 2.0, 2)
            z = rng.uniform(0.0, 3.0)
            if not safe(cls, "mul", q, x, y):
                continue
            xy = op_closed(cls, "mul", q, x, y)
            br = tpow_brackets(cls, q, x, z) + tpow_brackets(cls, q, y, z)
            if not (xy > 0 and all(b > 1e-6 for b in br + tpow_brackets(cls, q, xy, z))):
                continue
            xz, yz = tpow(cls, q, x, z), tpow(cls, q, y, z)
            if not safe(cls, "mul", q, xz, yz):
                continue
            a = tpow(cls, q, xy, z)
            b = op_closed(cls, "mul", q, xz, yz)
            if math.isfinite(a) and math.isfinite(b):
                assert rel_residual(a, b) <= 1e-10
                n += 1
        assert n > 200


class TestDotMul:
    def test_examples(self):
        assert dot_mul("ole", 0.0, 3.0, 1.0) == pytest.approx(7.0, abs=1e-12)
        assert dot_mul("iel", 0.0, 2.0, 3.0) == pytest.approx(9 * E, rel=1e-14)
        for cls in CLASSES:
            for q, y in [(-1.0, math.pi), (0.5, math.pi), (2.0, 0.3), (2.0, -math.pi)]:
                assert dot_mul(cls, q, 1.0, y) == pytest.approx(y, rel=1e-14)
        # beyond the ile divergence y >= 1/(q-1) the ole-sum saturates
        assert dot_mul("ole", 2.0, 1.0, math.pi) == 1.0

    def test_q_analog(self):
        for q in (-1.0, 0.0, 0.5):
            big_q = 2 - q
            for n in range(1, 6):
                assert dot_mul("ole", q, n, 1.0) == pytest.approx(
                    (big_q**n - 1) / (big_q - 1), rel=1e-14
                )

    def test_el_requires_positive_multiplier(self):
        assert is_undefined(dot_mul("iel", 0.5, 0.0, 1.0))
        assert is_undefined(dot_mul("oel", 0.5, -1.0, 1.0))

    @pytest.mark.parametrize("cls", CLASSES)
    @pytest.mark.parametrize("q", [-1.0, 0.5, 1.5, 2.5])
    @pytest.mark.parametrize("y", [-0.8, 0.4, 1.3])
    def test_repeated_sum(self, cls, q, y):
        acc = y
        for n in range(2, 5):
            acc = op_closed(cls, "add", q, acc, y)
            d = dot_mul(cls, q, float(n), y)
            if math.isfinite(acc) and math.isfinite(d) and safe(cls, "add", q, acc, y):
                assert rel_residual(d, acc) <= 1e-10

    def test_not_commutative(self):
        assert dot_mul("ole", 0.5, 2.0, 3.0) != dot_mul("ole", 0.5, 3.0, 2.0)

    def test_dot_one(self):
        assert dot_one("iel", 2.0, E) == pytest.approx(math.exp(1 - 1 / E), rel=1e-15)
        assert dot_one("oel", 0.0, E**2) == pytest.approx(3.0, rel=1e-15)
        for cls in CLASSES:
            assert dot_one(cls, 1.0, 5.0) == 5.0
            for q in (-1.0, 0.5, 2.0):
                assert dot_one(cls, q, 2.0) == pytest.approx(dot_mul(cls, q, 2.0, 1.0), rel=1e-12)


class TestOelCutoff:
    @pytest.mark.parametrize("q", [-1.0, 0.0, 0.5])
    def test_border_maps_to_zero(self, q):
        c = 1 - q
        for x in np.linspace(0.05, 0.95, 19):
            y = (1 - x**c) ** (1 / c)
            assert abs(op_closed("oel", "mul", q, x, y)) <= 1e-7
            assert op_closed("oel", "mul", q, x, 0.99 * y) == 0.0
            assert op_closed("oel", "mul", q, x, min(1.01 * y, 1.0)) > 0.0

    def test_no_cutoff_at_q1(self):
        assert op_closed("oel", "mul", 1.0, 0.3, 0.3) == pytest.approx(0.09)

    @pytest.mark.parametrize("q", [-1.0, 0.5, 2.0, 3.0])
    def test_bracket_sign_matches_closed_form(self, q):
        rng = np.random.default_rng(17)
        for x, y in rng.uniform(-3, 3, size=(300, 2)):
            b = cutoff_bracket("mul", q, x, y)
            if abs(b) < 1e-9:
                continue
            v = op_closed("oel", "mul", q, x, y)
            if q < 1:
                assert (b <= 0) == (v == 0.0)
            else:
                assert (b <= 0) == (not math.isfinite(v))

    @pytest.mark.parametrize("q", [-1.0, 3.0])
    def test_bracket_on_axes_follows_limit(self, q):
        # |x|^c + |y|^c - 1 with x -> 0
        c = 1 - q
        expected = 0.5**c - 1 if c > 0 else math.inf
        assert cutoff_bracket("mul", q, 0.0, 0.5) == pytest.approx(expected)

    @pytest.mark.parametrize("kind", ["add", "sub", "mul", "div"])
    def test_bracket_classical(self, kind):
        assert cutoff_bracket(kind, 1.0, 0.3, -0.2) == math.inf

    def test_add_bracket_sign(self):
        # q < 1: a cut-off sum is 0
        for x, y in [(0.2, 0.1), (0.6, 0.7), (-0.3, 0.1)]:
            b = cutoff_bracket("add", 0.5, x, y)
            assert (b <= 0) == (op_closed("oel", "add", 0.5, x, y) == 0.0)


class TestTwoParameter:
    def test_examples(self):
        assert op_rule2(1.0, 1.0, "add", 2.0, 3.0) == 5.0
        assert op_rule2(0.5, 1.0, "add", 1.0, 1.0) == pytest.approx(2.5, rel=1e-15)

    @given(q=st.floats(-2, 3), x=st.floats(-2, 2), y=st.floats(-2, 2))
    def test_collapse_to_one_parameter(self, q, x, y):
        for kind in ("add", "mul"):
            a = op_rule2(q, 1.0, kind, x, y)
            b = op_rule("ole", kind, q, x, y)
            if math.isfinite(a) and math.isfinite(b) and safe("ole", kind, q, x, y):
                assert rel_residual(a, b) <= 1e-10

    def test_round_trip(self):
        # with q2 = q the inner and outer maps are mutual inverses
        for q in (0.5, 2.0):
            for kind in ("add", "mul"):
                assert op_rule2(q, q, kind, 0.5, 0.3) == pytest.approx(ordinary(kind, 0.5, 0.3))
