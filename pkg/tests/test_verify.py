from __future__ import annotations

import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdeform.core import Undefined
from qdeform.qnumbers import number_brackets
from qdeform.verify import (
    MAX_COUNTEREXAMPLES,
    Law,
    LawReport,
    SampleDomain,
    Sampler,
    _rng,
    arith_laws,
    calculus_laws,
    calculus_suite,
    differential_test,
    entropy_laws,
    law_suite,
    number_laws,
    run_law,
    run_suite,
    suite_laws,
    to_jsonable,
)

CLASSES = ["ile", "ole", "iel", "oel"]
OPS = ["add", "sub", "mul", "div"]
SMALL = SampleDomain(count=200, seed=11)
Q1 = SampleDomain(q_range=(1.0, 1.0), count=200, seed=5)


def _accounted(rep: LawReport) -> bool:
    return rep.samples == rep.passes + rep.failures + rep.skips


def _law_by_id(laws, law_id):
    return next(law for law in laws if law.id == law_id)


class TestSampleDomain:
    def test_defaults(self):
        d = SampleDomain()
        assert d.exclusion == 1e-6
        assert d.q_range == (-2.0, 3.0)

    @pytest.mark.parametrize(
        "kw",
        [
            {"q_range": (2.0, 1.0)},
            {"x_range": (0.0, math.inf)},
            {"calc_x_range": (0.0, 1.0)},
            {"count": 0},
        ],
    )
    def test_rejects_invalid(self, kw):
        with pytest.raises(ValueError):
            SampleDomain(**kw)

    def test_replace(self):
        d = SMALL.replace(seed=3)
        assert d.seed == 3 and d.count == SMALL.count

    def test_fixed_q(self):
        s = Sampler(_rng(0, "law"), Q1)
        assert all(s.q() == 1.0 for _ in range(10))


class TestSampler:
    def test_same_seed_same_sequence(self):
        a = Sampler(_rng(4, "x.law"), SMALL)
        b = Sampler(_rng(4, "x.law"), SMALL)
        assert [a.x() for _ in range(20)] == [b.x() for _ in range(20)]

    def test_streams_differ_by_law_and_seed(self):
        base = [Sampler(_rng(4, "x.law"), SMALL).x() for _ in range(1)]
        assert base != [Sampler(_rng(4, "y.law"), SMALL).x()]
        assert base != [Sampler(_rng(5, "x.law"), SMALL).x()]

    def test_draws_stay_in_range(self):
        d = SampleDomain(x_range=(-0.5, 2.0), calc_x_range=(0.3, 0.4))
        s = Sampler(_rng(1, "r"), d)
        for _ in range(200):
            assert -0.5 <= s.x() <= 2.0
            assert 0.0 <= s.pos() <= 2.0
            assert 0.3 <= s.cx() <= 0.4
            assert 2 <= s.integer(2, 4) <= 4

    @pytest.mark.parametrize("cls", CLASSES)
    def test_operands_clear_the_collar(self, cls):
        d = SampleDomain(exclusion=1e-3)
        s = Sampler(_rng(2, "op"), d)
        for _ in range(300):
            q = s.q()
            x = s.operand(cls, q)
            assert all(b > 1e-3 for b in number_brackets(cls, q, x))

    def test_distribution_is_normalized(self):
        s = Sampler(_rng(1, "d"), SMALL)
        for _ in range(50):
            dist = s.dist(floor=1e-3)
            assert math.fsum(dist.probs) == pytest.approx(1.0, abs=1e-15)
            assert min(dist.probs) > 0


class TestToJsonable:
    def test_tokens(self):
        out = to_jsonable({"a": math.inf, "b": -math.inf, "c": Undefined("x"), "d": (1.5, math.nan)})
        assert out == {"a": "inf", "b": "-inf", "c": "undefined", "d": [1.5, "undefined"]}

    def test_dumps_strictly(self):
        json.dumps(to_jsonable([math.inf, math.nan]), allow_nan=False)


class TestRunLaw:
    def test_skip_accounting(self):
        def check(p, q, x):
            p.need(x > 0, "negative")
            return x, x + (1.0 if x > 2 else 0.0)

        law = Law("t.mixed", lambda s: {"q": 1.0, "x": s.x()}, check, 1e-12)
        rep = run_law(law, SMALL)
        assert rep.samples == SMALL.count
        assert _accounted(rep)
        assert rep.skips > 0 and rep.failures > 0 and rep.passes > 0
        assert rep.skip_reasons == {"negative": rep.skips}
        assert len(rep.counterexamples) == MAX_COUNTEREXAMPLES
        assert not rep.passed

    def test_counterexample_fields(self):
        law = Law("t.off", lambda s: {"q": 1.0, "x": s.x()}, lambda p, q, x: (x, x + 3.0), 1e-12)
        ce = run_law(law, SMALL).counterexamples[0]
        assert set(ce) == {"index", "inputs", "lhs", "rhs", "residual"}
        assert ce["rhs"] - ce["lhs"] == pytest.approx(3.0)

    def test_undefined_and_infinite_are_skips(self):
        law = Law("t.nan", None, lambda p, q, v: (v, 0.0), 0.0, cases=({"q": 1.0, "v": Undefined("r")}, {"q": 1.0, "v": math.inf}))
        rep = run_law(law, SMALL)
        assert rep.skips == 2 and rep.passes == 0
        assert rep.passed

    def test_expected_counterexample(self):
        ok = Law("t.exp", None, lambda p, q: 1.0, 0.1, expected_counterexample=True, cases=({"q": 1.0},))
        bad = Law("t.exp", None, lambda p, q: 0.0, 0.1, expected_counterexample=True, cases=({"q": 1.0},))
        assert run_law(ok, SMALL).passed
        assert not run_law(bad, SMALL).passed

    def test_cases_run_before_draws(self):
        seen = []

        def check(p, q, x):
            seen.append(x)
            return 0.0

        law = Law("t.cases", lambda s: {"q": 1.0, "x": 0.25}, check, 0.0, cases=({"q": 1.0, "x": 9.0},))
        rep = run_law(law, SampleDomain(count=3))
        assert seen == [9.0, 0.25, 0.25, 0.25]
        assert rep.samples == 4

    def test_cost_divides_count(self):
        law = Law("t.cost", lambda s: {"q": 1.0}, lambda p, q: 0.0, 0.0, cost=8)
        assert run_law(law, SampleDomain(count=80)).samples == 10


class TestReportInvariants:
    @pytest.mark.parametrize("cls", CLASSES)
    def test_counterexamples_empty_iff_within_tolerance(self, cls):
        for rep in law_suite(cls, SMALL):
            assert _accounted(rep)
            assert (not rep.counterexamples) == (rep.max_residual <= rep.tolerance)

    def test_serialization_is_deterministic(self):
        laws = arith_laws("oel")[:6] + number_laws()[:2]
        a = run_suite("arith", laws, SMALL).to_json()
        b = run_suite("arith", laws, SMALL).to_json()
        assert a == b
        assert json.loads(a)["suite"] == "arith"

    def test_json_keys_sorted(self):
        text = run_suite("x", arith_laws("ile")[:2], SMALL).to_json()
        law = json.loads(text)["laws"][0]
        assert list(law) == sorted(law)

    def test_seed_changes_report(self):
        laws = arith_laws("ole")[:1]
        a = run_suite("a", laws, SMALL).to_json()
        b = run_suite("a", laws, SMALL.replace(seed=12)).to_json()
        assert a != b

    @settings(max_examples=10, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_any_seed_accounts(self, seed):
        rep = differential_test("oel", "mul", SampleDomain(count=50, seed=seed))
        assert _accounted(rep)


class TestDifferential:
    @pytest.mark.parametrize("cls", CLASSES)
    @pytest.mark.parametrize("kind", OPS)
    def test_within_tolerance(self, cls, kind):
        rep = differential_test(cls, kind, SMALL)
        assert rep.passed and rep.max_residual <= 1e-11
        assert rep.law == f"{cls}.rule_vs_closed.{kind}"

    def test_ole_add_default(self):
        rep = differential_test("ole", "add")
        assert rep.samples == 1000 and rep.max_residual <= 1e-11

    def test_oel_mul_skips_below_one(self):
        rep = differential_test("oel", "mul", SampleDomain(q_range=(-2.0, 0.9), seed=2))
        assert rep.max_residual <= 1e-11
        assert rep.skips > 0
        assert any("collar" in k for k in rep.skip_reasons)

    @pytest.mark.parametrize("cls", CLASSES)
    def test_classical_slice(self, cls):
        for kind in OPS:
            rep = differential_test(cls, kind, Q1)
            assert rep.max_residual <= 1e-12


class TestLawSuite:
    EXPECTED = {
        "commutative_add",
        "commutative_mul",
        "associative_add",
        "associative_mul",
        "distributive",
        "sub_is_add_of_opposite",
        "opposite",
        "add_neutral",
        "mul_neutral",
        "mul_absorbing",
        "mul_inverse",
        "div_is_mul_of_inverse",
        "power_right_distributive",
        "power_is_repeated_mul",
        "dot_is_repeated_add",
    }

    def test_law_list(self):
        ids = {law.id.split(".", 1)[1] for law in arith_laws("ile")}
        assert self.EXPECTED <= ids

    @pytest.mark.parametrize("cls", CLASSES)
    def test_all_pass(self, cls):
        reps = law_suite(cls, SMALL)
        assert all(r.passed for r in reps), [(r.law, r.max_residual) for r in reps if not r.passed]

    def test_every_law_tests_something(self):
        for rep in law_suite("iel", SampleDomain(count=400, seed=1)):
            assert rep.passes > 0, rep.law

    def test_oel_distributive_skips_below_one(self):
        d = SampleDomain(q_range=(-1.0, 0.9), count=300, seed=3)
        rep = run_law(_law_by_id(arith_laws("oel"), "oel.distributive"), d)
        assert rep.passed and rep.skips > 0

    @pytest.mark.parametrize("cls", CLASSES)
    def test_classical_slice_is_ordinary(self, cls):
        for rep in law_suite(cls, Q1):
            assert rep.passed and rep.max_residual <= 1e-12, rep.law

    def test_number_laws_classical_slice(self):
        for law in number_laws():
            rep = run_law(law, Q1)
            assert rep.passed and rep.max_residual <= 1e-12, rep.law


class TestCalculusSuite:
    def test_default_domain(self):
        reps = calculus_suite(SampleDomain(count=200, seed=7))
        assert all(r.passed for r in reps), [(r.law, r.max_residual) for r in reps if not r.passed]
        expected = [r for r in reps if r.expected_counterexample]
        assert [r.law for r in expected] == ["calc.fundamental_theorem.nonlinear"]
        assert expected[0].failures > 0
        assert expected[0].counterexamples[0]["residual"] > 1e-3

    def test_classical_slice(self):
        reps = calculus_suite(SampleDomain(q_range=(1.0, 1.0), count=100, seed=7))
        assert all(r.passed for r in reps)
        for r in reps:
            if not r.expected_counterexample:
                assert r.max_residual <= 1e-6

    def test_pinned_counterexample_is_first(self):
        rep = run_law(_law_by_id(calculus_laws(), "calc.fundamental_theorem.nonlinear"), Q1.replace(count=20))
        assert rep.counterexamples[0]["inputs"] == {"q": 0.5, "x": 1.0}
        assert rep.failures == 1

    def test_collar_hugging_domain(self):
        # ile at q = 2 has its border at x = 1
        d = SampleDomain(q_range=(1.99, 2.01), calc_x_range=(0.95, 1.05), count=100, seed=1)
        reps = calculus_suite(d)
        assert sum(r.skips for r in reps) > 0
        assert all(r.failures == 0 for r in reps if not r.expected_counterexample)


class TestEntropySuite:
    def test_all_pass(self):
        reps = [run_law(law, SampleDomain(count=100, seed=2)) for law in entropy_laws()]
        assert all(r.passed for r in reps), [(r.law, r.max_residual) for r in reps if not r.passed]

    def test_admissibility_claims_are_cases(self):
        law = _law_by_id(entropy_laws(), "entropy.admissibility")
        rep = run_law(law, SMALL)
        assert rep.samples == 10 and rep.passes == 10


class TestSuites:
    @pytest.mark.parametrize("name", ["arith", "calc", "entropy"])
    def test_all_is_union(self, name):
        ids = {law.id for law in suite_laws(name)}
        assert ids <= {law.id for law in suite_laws("all")}

    def test_ids_unique(self):
        ids = [law.id for law in suite_laws("all")]
        assert len(ids) == len(set(ids))

    def test_unknown(self):
        with pytest.raises(ValueError):
            suite_laws("nope")
