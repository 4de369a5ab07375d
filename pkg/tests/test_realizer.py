import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _gen import random_hypothesis_pattern
from signap.errors import HypothesisFails, NegativeDiagonal, PreconditionViolated
from signap.oracle import CANDIDATE, necessary_filter
from signap.pattern import pattern_from_rows, sign_of
from signap.realizer import (CERTIFY_RTOL, cross_component_plus, realize,
                             realize_zero_diagonal, split_positive_diagonals,
                             sufficient_condition_failure,
                             sufficient_condition_holds)
from signap.spectral import verify_algebraic_positivity
from signap.structure import is_minimally_ap_irreducible

GOLDEN = json.loads((Path(__file__).parent / "golden" / "worked_example_milestones.json").read_text())


def P(*rows):
    return pattern_from_rows(rows)


class TestHypothesis:
    def test_examples(self, fixture_x):
        assert sufficient_condition_holds(fixture_x)
        assert sufficient_condition_holds(P("0 +", "+ 0"))
        cross = P("+ + -", "0 + +", "- 0 +")
        assert cross_component_plus(cross) == [(0, 1), (1, 2)]
        assert not sufficient_condition_holds(cross)
        assert "joins two components" in sufficient_condition_failure(cross)

    def test_failure_names_row(self):
        assert sufficient_condition_failure(P("0 +", "- 0")) == "not AP-irreducible: row 2 contains no +"


class TestSplit:
    def test_worked_example(self, fixture_x, fixture_y):
        Y, smap = split_positive_diagonals(fixture_x)
        assert Y == fixture_y
        assert smap.pairs == ((8, 8, 9),)
        assert smap.names()[8:10] == ["9'", "9''"]

    def test_zero_diagonal_is_identity(self):
        A = P("0 +", "+ 0")
        Y, smap = split_positive_diagonals(A)
        assert Y == A and smap.is_identity()

    def test_negative_diagonal(self):
        with pytest.raises(NegativeDiagonal):
            split_positive_diagonals(P("- +", "+ 0"))


class TestZeroDiagonalEngine:
    def test_worked_example_milestones(self, fixture_y, fixture_x):
        _, smap = split_positive_diagonals(fixture_x)
        T, trace = realize_zero_diagonal(fixture_y, smap.names())
        got = [(list(s.labels), s.pattern.to_rows()) for s in trace.milestones()]
        assert got == [(g["labels"], g["rows"]) for g in GOLDEN]
        assert sign_of(T.M) == fixture_y
        assert T.is_valid(CERTIFY_RTOL)

    def test_single_two_cycle(self):
        A = P("0 +", "+ 0")
        T, trace = realize_zero_diagonal(A)
        assert sign_of(T.M) == A
        assert verify_algebraic_positivity(T.M)[0].positive
        assert len(trace) >= 1

    def test_rejects_diagonal(self):
        with pytest.raises(PreconditionViolated):
            realize_zero_diagonal(P("+ -", "- +"))

    def test_every_step_certified(self, fixture_y):
        _, trace = realize_zero_diagonal(fixture_y)
        for step in trace.steps:
            assert max(step.residuals) < CERTIFY_RTOL


class TestRealize:
    def test_worked_example(self, fixture_x):
        R = realize(fixture_x)
        assert sign_of(R.matrix) == fixture_x
        assert verify_algebraic_positivity(R.matrix)[0].positive
        assert R.subpattern == fixture_x
        doc = R.to_doc()
        assert doc["pattern"] == fixture_x.to_rows()
        assert doc["matrix"]["n"] == 11

    def test_order_one(self):
        R = realize(P("+"))
        np.testing.assert_allclose(R.matrix, [[1.0]])
        assert R.lam == pytest.approx(1.0)
        np.testing.assert_allclose(R.witness.evaluate(R.matrix), [[1.0]])

    def test_row_without_plus(self):
        with pytest.raises(HypothesisFails, match="row 2 contains no"):
            realize(P("0 +", "- 0"))

    def test_negated_hint(self):
        with pytest.raises(HypothesisFails, match="negated pattern"):
            realize(-P("0 +", "+ 0"))

    def test_deterministic(self, fixture_x):
        a, b = realize(fixture_x), realize(fixture_x)
        assert json.dumps(a.to_doc()) == json.dumps(b.to_doc())

    def test_superpattern_lift(self):
        A = P("+ + 0", "+ 0 -", "- 0 +")
        assert sufficient_condition_holds(A)
        R = realize(A)
        assert R.subpattern != A
        assert sign_of(R.matrix) == A
        assert R.trace.steps[-1].rule == "perturb"

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 9), st.floats(0.0, 0.4), st.integers(0, 2 ** 32 - 1))
    def test_random_patterns(self, n, density, seed):
        rng = np.random.default_rng(seed)
        A = random_hypothesis_pattern(rng, n, extra_density=density, minimal=density == 0.0)
        R = realize(A)
        assert sign_of(R.matrix) == A
        verdict, f = verify_algebraic_positivity(R.matrix)
        assert verdict.positive and np.min(f.evaluate(R.matrix)) > 0
        assert is_minimally_ap_irreducible(R.subpattern) or R.subpattern.nnz <= A.nnz
        assert necessary_filter(A) == CANDIDATE
        for step in R.trace.steps:
            assert max(step.residuals) < CERTIFY_RTOL

    def test_trace_text_mentions_rules(self, fixture_x):
        text = realize(fixture_x).trace.to_text()
        for rule in ("base_cycle", "split_leading_diagonal", "expand_component", "contract_pair"):
            assert rule in text


def test_construction_refusal_inside_engine_is_an_engine_fault(monkeypatch):
    from signap import realizer
    from signap.errors import EngineInvariantBroken, SignPrecondition

    def refuse(*args, **kwargs):
        raise SignPrecondition("forced")
    monkeypatch.setattr(realizer, "realize_base_cycle", refuse)
    with pytest.raises(EngineInvariantBroken, match="SignPrecondition"):
        realize_zero_diagonal(P("0 + 0 -", "+ 0 0 0", "0 - 0 +", "0 0 + 0"))
