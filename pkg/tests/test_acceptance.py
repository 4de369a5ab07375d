"""Acceptance criteria, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line; the lines are also
collected and repeated in the pytest terminal summary.  Running this file
directly (``python tests/test_acceptance.py``) prints the same lines without
pytest.
"""
from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from _checks import closed_form_mismatch, corank_one, eigen_residual  # noqa: E402
from _gen import (contraction_input, random_hypothesis_pattern,  # noqa: E402
                  random_minimal_strong_digraph, shifted_symmetric_triple,
                  triple_with_entry)
from signap.constructions import (Chord, Cycle, EarChord, EigenTriple,  # noqa: E402
                                  Plain, SplitEntry, SplitTerminal,
                                  attach_cycle_negative, attach_cycle_positive,
                                  contract_pair, expand_component,
                                  split_leading_diagonal)
from signap.oracle import (CANDIDATE, enumerate_patterns,  # noqa: E402
                           necessary_filter, search_witness)
from signap.pattern import SignPattern, parse_pattern, sample_qualitative, sign_of  # noqa: E402
from signap.realizer import (realize, realize_zero_diagonal,  # noqa: E402
                             split_positive_diagonals, sufficient_condition_holds)
from signap.spectral import verify_algebraic_positivity  # noqa: E402
from signap.structure import (Digraph, is_minimally_ap_irreducible,  # noqa: E402
                              is_minimally_strongly_connected)

ROOT = Path(__file__).resolve().parent.parent
FIXTURE_X = ROOT / "fixtures" / "worked_example_X.sp"
GOLDEN = ROOT / "tests" / "golden" / "worked_example_milestones.json"

# tolerances and budgets, pinned
GOLDEN_SECONDS = 5.0
RESIDUAL_FACTOR = 1e-8          # eigen residual < factor * ||M||_inf
CLOSED_FORM_TOL = 1e-10
CONSTRUCTION_TRIALS = 200
CONSTRUCTION_SECONDS = 60.0
SWEEP_SECONDS = 600.0
DIGRAPH_TRIALS = 500
MINIMAL_PATTERN_TRIALS = 200
CONTRACTION_TRIALS = 100
CORNER_TOL = 1e-10
ORACLE_GRID = (0.5, 1.0, 2.0)

RESULTS: list[str] = []


def report(tag: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {tag}: {detail}"
    RESULTS.append(line)
    print(line)


def _load_x() -> SignPattern:
    return parse_pattern(FIXTURE_X.read_text())


# -- 1 ------------------------------------------------------------------------

def test_ac1_golden_trace():
    golden = json.loads(GOLDEN.read_text())
    start = time.perf_counter()
    R = realize(_load_x())
    elapsed = time.perf_counter() - start
    got = [(list(s.labels), s.pattern.to_rows()) for s in R.trace.milestones()]
    want = [(g["labels"], g["rows"]) for g in golden]
    mismatched = [g["name"] for g, w, h in zip(golden, want, got) if w != h]
    ok = len(got) == len(want) and not mismatched and elapsed < GOLDEN_SECONDS
    report("AC1 golden trace", ok,
           f"{len(got)}/{len(want)} milestones, mismatched={mismatched}, {elapsed:.2f}s < {GOLDEN_SECONDS}s")
    assert len(got) == len(want)
    assert not mismatched
    assert elapsed < GOLDEN_SECONDS


# -- 2 ------------------------------------------------------------------------

def test_ac2_end_to_end():
    X = _load_x()
    R = realize(X)
    M = R.matrix
    verdict, poly = verify_algebraic_positivity(M)
    min_f = float(np.min(poly.evaluate(M))) if poly is not None else float("nan")
    norm = float(np.max(np.sum(np.abs(M), axis=1)))
    resid = eigen_residual(EigenTriple(M, verdict.lam, verdict.u, verdict.v)) if verdict.positive else np.inf
    stored = eigen_residual(R.triple())
    ok = (sign_of(M) == X and verdict.positive and min_f > 0
          and resid < RESIDUAL_FACTOR * norm and stored < RESIDUAL_FACTOR * norm)
    report("AC2 end-to-end", ok,
           f"sign match={sign_of(M) == X}, positive={verdict.positive}, min f(M)={min_f:.3e}, "
           f"residual={max(resid, stored):.2e} < {RESIDUAL_FACTOR * norm:.2e}")
    assert sign_of(M) == X
    assert verdict.positive
    assert min_f > 0
    assert resid < RESIDUAL_FACTOR * norm
    assert stored < RESIDUAL_FACTOR * norm


# -- 3 ------------------------------------------------------------------------

def _eps_below(rng, bound: float) -> float:
    return float(rng.uniform(0.02, 0.98) * min(1.0, bound))


def _case_attach_negative(rng, n):
    n = max(n, 2)  # an order-1 triple with lam > 0 has no negative entry
    j = int(rng.integers(n))
    T = triple_with_entry(rng, n, 0, j, -1)
    return attach_cycle_negative(T, j, int(rng.integers(1, 5))), True


def _case_attach_positive(rng, n):
    j = int(rng.integers(n))
    T = triple_with_entry(rng, n, 0, j, +1)
    return attach_cycle_positive(T, j, int(rng.integers(1, 5))), True


def _positive_leading(rng, n) -> EigenTriple:
    for _ in range(100):
        T = shifted_symmetric_triple(rng, n)
        if T.M[0, 0] > 0 and T.lam > 0:
            return T
    raise RuntimeError("no triple with positive leading diagonal")


def _case_split(kind):
    def case(rng, n):
        T = _positive_leading(rng, n)
        k = int(rng.integers(2, 6))
        lam, a11, v1 = T.lam, T.M[0, 0], T.v[0]
        eps = _eps_below(rng, lam / a11)
        if kind == "cycle":
            variant, lhs = Cycle(int(rng.integers(k))), lam * v1
        elif kind == "chord":
            j = int(rng.integers(k - 1))
            s = int(rng.choice([x for x in range(k) if x != j + 1]))
            variant = Chord(j, s, eps)
            lhs = (lam / eps - a11) * v1 if s <= j else (lam - eps * a11) * v1
        else:
            variant = SplitEntry(int(rng.integers(1, k)), eps)
            lhs = (lam - eps * a11) * v1
        return split_leading_diagonal(T, k, variant), lhs > 0
    return case


def _case_expand(kind):
    def case(rng, n):
        T = shifted_symmetric_triple(rng, n)
        j = int(rng.integers(n))
        if not T.M[0, j] > 0:
            T = triple_with_entry(rng, n, 0, j, +1)
        k = int(rng.integers(1, n + 1))
        m = int(rng.integers(1, 5)) if kind != "chord" else int(rng.integers(2, 6))
        av = T.M[0, j] * T.v[0]
        S = av + float(T.M[k:, j] @ T.v[k:])
        if not S > 0:
            return None, True
        eps = _eps_below(rng, S / av)
        if kind == "plain":
            variant, lhs = Plain(int(rng.integers(m))), S
        elif kind == "chord":
            s = int(rng.integers(m - 1))
            t = int(rng.choice([x for x in range(m) if x != s + 1]))
            variant = EarChord(s, t, eps)
            lhs = S / eps - av if t <= s else S - eps * av
        else:
            variant = SplitTerminal(int(rng.integers(m)), eps)
            lhs = S / eps - av
        return expand_component(T, m, j, k, variant), lhs > 0
    return case


def _case_contract(rng, n):
    T = contraction_input(rng, n + 1, y_nonpositive=bool(rng.random() < 0.5))
    return contract_pair(T, check_sign_condition=False), True


CONSTRUCTIONS = {
    "attach_cycle_negative": _case_attach_negative,
    "attach_cycle_positive": _case_attach_positive,
    "split_leading_diagonal/cycle": _case_split("cycle"),
    "split_leading_diagonal/chord": _case_split("chord"),
    "split_leading_diagonal/split_entry": _case_split("split_entry"),
    "expand_component/plain": _case_expand("plain"),
    "expand_component/chord": _case_expand("chord"),
    "expand_component/split_terminal": _case_expand("split_terminal"),
    "contract_pair": _case_contract,
}


def test_ac3_construction_suite():
    rng = np.random.default_rng(20240303)
    start = time.perf_counter()
    failures: dict[str, int] = {}
    worst = 0.0
    done = 0
    for name, case in CONSTRUCTIONS.items():
        made = 0
        while made < CONSTRUCTION_TRIALS:
            n = int(rng.integers(1, 7))
            out, inequality_ok = case(rng, n)
            if out is None:
                continue
            made += 1
            du, dv = closed_form_mismatch(out)
            worst = max(worst, du, dv)
            ok = (inequality_ok and du < CLOSED_FORM_TOL and dv < CLOSED_FORM_TOL
                  and corank_one(out) and np.all(out.u > 0) and np.all(out.v > 0))
            if not ok:
                failures[name] = failures.get(name, 0) + 1
        done += made
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < CONSTRUCTION_SECONDS
    report("AC3 construction suite", ok,
           f"{done} outputs over {len(CONSTRUCTIONS)} constructions, failures={failures}, "
           f"worst vector gap={worst:.1e} < {CLOSED_FORM_TOL}, {elapsed:.1f}s < {CONSTRUCTION_SECONDS}s")
    assert not failures
    assert elapsed < CONSTRUCTION_SECONDS


# -- 4 ------------------------------------------------------------------------

@pytest.mark.slow
def test_ac4_exhaustive_sweep():
    start = time.perf_counter()
    checked, failed = 0, []
    for n in (1, 2, 3):
        for C in enumerate_patterns(n, canonical=True):
            for A in (C, -C):
                if not sufficient_condition_holds(A):
                    continue
                checked += 1
                try:
                    R = realize(A)
                    verdict, poly = verify_algebraic_positivity(R.matrix)
                    good = (verdict.positive and sign_of(R.matrix) == A
                            and float(np.min(poly.evaluate(R.matrix))) > 0)
                except Exception as exc:  # any failure is a counterexample to report
                    good = False
                    print(f"  {A.to_rows()}: {type(exc).__name__}: {exc}")
                if not good:
                    failed.append(A.to_rows())
    elapsed = time.perf_counter() - start
    ok = not failed and elapsed < SWEEP_SECONDS
    report("AC4 exhaustive n<=3 sweep", ok,
           f"{checked} patterns meet the condition, {len(failed)} failed, {elapsed:.1f}s < {SWEEP_SECONDS}s")
    assert not failed
    assert elapsed < SWEEP_SECONDS


# -- 5 ------------------------------------------------------------------------

def _one_nonzero_lines(A: SignPattern) -> tuple[int, int]:
    nz = A.entries != 0
    return int(np.sum(nz.sum(axis=1) == 1)), int(np.sum(nz.sum(axis=0) == 1))


def test_ac5_bounds():
    rng = np.random.default_rng(55)
    arc_violations = 0
    for _ in range(DIGRAPH_TRIALS):
        n = int(rng.integers(1, 9))
        arcs = random_minimal_strong_digraph(rng, list(range(n)))
        D = Digraph(tuple(range(n)), frozenset(arcs))
        if not is_minimally_strongly_connected(D) or len(arcs) > max(0, 2 * n - 2):
            arc_violations += 1
    line_violations = 0
    for _ in range(MINIMAL_PATTERN_TRIALS):
        n = int(rng.integers(2, 9))
        A = random_hypothesis_pattern(rng, n, loops=False)
        rows, cols = _one_nonzero_lines(A)
        if (np.any(np.diag(A.entries)) or not is_minimally_ap_irreducible(A)
                or rows < 2 or cols < 2):
            line_violations += 1
    ok = arc_violations == 0 and line_violations == 0
    report("AC5 bounds", ok,
           f"{DIGRAPH_TRIALS} minimal digraphs: {arc_violations} exceed 2n-2 arcs; "
           f"{MINIMAL_PATTERN_TRIALS} minimal zero-diagonal patterns: {line_violations} lack two single-entry rows/columns")
    assert arc_violations == 0
    assert line_violations == 0


# -- 6 ------------------------------------------------------------------------

def _pattern_with_positive_diagonal(rng) -> SignPattern:
    while True:
        A = random_hypothesis_pattern(rng, int(rng.integers(2, 9)))
        if np.any(np.diag(A.entries) > 0):
            return A


def test_ac6_contraction_round_trip():
    rng = np.random.default_rng(66)
    pairs = corner_bad = sign_bad = invalid = 0
    worst = 0.0
    for _ in range(CONTRACTION_TRIALS):
        X = _pattern_with_positive_diagonal(rng)
        Y, smap = split_positive_diagonals(X)
        T, _ = realize_zero_diagonal(Y, smap.names())
        labels = list(range(Y.n))
        for _, first, second in smap.pairs:
            pos = {y: i for i, y in enumerate(labels)}
            rest = [pos[y] for y in labels if y not in (first, second)]
            front = T.permuted([pos[first], pos[second]] + rest)
            transpose = bool(np.any(front.M[1, 2:] > 0))
            if transpose:
                front = T.transposed().permuted([pos[second], pos[first]] + rest)
            lam, a12, a21 = front.lam, front.M[0, 1], front.M[1, 0]
            expected = lam + a21 - lam * lam / a12
            out = contract_pair(front)
            gap = abs(out.M[0, 0] - expected)
            worst = max(worst, gap)
            pairs += 1
            corner_bad += gap > CORNER_TOL * max(1.0, abs(expected))
            sign_bad += bool(np.all(front.M[1, 2:] <= 0) and not out.M[0, 0] > 0)
            invalid += not out.is_valid(1e-9)
            T = out.transposed() if transpose else out
            labels = [first] + [y for y in labels if y not in (first, second)]
    ok = pairs > 0 and corner_bad == sign_bad == invalid == 0
    report("AC6 contraction round-trip", ok,
           f"{CONTRACTION_TRIALS} instances, {pairs} pairs contracted, corner gap max {worst:.1e}, "
           f"corner mismatches={corner_bad}, nonpositive corners under the sign condition={sign_bad}, "
           f"invalid triples={invalid}")
    assert pairs > 0
    assert corner_bad == 0
    assert sign_bad == 0
    assert invalid == 0


# -- 7 ------------------------------------------------------------------------

def _grid_certifies(A: SignPattern, grid) -> bool:
    """Raw grid sweep that ignores the necessary filter."""
    import itertools
    where = A.nonzeros()
    mags = np.ones((A.n, A.n))
    for combo in itertools.product(grid, repeat=len(where)):
        for (i, j), g in zip(where, combo):
            mags[i, j] = g
        verdict, _ = verify_algebraic_positivity(sample_qualitative(A, mags))
        if verdict.positive:
            return True
    return False


def test_ac7_oracle_consistency():
    realized = missed = certified = rejected_certified = 0
    for C in enumerate_patterns(2, canonical=True):
        for A in (C, -C):
            try:
                realize(A)
            except Exception:
                pass
            else:
                realized += 1
                missed += not search_witness(A, ORACLE_GRID).found
            if _grid_certifies(A, ORACLE_GRID):
                certified += 1
                rejected_certified += necessary_filter(A) != CANDIDATE
    ok = missed == 0 and rejected_certified == 0
    report("AC7 oracle consistency", ok,
           f"{realized} realized patterns, {missed} without oracle witness; "
           f"{certified} grid-certified patterns, {rejected_certified} rejected by the filter")
    assert missed == 0
    assert rejected_certified == 0


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_ac"):
            try:
                fn()
            except AssertionError:
                pass
