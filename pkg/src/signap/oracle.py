"""Brute-force ground truth at desk scale.

The necessary-condition filter, a grid search over magnitudes for an
algebraically positive member of ``Q(A)``, exhaustive pattern enumeration
up to order 3, and a probe that tabulates all of these side by side.
Exhausting the search budget is inconclusive, never a disproof.
"""
from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import SignApError
from .pattern import SignPattern, sample_qualitative
from .realizer import realize, sufficient_condition_holds
from .spectral import Verdict, verify_algebraic_positivity
from .structure import (is_ap_irreducible, is_minimally_ap_irreducible)

CANDIDATE = "candidate"
REJECTED = "rejected_necessary"
DEFAULT_GRID = (0.5, 1.0, 2.0)
MAX_ORDER = 3


def necessary_filter(A: SignPattern) -> str:
    """``candidate`` when ``A`` or ``-A`` is AP-irreducible, else ``rejected_necessary``."""
    return CANDIDATE if is_ap_irreducible(A) or is_ap_irreducible(-A) else REJECTED


@dataclass(frozen=True, eq=False)
class OracleReport:
    pattern: SignPattern
    filter_verdict: str
    samples_tried: int
    matrix: np.ndarray | None = None
    verdict: Verdict | None = None
    exhaustive: bool = False

    @property
    def found(self) -> bool:
        return self.matrix is not None

    def to_doc(self) -> dict:
        doc = {"pattern": self.pattern.to_rows(), "filter": self.filter_verdict,
               "samples_tried": self.samples_tried, "exhaustive": self.exhaustive,
               "found": self.found}
        if self.found:
            doc["matrix"] = [[float(x) for x in row] for row in self.matrix]
            doc["verdict"] = self.verdict.to_doc()
        return doc


def _assignments(nnz: int, grid, budget: int, rng: np.random.Generator):
    """Magnitude tuples: every combination when that fits the budget, else random draws."""
    if len(grid) ** nnz <= budget:
        return itertools.product(grid, repeat=nnz), True
    draws = (tuple(rng.choice(grid, nnz)) for _ in range(budget))
    return draws, False


def search_witness(A: SignPattern, grid=DEFAULT_GRID, budget: int = 10_000,
                   rng: np.random.Generator | None = None) -> OracleReport:
    """Look for an algebraically positive matrix in ``Q(A)`` with magnitudes from ``grid``."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    grid = tuple(float(g) for g in grid)
    if not grid or min(grid) <= 0:
        raise ValueError("grid magnitudes must be positive")
    verdict = necessary_filter(A)
    if verdict == REJECTED:
        return OracleReport(A, verdict, 0)
    rng = np.random.default_rng(0) if rng is None else rng
    where = A.nonzeros()
    assignments, exhaustive = _assignments(len(where), grid, budget, rng)
    tried = 0
    mags = np.ones((A.n, A.n))
    for combo in assignments:
        tried += 1
        for (i, j), g in zip(where, combo):
            mags[i, j] = g
        M = sample_qualitative(A, mags)
        try:
            v, poly = verify_algebraic_positivity(M)
        except SignApError:
            continue
        if v.positive and float(np.min(poly.evaluate(M))) > 0:
            return OracleReport(A, verdict, tried, M, v, exhaustive)
    return OracleReport(A, verdict, tried, exhaustive=exhaustive)


# -- enumeration ---------------------------------------------------------------

def _encode(a: np.ndarray) -> tuple[int, ...]:
    # 0 -> 0, + -> 1, - -> 2, row-major
    return tuple(int(x) % 3 for x in a.reshape(-1))


def canonical_form(A: SignPattern) -> SignPattern:
    """Least encoding over simultaneous permutations and global negation."""
    a = A.entries
    best = None
    for perm in itertools.permutations(range(A.n)):
        p = a[np.ix_(perm, perm)]
        for cand in (p, -p):
            code = _encode(cand)
            if best is None or code < best[0]:
                best = (code, cand)
    return SignPattern(best[1])


def all_patterns(n: int):
    for vals in itertools.product((0, 1, -1), repeat=n * n):
        yield SignPattern(np.array(vals, dtype=np.int8).reshape(n, n))


def enumerate_patterns(n: int, canonical: bool = False):
    """All ``3^(n^2)`` patterns of order ``n``, or one per orbit when ``canonical``."""
    if n not in range(1, MAX_ORDER + 1):
        raise ValueError(f"enumeration supports orders 1..{MAX_ORDER}, got {n}")
    if not canonical:
        yield from all_patterns(n)
        return
    seen = set()
    for A in all_patterns(n):
        C = canonical_form(A)
        if C not in seen:
            seen.add(C)
            yield C


# -- conjecture probe ------------------------------------------------------------

@dataclass(frozen=True)
class ProbeRow:
    pattern: tuple[str, ...]
    filter_verdict: str
    ap_irreducible: str          # "A", "-A", "both" or "no"
    hypothesis: str              # same vocabulary as ap_irreducible
    realized: bool | None
    oracle_found: bool | None
    oracle_samples: int


@dataclass
class ProbeSummary:
    n: int
    rows: list[ProbeRow] = field(default_factory=list)
    counterexample_candidates: list[tuple[str, ...]] = field(default_factory=list)
    minimal_zero_diagonal: int = 0
    bound_violations: list[tuple[str, ...]] = field(default_factory=list)
    realize_failures: list[tuple[str, ...]] = field(default_factory=list)

    COLUMNS = ("pattern", "filter", "ap_irreducible", "hypothesis", "realized",
               "oracle_found", "oracle_samples")

    def to_doc(self) -> dict:
        return {"n": self.n,
                "rows": [dict(zip(self.COLUMNS, _row_cells(r))) for r in self.rows],
                "counterexample_candidates": [list(p) for p in self.counterexample_candidates],
                "minimal_zero_diagonal_patterns": self.minimal_zero_diagonal,
                "bound_violations": [list(p) for p in self.bound_violations],
                "realize_failures": [list(p) for p in self.realize_failures]}

    def to_tsv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, delimiter="\t", lineterminator="\n")
        writer.writerow(self.COLUMNS)
        for r in self.rows:
            writer.writerow(_row_cells(r))
        buf.write(f"# patterns\t{len(self.rows)}\n")
        buf.write(f"# counterexample_candidates\t{len(self.counterexample_candidates)}\n")
        buf.write(f"# minimal_zero_diagonal_patterns\t{self.minimal_zero_diagonal}\n")
        buf.write(f"# bound_violations\t{len(self.bound_violations)}\n")
        buf.write(f"# realize_failures\t{len(self.realize_failures)}\n")
        return buf.getvalue()


def _row_cells(r: ProbeRow) -> list:
    fmt = {None: "n/a", True: "yes", False: "no"}
    return ["/".join(r.pattern), r.filter_verdict, r.ap_irreducible, r.hypothesis,
            fmt[r.realized], fmt[r.oracle_found], r.oracle_samples]


def _which(pred, A: SignPattern) -> str:
    plus, minus = pred(A), pred(-A)
    return "both" if plus and minus else "A" if plus else "-A" if minus else "no"


def conjecture_probe(n: int, budget: int = 2000, grid=DEFAULT_GRID, seed: int = 0) -> ProbeSummary:
    """Tabulate filter, sufficient condition, realizer and oracle for every canonical pattern.

    Patterns that pass the necessary filter but get no oracle witness within
    the budget are collected as counterexample candidates for the conjecture
    that the filter is also sufficient.  Every minimally AP-irreducible
    zero-diagonal pattern met along the way is checked against the ``2n-2``
    nonzero bound.
    """
    rng = np.random.default_rng(seed)
    summary = ProbeSummary(n)
    for A in enumerate_patterns(n, canonical=True):
        key = tuple(A.to_rows())
        filt = necessary_filter(A)
        hyp = _which(sufficient_condition_holds, A)
        realized = None
        if hyp != "no":
            target = A if hyp in ("A", "both") else -A
            try:
                realize(target)
                realized = True
            except SignApError:
                realized = False
                summary.realize_failures.append(key)
        found, tried = None, 0
        if filt == CANDIDATE:
            report = search_witness(A, grid, budget, rng)
            if not report.found:
                # M is algebraically positive exactly when -M is
                report = search_witness(-A, grid, budget, rng)
            found, tried = report.found, report.samples_tried
            if not found:
                summary.counterexample_candidates.append(key)
        for P in (A, -A):
            if not np.any(np.diag(P.entries)) and is_minimally_ap_irreducible(P):
                summary.minimal_zero_diagonal += 1
                if P.nnz > 2 * n - 2:
                    summary.bound_violations.append(tuple(P.to_rows()))
        summary.rows.append(ProbeRow(key, filt, _which(is_ap_irreducible, A), hyp,
                                     realized, found, tried))
    return summary
