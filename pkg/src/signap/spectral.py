"""Numerical certification of algebraic positivity and the polynomial witness.

A real matrix is certified when it has a simple real eigenvalue whose left
and right eigenvectors can both be chosen strictly positive.  The witness
polynomial is the characteristic polynomial with that eigenvalue divided
out, which evaluates to a multiple of the rank-one projector ``u v^T``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _linalg
from .constructions import EigenTriple
from .errors import (EpsilonExhausted, NotSimple, NotSuperpattern,
                     NumericalFailure, NumericallySingular, ShapeMismatch)
from .pattern import SignPattern, is_subpattern, sign_of
from .structure import digraph_of, is_directed_cycle

REAL_ATOL = 1e-9


@dataclass(frozen=True, eq=False)
class Verdict:
    positive: bool
    lam: float | None = None
    u: np.ndarray | None = None
    v: np.ndarray | None = None
    reason: str = ""

    def triple(self, M) -> EigenTriple:
        if not self.positive:
            raise ValueError("negative verdict carries no eigen data")
        return EigenTriple(M, self.lam, self.u, self.v)

    def to_doc(self) -> dict:
        if not self.positive:
            return {"positive": False, "reason": self.reason}
        return {"positive": True, "lambda": self.lam,
                "u": [float(x) for x in self.u], "v": [float(x) for x in self.v]}

    def same_outcome(self, other: "Verdict") -> bool:
        return self.positive == other.positive


@dataclass(frozen=True)
class WitnessPolynomial:
    """Real polynomial with coefficients in ascending degree."""
    coefficients: tuple[float, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, M) -> np.ndarray:
        """Horner evaluation at a square matrix."""
        M = np.asarray(M, dtype=float)
        n = M.shape[0]
        acc = np.zeros((n, n))
        for c in reversed(self.coefficients):
            acc = acc @ M + c * np.eye(n)
        return acc

    def __call__(self, x: float) -> float:
        return float(np.polyval(self.coefficients[::-1], x))

    def to_doc(self) -> dict:
        return {"coefficients": [float(c) for c in self.coefficients]}


def _eigenvalues(M: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigenvalue solver failed: {exc}") from None


def find_eigen_triple(M) -> Verdict:
    """Search the real eigenvalues of ``M`` for one with positive eigenvectors."""
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    if not np.all(np.isfinite(M)):
        raise NumericalFailure("matrix has non-finite entries")
    vals = _eigenvalues(M)
    tol = REAL_ATOL * max(1.0, _linalg.inf_norm(M))
    reals = sorted({float(x.real) for x in vals if abs(x.imag) <= tol}, reverse=True)
    if not reals:
        return Verdict(False, reason="no real eigenvalue")
    saw_positive_pair = False
    repeated = None
    for lam in reals:
        S = M - lam * np.eye(n)
        corank = n - _linalg.numerical_rank(S, scale=_linalg.inf_norm(M))
        if corank > 1:
            # a multi-dimensional eigenspace may hold positive vectors, but the eigenvalue is not simple
            repeated = repeated or (lam, corank)
            continue
        right, left = _linalg.null_vectors(S)
        u = _linalg.orient_positive(right)
        v = _linalg.orient_positive(left)
        if u is None or v is None:
            continue
        saw_positive_pair = True
        if _linalg.is_simple(M, lam, u, v):
            return Verdict(True, lam, u, v)
    if saw_positive_pair:
        return Verdict(False, reason="eigenvalue with positive eigenvectors is not simple")
    if repeated is not None:
        lam, corank = repeated
        return Verdict(False, reason=f"eigenvalue {lam:.6g} is not simple (geometric multiplicity {corank}) "
                                     "and no other real eigenvalue has positive left and right eigenvectors")
    return Verdict(False, reason="no real eigenvalue has positive left and right eigenvectors")


def check_simple(M, lam: float, u, v) -> bool:
    """Geometric multiplicity one and ``v^T u`` bounded away from zero."""
    return _linalg.is_simple(np.asarray(M, dtype=float), float(lam),
                             np.asarray(u, dtype=float), np.asarray(v, dtype=float))


def witness_polynomial(M, lam: float, u=None, v=None) -> WitnessPolynomial:
    """Characteristic polynomial of ``M`` divided by ``x - lam``, sign-fixed.

    When ``u`` and ``v`` are omitted they are recovered from the null space
    of ``M - lam I``; simplicity is checked either way.
    """
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    if u is None or v is None:
        right, left = _linalg.null_vectors(M - lam * np.eye(n))
        u, v = right, left
    if not check_simple(M, lam, u, v):
        raise NotSimple(f"eigenvalue {lam} is not simple")
    char = np.real(np.poly(_eigenvalues(M)))  # descending degree
    quotient, _ = np.polydiv(char, np.array([1.0, -lam]))
    quotient = np.atleast_1d(quotient)
    at_lam = float(np.polyval(quotient, lam))
    scale = max(1.0, abs(lam)) ** (n - 1)
    if abs(at_lam) <= 1e-12 * scale:
        raise NumericallySingular(f"derivative of the characteristic polynomial at {lam} is ~0")
    poly = WitnessPolynomial(tuple(float(c) for c in quotient[::-1]))
    if poly.evaluate(M)[0, 0] < 0:
        poly = WitnessPolynomial(tuple(-c for c in poly.coefficients))
    return poly


def verify_algebraic_positivity(M) -> tuple[Verdict, WitnessPolynomial | None]:
    """Eigen-based verdict plus a witness polynomial re-checked by evaluation."""
    M = np.asarray(M, dtype=float)
    verdict = find_eigen_triple(M)
    if not verdict.positive:
        return verdict, None
    try:
        poly = witness_polynomial(M, verdict.lam, verdict.u, verdict.v)
    except (NotSimple, NumericallySingular) as exc:
        return Verdict(False, reason=f"witness construction failed: {exc}"), None
    if not float(np.min(poly.evaluate(M))) > 0:
        return Verdict(False, reason="witness polynomial does not evaluate to a positive matrix"), None
    return verdict, poly


def realize_base_cycle(X: SignPattern) -> EigenTriple:
    """``2I - C`` for a pattern with + diagonal and a single cycle of - entries."""
    a = X.entries
    n = X.n
    if not np.all(np.diag(a) == 1):
        raise ShapeMismatch("diagonal must be entirely +")
    off = a.copy()
    np.fill_diagonal(off, 0)
    if np.any(off > 0):
        raise ShapeMismatch("off-diagonal entries must all be -")
    if n == 1:
        return EigenTriple(np.ones((1, 1)), 1.0, np.ones(1), np.ones(1))
    if not is_directed_cycle(digraph_of(SignPattern(off))):
        raise ShapeMismatch("off-diagonal - entries do not form a single directed cycle")
    C = (off < 0).astype(float)
    return EigenTriple(2 * np.eye(n) - C, 1.0, np.ones(n), np.ones(n))


def perturb_to_superpattern(T: EigenTriple, A: SignPattern, max_halvings: int = 60) -> EigenTriple:
    """Add small entries of the required signs until the matrix lies in ``Q(A)``.

    The direction matrix has ``+-1`` where ``A`` is nonzero and the current
    matrix is zero; epsilon halves from 1 until the result is certified and
    has sign pattern exactly ``A``.  The certified eigenvalue is also required
    to stay positive, which small epsilon guarantees by continuity.
    """
    X = sign_of(T.M)
    if X.n != A.n or not is_subpattern(X, A):
        raise NotSuperpattern("current matrix pattern is not a subpattern of the target")
    if X == A:
        return T
    direction = np.where((A.entries != 0) & (X.entries == 0), A.entries, 0).astype(float)
    eps = 1.0
    for _ in range(max_halvings):
        candidate = T.M + eps * direction
        if sign_of(candidate) == A:
            verdict = find_eigen_triple(candidate)
            if verdict.positive and verdict.lam > 0:
                return verdict.triple(candidate)
        eps /= 2
    raise EpsilonExhausted(f"no admissible epsilon after {max_halvings} halvings")
