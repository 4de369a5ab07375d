"""Block constructions that grow (or shrink) a matrix while keeping a simple
positive eigenvalue with positive left and right eigenvectors.

Each operation acts on the leading rows/columns exactly as laid out in its
block table; callers permute beforehand.  Indices are 0-based: a column
argument ``j`` refers to column ``j`` of the input matrix, and variant
positions (``j``, ``s``, ``t``) refer to rows of the newly created block.

The returned eigenvectors are the closed-form ones, not recomputed.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Union

import numpy as np

from . import _linalg
from .errors import (BadVariantIndices, DegenerateInput, EpsilonOutOfRange,
                     HypothesisViolated, InequalityViolated, ShapeMismatch,
                     SignPrecondition, ZeroPivot)

CONSTRUCTION_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class EigenTriple:
    M: np.ndarray
    lam: float
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        M = np.array(self.M, dtype=float)
        u = np.array(self.u, dtype=float).reshape(-1)
        v = np.array(self.v, dtype=float).reshape(-1)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or u.shape != (M.shape[0],) or v.shape != u.shape:
            raise ShapeMismatch(f"inconsistent shapes M{M.shape}, u{u.shape}, v{v.shape}")
        for arr in (M, u, v):
            arr.setflags(write=False)
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "lam", float(self.lam))

    @property
    def order(self) -> int:
        return self.M.shape[0]

    def residuals(self) -> tuple[float, float]:
        return _linalg.residuals(self.M, self.lam, self.u, self.v)

    def problems(self, tol: float = CONSTRUCTION_RTOL) -> list[str]:
        """Every violated invariant, as short messages (empty when valid)."""
        out = []
        if not np.all(np.isfinite(self.M)):
            out.append("matrix has non-finite entries")
            return out
        if not self.lam > 0:
            out.append(f"eigenvalue {self.lam} is not positive")
        if not (np.all(self.u > 0) and np.all(self.v > 0)):
            out.append("eigenvectors are not strictly positive")
            return out
        right, left = self.residuals()
        if right > tol:
            out.append(f"right residual {right:.3e} exceeds {tol:.1e}")
        if left > tol:
            out.append(f"left residual {left:.3e} exceeds {tol:.1e}")
        if not _linalg.is_simple(self.M, self.lam, self.u, self.v):
            out.append("eigenvalue is not numerically simple")
        return out

    def is_valid(self, tol: float = CONSTRUCTION_RTOL) -> bool:
        return not self.problems(tol)

    def transposed(self) -> "EigenTriple":
        return EigenTriple(self.M.T, self.lam, self.v, self.u)

    def permuted(self, order) -> "EigenTriple":
        """Reindex so that new index i is old index ``order[i]``."""
        idx = np.asarray(order, dtype=int)
        return EigenTriple(self.M[np.ix_(idx, idx)], self.lam, self.u[idx], self.v[idx])

    def rescaled(self) -> "EigenTriple":
        """Same eigenvectors, matrix divided by lambda so the eigenvalue becomes 1."""
        return EigenTriple(self.M / self.lam, 1.0, self.u, self.v)


# -- variants ------------------------------------------------------------------

@dataclass(frozen=True)
class Cycle:
    """Incoming entries of the split vertex land in column ``j`` of the new block."""
    j: int


@dataclass(frozen=True)
class Chord:
    """Row ``j`` of the new block splits between ``j+1`` and ``s``; incoming entries land in ``s``."""
    j: int
    s: int
    eps: float | None = None


@dataclass(frozen=True)
class SplitEntry:
    """The closing entry of the cycle splits between columns 0 and ``s``."""
    s: int
    eps: float | None = None


Variant24 = Union[Cycle, Chord, SplitEntry]


@dataclass(frozen=True)
class Plain:
    """Relocated rows land in column ``s`` of the new path."""
    s: int


@dataclass(frozen=True)
class EarChord:
    """Path row ``s`` splits between ``s+1`` and ``t``; relocated rows land in ``t``."""
    s: int
    t: int
    eps: float | None = None


@dataclass(frozen=True)
class SplitTerminal:
    """The last path row splits between the old target column and ``t``."""
    t: int
    eps: float | None = None


Variant25 = Union[Plain, EarChord, SplitTerminal]


# -- helpers -------------------------------------------------------------------

def _require_lambda(T: EigenTriple) -> None:
    if not T.lam > 0:
        raise DegenerateInput(f"eigenvalue must be positive, got {T.lam}")


def _require_column(T: EigenTriple, j: int) -> None:
    if not 0 <= j < T.order:
        raise BadVariantIndices(f"column {j} out of range for order {T.order}")


def _check_eps(eps: float) -> None:
    if not 0.0 < eps < 1.0:
        raise EpsilonOutOfRange(f"epsilon must lie strictly between 0 and 1, got {eps}")


def _default_eps(bound: float) -> float:
    return 0.5 * min(1.0, bound)


# -- attaching a new cycle through row 0 --------------------------------------

def attach_cycle_negative(T: EigenTriple, j: int, k: int) -> EigenTriple:
    """Prepend a k-cycle through row 0, using a negative entry ``M[0, j]``.

    The new block has diagonal ``lam - a`` and chain entries ``a`` (a = M[0, j]);
    the entry ``M[0, j]`` itself moves from the old block to (k-1, k+j).
    """
    _require_lambda(T)
    _require_column(T, j)
    if k < 1:
        raise BadVariantIndices(f"cycle length must be >= 1, got {k}")
    M, lam, n = T.M, T.lam, T.order
    a = M[0, j]
    if not a < 0:
        raise SignPrecondition(f"entry (0, {j}) must be negative, got {a}")
    B = np.zeros((k + n, k + n))
    B[:k, :k] = np.diag(np.full(k, lam - a))
    for p in range(k - 1):
        B[p, p + 1] = a
    B[k - 1, k + j] = a
    B[k, 0] = a
    B[k:, k:] = M
    B[k, k + j] = 0.0
    w = np.concatenate([np.full(k, T.u[j]), T.u])
    z = np.concatenate([np.full(k, T.v[0]), T.v])
    return EigenTriple(B, lam, w, z)


def attach_cycle_positive(T: EigenTriple, j: int, k: int) -> EigenTriple:
    """Prepend a k-cycle through row 0, using a positive entry ``M[0, j]``.

    The new block has diagonal ``2 lam`` and chain entries ``-lam``; entry
    ``M[0, j]`` doubles and a ``-M[0, j]`` entry closes the cycle.
    """
    _require_lambda(T)
    _require_column(T, j)
    if k < 1:
        raise BadVariantIndices(f"cycle length must be >= 1, got {k}")
    M, lam, n = T.M, T.lam, T.order
    a = M[0, j]
    if not a > 0:
        raise SignPrecondition(f"entry (0, {j}) must be positive, got {a}")
    B = np.zeros((k + n, k + n))
    B[:k, :k] = np.diag(np.full(k, 2 * lam))
    for p in range(k - 1):
        B[p, p + 1] = -lam
    B[k - 1, k + j] = -lam
    B[k, 0] = -a
    B[k:, k:] = M
    B[k, k + j] = 2 * a
    w = np.concatenate([np.full(k, T.u[j]), T.u])
    z = np.concatenate([np.full(k, a * T.v[0] / lam), T.v])
    return EigenTriple(B, lam, w, z)


# -- splitting a positive leading diagonal into a cycle ------------------------

def split_bound(T: EigenTriple) -> float:
    """Largest admissible epsilon (exclusive) for the chord and split-entry variants."""
    return T.lam / T.M[0, 0]


def resolve_split_variant(T: EigenTriple, k: int, variant: Variant24) -> Variant24:
    """Validate indices and fill in a default epsilon."""
    if k < 2:
        raise BadVariantIndices(f"cycle length must be >= 2, got {k}")
    if isinstance(variant, Cycle):
        if not 0 <= variant.j < k:
            raise BadVariantIndices(f"Cycle j={variant.j} outside 0..{k - 1}")
        return variant
    if isinstance(variant, Chord):
        if not 0 <= variant.j <= k - 2:
            raise BadVariantIndices(f"Chord j={variant.j} outside 0..{k - 2}")
        if not 0 <= variant.s < k or variant.s == variant.j + 1:
            raise BadVariantIndices(f"Chord s={variant.s} must lie in 0..{k - 1} and differ from j+1")
    elif isinstance(variant, SplitEntry):
        if not 1 <= variant.s < k:
            raise BadVariantIndices(f"SplitEntry s={variant.s} outside 1..{k - 1}")
    else:
        raise TypeError(f"unknown variant {variant!r}")
    if variant.eps is None:
        return replace(variant, eps=_default_eps(split_bound(T)))
    _check_eps(variant.eps)
    return variant


def split_inequality(T: EigenTriple, variant: Variant24) -> float:
    """Left side of the strict inequality that makes epsilon admissible (must be > 0).

    It equals the z-weighted sum of the column receiving the incoming entries,
    i.e. the hypothesis quantity of a later path expansion through that column.
    """
    lam, a11, v1 = T.lam, T.M[0, 0], T.v[0]
    if isinstance(variant, Chord):
        if variant.s <= variant.j:
            return (lam / variant.eps - a11) * v1
        return (lam - variant.eps * a11) * v1
    if isinstance(variant, SplitEntry):
        return (lam - variant.eps * a11) * v1
    return lam * v1


def split_leading_diagonal(T: EigenTriple, k: int, variant: Variant24) -> EigenTriple:
    """Replace vertex 0 (positive diagonal) by a k-cycle; order grows to k+n-1.

    Old index 0 becomes index k-1 and old index i >= 1 becomes k-1+i.  New
    indices 0..k-2 form the chain ``0 -> 1 -> ... -> k-1`` and the old
    diagonal entry closes the cycle at (k-1, 0).
    """
    _require_lambda(T)
    M, lam, n = T.M, T.lam, T.order
    a11 = M[0, 0]
    if not a11 > 0:
        raise SignPrecondition(f"leading diagonal entry must be positive, got {a11}")
    variant = resolve_split_variant(T, k, variant)
    N = k + n - 1
    B = np.zeros((N, N))
    for p in range(k - 1):
        B[p, p + 1] = lam
    B[k - 1, 0] = a11
    B[k - 1:, k:] = M[:, 1:]
    u1, v1 = T.u[0], T.v[0]
    zc = np.empty(k - 1)
    idx = np.arange(k - 1)
    if isinstance(variant, Cycle):
        col = variant.j
        zc[:] = np.where(idx < variant.j, a11 * v1 / lam, v1)
    elif isinstance(variant, Chord):
        j, s, eps = variant.j, variant.s, variant.eps
        B[j, j + 1] = eps * lam
        B[j, s] += (1 - eps) * lam
        col = s
        if s <= j:
            zc[:] = np.where(idx < s, a11 * v1 / lam, np.where(idx <= j, v1 / eps, v1))
        else:
            zc[:] = np.where(idx <= j, a11 * v1 / lam,
                             np.where(idx < s, eps * a11 * v1 / lam, v1))
    else:
        s, eps = variant.s, variant.eps
        B[k - 1, 0] = eps * a11
        B[k - 1, s] += (1 - eps) * a11
        col = s
        zc[:] = np.where(idx < s, eps * a11 * v1 / lam, v1)
    B[k:, col] += M[1:, 0]
    w = np.concatenate([np.full(k - 1, u1), T.u])
    z = np.concatenate([zc, T.v])
    if not split_inequality(T, variant) > 0:
        raise InequalityViolated(f"epsilon {getattr(variant, 'eps', None)} is not admissible")
    return EigenTriple(B, lam, w, z)


# -- expanding a positive entry into a directed path ---------------------------

def expansion_sum(T: EigenTriple, j: int, k: int) -> float:
    """``M[0,j] v[0] + sum_{r >= k} M[r,j] v[r]``; must be positive to expand."""
    return float(T.M[0, j] * T.v[0] + T.M[k:, j] @ T.v[k:])


def expand_bound(T: EigenTriple, j: int, k: int) -> float:
    return expansion_sum(T, j, k) / (T.M[0, j] * T.v[0])


def resolve_expand_variant(T: EigenTriple, m: int, j: int, k: int, variant: Variant25) -> Variant25:
    if m < 1:
        raise BadVariantIndices(f"path length must be >= 1, got {m}")
    if isinstance(variant, Plain):
        if not 0 <= variant.s < m:
            raise BadVariantIndices(f"Plain s={variant.s} outside 0..{m - 1}")
        return variant
    if isinstance(variant, EarChord):
        if not 0 <= variant.s <= m - 2:
            raise BadVariantIndices(f"EarChord s={variant.s} outside 0..{m - 2}")
        if not 0 <= variant.t < m or variant.t == variant.s + 1:
            raise BadVariantIndices(f"EarChord t={variant.t} must lie in 0..{m - 1} and differ from s+1")
    elif isinstance(variant, SplitTerminal):
        if not 0 <= variant.t < m:
            raise BadVariantIndices(f"SplitTerminal t={variant.t} outside 0..{m - 1}")
    else:
        raise TypeError(f"unknown variant {variant!r}")
    if variant.eps is None:
        return replace(variant, eps=_default_eps(expand_bound(T, j, k)))
    _check_eps(variant.eps)
    return variant


def expand_inequality(T: EigenTriple, j: int, k: int, variant: Variant25) -> float:
    """Left side of the variant's strict epsilon inequality (must be > 0)."""
    S = expansion_sum(T, j, k)
    av = T.M[0, j] * T.v[0]
    if isinstance(variant, EarChord):
        if variant.t <= variant.s:
            return S / variant.eps - av
        return S - variant.eps * av
    if isinstance(variant, SplitTerminal):
        return S / variant.eps - av
    return S


def expand_component(T: EigenTriple, m: int, j: int, k: int, variant: Variant25) -> EigenTriple:
    """Replace the positive entry ``M[0, j]`` by a directed path of m new vertices.

    Rows ``k..n-1`` of the input lose their column-j entries, which move to
    the path column named by the variant.  Old index i becomes m+i.
    """
    _require_lambda(T)
    _require_column(T, j)
    M, lam, n = T.M, T.lam, T.order
    if not 1 <= k <= n:
        raise BadVariantIndices(f"split row index k={k} outside 1..{n}")
    a = M[0, j]
    if not a > 0:
        raise SignPrecondition(f"entry (0, {j}) must be positive, got {a}")
    S = expansion_sum(T, j, k)
    if not S > 0:
        raise HypothesisViolated(f"expansion sum {S:.6g} is not positive")
    variant = resolve_expand_variant(T, m, j, k, variant)
    B = np.zeros((m + n, m + n))
    for p in range(m - 1):
        B[p, p + 1] = lam
    B[m - 1, m + j] = lam
    B[m, 0] = a
    B[m:, m:] = M
    B[m, m + j] = 0.0
    moved = M[k:, j].copy()
    B[m + k:, m + j] = 0.0
    v1 = T.v[0]
    idx = np.arange(m)
    if isinstance(variant, Plain):
        col = variant.s
        zc = np.where(idx < col, a * v1 / lam, S / lam)
    elif isinstance(variant, EarChord):
        s, t, eps = variant.s, variant.t, variant.eps
        B[s, s + 1] = eps * lam
        B[s, t] += (1 - eps) * lam
        col = t
        if t <= s:
            zc = np.where(idx < t, a * v1 / lam, np.where(idx <= s, S / (eps * lam), S / lam))
        else:
            zc = np.where(idx <= s, a * v1 / lam, np.where(idx < t, eps * a * v1 / lam, S / lam))
    else:
        t, eps = variant.t, variant.eps
        B[m - 1, m + j] = eps * lam
        B[m - 1, t] += (1 - eps) * lam
        col = t
        zc = np.where(idx < t, a * v1 / lam, S / (eps * lam))
    B[m + k:, col] += moved
    w = np.concatenate([np.full(m, T.u[j]), T.u])
    z = np.concatenate([zc, T.v])
    if not expand_inequality(T, j, k, variant) > 0:
        raise InequalityViolated(f"epsilon {getattr(variant, 'eps', None)} is not admissible")
    return EigenTriple(B, lam, w, z)


# -- contracting a 2-cycle pair -------------------------------------------------

def contraction_corner(T: EigenTriple) -> float:
    M, lam = T.M, T.lam
    return lam + M[1, 0] - lam * lam / M[0, 1]


def contract_pair(T: EigenTriple, *, check_sign_condition: bool = True) -> EigenTriple:
    """Merge rows 0 and 1 of a matrix shaped ``[[0, a12, 0], [a21, 0, y], [x, 0, R]]``.

    Result order n-1: corner ``lam + a21 - lam^2 / a12``, then y, x, R.  When
    ``lam > 0`` and y has no positive entry the corner is asserted positive.
    """
    M, lam, n = T.M, T.lam, T.order
    if n < 2:
        raise ShapeMismatch("contraction needs order >= 2")
    if M[0, 1] == 0:
        raise ZeroPivot("entry (0, 1) is zero")
    if M[0, 0] != 0 or M[1, 1] != 0 or np.any(M[0, 2:] != 0) or np.any(M[2:, 1] != 0):
        raise ShapeMismatch("rows 0/1 do not have the 2-cycle block shape")
    B = np.array(M[1:, 1:], dtype=float)
    B[1:, 0] = M[2:, 0]
    B[0, 0] = contraction_corner(T)
    w = np.concatenate([[T.u[0]], T.u[2:]])
    z = np.concatenate([[T.v[1]], T.v[2:]])
    if check_sign_condition and lam > 0 and np.all(M[1, 2:] <= 0) and not B[0, 0] > 0:
        raise InequalityViolated(f"corner entry {B[0, 0]:.6g} is not positive although y <= 0")
    return EigenTriple(B, lam, w, z)
