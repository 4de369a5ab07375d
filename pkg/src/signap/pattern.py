"""Sign patterns, their sign algebra, and sampling of qualitative classes.

Indices are 0-based throughout the package; text output is the only place
1-based labels appear.
"""
from __future__ import annotations

from enum import IntEnum
from typing import Iterable, Sequence

import numpy as np

from .errors import (BadPermutation, BadToken, NonpositiveMagnitude,
                     NonSquare, OrderMismatch)


class Sign(IntEnum):
    MINUS = -1
    ZERO = 0
    PLUS = 1

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    @classmethod
    def from_token(cls, token: str) -> "Sign":
        return _TOKENS[token]


_SYMBOLS = {Sign.MINUS: "-", Sign.ZERO: "0", Sign.PLUS: "+"}
# U+2212 is accepted on input because patterns are often pasted from typeset text
_TOKENS = {"+": Sign.PLUS, "-": Sign.MINUS, "−": Sign.MINUS, "0": Sign.ZERO}


class SignPattern:
    """Immutable square matrix over {+, -, 0}, stored as int8 in {1, -1, 0}."""

    __slots__ = ("_a",)

    def __init__(self, entries):
        a = np.sign(np.asarray(entries, dtype=float)).astype(np.int8)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise NonSquare(f"sign pattern must be square with n >= 1, got shape {a.shape}")
        a.setflags(write=False)
        self._a = a

    @property
    def n(self) -> int:
        return self._a.shape[0]

    @property
    def entries(self) -> np.ndarray:
        """Read-only int8 view of the pattern."""
        return self._a

    def __getitem__(self, ij) -> Sign:
        return Sign(int(self._a[ij]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignPattern):
            return NotImplemented
        return self._a.shape == other._a.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        return hash((self.n, self._a.tobytes()))

    def __neg__(self) -> "SignPattern":
        return SignPattern(-self._a)

    def __repr__(self) -> str:
        return f"SignPattern({self.to_rows()!r})"

    def __str__(self) -> str:
        return self.to_text()

    @property
    def nnz(self) -> int:
        return int(np.count_nonzero(self._a))

    def nonzeros(self) -> list[tuple[int, int]]:
        """Nonzero positions in row-major order."""
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(self._a))]

    def to_rows(self) -> list[str]:
        return [" ".join(_SYMBOLS[Sign(int(x))] for x in row) for row in self._a]

    def to_text(self) -> str:
        return "\n".join(self.to_rows()) + "\n"

    def with_entry(self, i: int, j: int, sign: int) -> "SignPattern":
        a = self._a.copy()
        a[i, j] = int(sign)
        return SignPattern(a)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int] | None = None) -> np.ndarray:
        cols = rows if cols is None else cols
        return self._a[np.ix_(list(rows), list(cols))]


def parse_pattern(text: str) -> SignPattern:
    """Parse one row per line of whitespace-separated ``+``/``-``/``0`` tokens.

    Blank lines and lines starting with ``#`` are ignored.
    """
    rows = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        rows.append(stripped.split())
    # tokens are validated before shape so a typo is reported where it is
    for r, toks in enumerate(rows, start=1):
        for c, tok in enumerate(toks, start=1):
            if tok not in _TOKENS:
                raise BadToken(r, c, tok)
    n = len(rows)
    if n == 0:
        raise NonSquare("empty pattern")
    for r, toks in enumerate(rows, start=1):
        if len(toks) != n:
            raise NonSquare(f"row {r} has {len(toks)} tokens, expected {n}")
    grid = np.array([[_TOKENS[t] for t in toks] for toks in rows], dtype=np.int8)
    return SignPattern(grid)


def pattern_from_rows(rows: Iterable[str]) -> SignPattern:
    return parse_pattern("\n".join(rows))


def positive_part(A: SignPattern) -> SignPattern:
    return SignPattern(np.where(A.entries > 0, 1, 0))


def negative_part(A: SignPattern) -> SignPattern:
    return SignPattern(np.where(A.entries < 0, -1, 0))


def plus_and_reversed_minus(A: SignPattern) -> SignPattern:
    """The pattern ``A_plus - (A_minus)^T``.

    Its digraph keeps every ``+`` arc of ``A`` and reverses every ``-`` arc, so
    all entries are ``+`` or ``0``.
    """
    plus = A.entries > 0
    reversed_minus = (A.entries < 0).T
    return SignPattern((plus | reversed_minus).astype(np.int8))


def is_subpattern(X: SignPattern, A: SignPattern) -> bool:
    if X.n != A.n:
        raise OrderMismatch(f"orders differ: {X.n} vs {A.n}")
    x = X.entries
    mask = x != 0
    return bool(np.all(x[mask] == A.entries[mask]))


def _check_permutation(sigma: Sequence[int], n: int) -> np.ndarray:
    s = np.asarray(sigma, dtype=int)
    if s.shape != (n,) or sorted(s.tolist()) != list(range(n)):
        raise BadPermutation(f"not a permutation of 0..{n - 1}: {list(sigma)}")
    return s


def permute(A: SignPattern, sigma: Sequence[int]) -> SignPattern:
    """``result[i, j] = A[sigma[i], sigma[j]]`` (i.e. ``P^T A P``)."""
    s = _check_permutation(sigma, A.n)
    return SignPattern(A.entries[np.ix_(s, s)])


def permute_matrix(M: np.ndarray, sigma: Sequence[int]) -> np.ndarray:
    s = _check_permutation(sigma, M.shape[0])
    return M[np.ix_(s, s)]


def inverse_permutation(sigma: Sequence[int]) -> list[int]:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return inv


def sample_qualitative(A: SignPattern, magnitudes=None, *, jitter: bool = False,
                       rng: np.random.Generator | None = None) -> np.ndarray:
    """A real matrix in the qualitative class of ``A``.

    ``magnitudes`` may be a scalar or an n x n array; only entries where ``A``
    is nonzero are read and they must be positive.  With ``jitter`` the
    magnitudes are multiplied by independent uniform draws from [0.5, 1.5].
    """
    n = A.n
    mask = A.entries != 0
    if magnitudes is None:
        mag = np.ones((n, n))
    else:
        mag = np.broadcast_to(np.asarray(magnitudes, dtype=float), (n, n)).copy()
    if np.any(~(mag[mask] > 0)) or not np.all(np.isfinite(mag[mask])):
        raise NonpositiveMagnitude("magnitudes must be positive and finite where the pattern is nonzero")
    if jitter:
        rng = np.random.default_rng() if rng is None else rng
        mag = mag * rng.uniform(0.5, 1.5, size=(n, n))
    return np.where(mask, A.entries * mag, 0.0)


def sign_of(M, tol: float = 0.0) -> SignPattern:
    """Sign pattern of a real matrix; entries within ``tol`` of zero map to 0."""
    M = np.asarray(M, dtype=float)
    out = np.zeros(M.shape, dtype=np.int8)
    out[M > tol] = 1
    out[M < -tol] = -1
    return SignPattern(out)


def numeric_tolerance(M) -> float:
    """Default zero-threshold for numerically produced matrices."""
    M = np.asarray(M, dtype=float)
    return 1e-12 * float(np.max(np.abs(M))) if M.size else 0.0


def matrix_to_doc(M: np.ndarray) -> dict:
    M = np.asarray(M, dtype=float)
    return {"n": int(M.shape[0]), "rows": [[float(x) for x in row] for row in M]}


def matrix_from_doc(doc: dict) -> np.ndarray:
    try:
        n = int(doc["n"])
        M = np.asarray(doc["rows"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise NonSquare(f"malformed matrix document: {exc}") from None
    if M.shape != (n, n):
        raise NonSquare(f"matrix document declares n={n} but rows have shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise NonSquare("matrix document contains non-finite entries")
    return M
