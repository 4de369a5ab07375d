"""Small numerical primitives shared by the constructions and the verifier."""
from __future__ import annotations

import numpy as np

RANK_RTOL = 1e-8
PAIRING_RTOL = 1e-8
ONE_SIGNED_RTOL = 1e-10


def inf_norm(M: np.ndarray) -> float:
    return float(np.max(np.sum(np.abs(M), axis=1))) if M.size else 0.0


def numerical_rank(S: np.ndarray, scale: float | None = None) -> int:
    """Rank of ``S`` counting singular values above ``RANK_RTOL * max(sigma_max, scale)``."""
    if S.size == 0:
        return 0
    sv = np.linalg.svd(S, compute_uv=False)
    ref = max(float(sv[0]), scale or 0.0)
    if ref == 0.0:
        return 0
    return int(np.sum(sv > RANK_RTOL * ref))


def null_vectors(S: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Right and left singular vectors for the smallest singular value of ``S``."""
    U, _, Vt = np.linalg.svd(S)
    return Vt[-1].copy(), U[:, -1].copy()


def orient_positive(x: np.ndarray) -> np.ndarray | None:
    """Scale ``x`` to be strictly positive with unit 2-norm, or None if not one-signed."""
    x = np.real_if_close(np.asarray(x)).astype(float)
    big = float(np.max(np.abs(x)))
    if big == 0.0 or float(np.min(np.abs(x))) <= ONE_SIGNED_RTOL * big:
        return None
    if np.all(x > 0):
        return x / np.linalg.norm(x)
    if np.all(x < 0):
        return -x / np.linalg.norm(x)
    return None


def is_simple(M: np.ndarray, lam: float, u: np.ndarray, v: np.ndarray) -> bool:
    """Geometric multiplicity one and a nonzero left-right pairing."""
    n = M.shape[0]
    S = M - lam * np.eye(n)
    if numerical_rank(S, scale=inf_norm(M)) != n - 1:
        return False
    return abs(float(v @ u)) > PAIRING_RTOL * float(np.linalg.norm(u) * np.linalg.norm(v))


def residuals(M: np.ndarray, lam: float, u: np.ndarray, v: np.ndarray) -> tuple[float, float]:
    """Relative residuals ``|Mu - lam u| / |M|`` and ``|v^T M - lam v^T| / |M|`` (inf-norms).

    The vectors are scaled to unit max-norm first so the figure does not depend
    on their arbitrary normalisation.
    """
    scale = max(inf_norm(M), abs(lam), 1e-300)
    uu = u / np.max(np.abs(u))
    vv = v / np.max(np.abs(v))
    right = float(np.max(np.abs(M @ uu - lam * uu))) / scale
    left = float(np.max(np.abs(vv @ M - lam * vv))) / scale
    return right, left
