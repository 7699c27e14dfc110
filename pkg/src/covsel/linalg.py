"""Dense symmetric-matrix kernels and spectral-box subroutines.

All functions are pure: inputs are never mutated and results are freshly
allocated, so values can be shared freely across threads. Matrices are plain
float64 ndarrays; :func:`sym_matrix` is the validating constructor used at
API boundaries, while the numerical routines assume already-clean input.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .exceptions import (
    AsymmetricMatrixError,
    InvalidBoundsError,
    NonFiniteInputError,
    NotPositiveDefiniteError,
    NumericalFailureError,
)

SYMMETRY_RTOL = 1e-12


class EigenDecomposition(NamedTuple):
    """Spectral factorization M = V diag(w) V' with w ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def sym_matrix(a, rtol: float = SYMMETRY_RTOL) -> np.ndarray:
    """Validate and symmetrize a dense square matrix.

    Accepts anything array-like. Entries must be finite; asymmetry up to
    ``rtol`` (relative to the largest magnitude) is repaired by averaging
    with the transpose, anything worse is rejected as a likely bug.
    """
    m = np.array(a, dtype=np.float64, order="C", copy=True)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise AsymmetricMatrixError(f"expected a square matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise NonFiniteInputError("matrix contains NaN or infinite entries")
    scale = max(1.0, float(np.abs(m).max()) if m.size else 0.0)
    skew = float(np.abs(m - m.T).max()) if m.size else 0.0
    if skew > rtol * scale:
        raise AsymmetricMatrixError(
            f"asymmetry {skew:.3e} exceeds {rtol:.1e} * {scale:.3e}"
        )
    return (m + m.T) / 2.0


def sym_eig(m: np.ndarray) -> EigenDecomposition:
    """Full eigendecomposition of a symmetric matrix, eigenvalues ascending."""
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"symmetric eigensolver failed: {exc}") from exc
    return EigenDecomposition(w, v)


def chol_logdet(m: np.ndarray) -> float:
    """log det M via Cholesky; raises NotPositiveDefiniteError if M is not PD."""
    try:
        L = np.linalg.cholesky(m)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError(str(exc)) from exc
    return 2.0 * float(np.sum(np.log(np.diagonal(L))))


def inverse_spd(m: np.ndarray) -> np.ndarray:
    """Inverse of a symmetric positive definite matrix, symmetrized."""
    try:
        c, lower = scipy.linalg.cho_factor(m, lower=True, check_finite=False)
    except scipy.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError(str(exc)) from exc
    inv = scipy.linalg.cho_solve((c, lower), np.eye(m.shape[0]), check_finite=False)
    return (inv + inv.T) / 2.0


def spectral_norm(m: np.ndarray) -> float:
    """Largest absolute eigenvalue of a symmetric matrix."""
    w = np.linalg.eigvalsh(m)
    return float(np.abs(w).max())


def _check_box(alpha: float, beta: float, finite_beta: bool) -> None:
    if not (alpha >= 0.0 and alpha < beta):
        raise InvalidBoundsError(f"need 0 <= alpha < beta, got ({alpha}, {beta})")
    if finite_beta and not math.isfinite(beta):
        raise InvalidBoundsError(f"beta must be finite, got {beta}")


def proj_spectral_box(m: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    """Frobenius projection onto {X : alpha*I <= X <= beta*I}.

    Eigenvalues are clamped into [alpha, beta] and the matrix recomposed;
    if the spectrum is already inside, the input is returned unchanged.
    """
    _check_box(alpha, beta, finite_beta=False)
    w, v = sym_eig(m)
    if w[0] >= alpha and w[-1] <= beta:
        return m
    wc = np.clip(w, alpha, beta)
    out = (v * wc) @ v.T
    return (out + out.T) / 2.0


def logdet_linear_min(w: np.ndarray, c: float, alpha: float, beta: float) -> np.ndarray:
    """Minimize c*(-log det X) + <W, X> over the spectral box [alpha, beta].

    The minimizer shares eigenvectors with W; per eigenvalue w of W the
    scalar minimizer of (-c*log x + w*x) on [alpha, beta] is clamp(c/w)
    for w > 0 and beta for w <= 0 (the objective is then decreasing).
    """
    if not (c > 0.0 and math.isfinite(c)):
        raise InvalidBoundsError(f"need a positive finite coefficient, got {c}")
    if not np.isfinite(w).all():
        raise NonFiniteInputError("linear term contains NaN or infinite entries")
    _check_box(alpha, beta, finite_beta=True)
    lam, v = sym_eig(w)
    x = np.where(lam > 0.0, np.clip(c / np.where(lam > 0.0, lam, 1.0), alpha, beta), beta)
    out = (v * x) @ v.T
    return (out + out.T) / 2.0
