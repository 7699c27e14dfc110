"""Problem definition, objectives, duality gap, and a-priori spectral bounds.

The primal problem maximizes ``log det X - <sigma, X> - rho*||X||_1`` over
symmetric X with spectrum in [alpha, beta]; the dual minimizes
``-log det(sigma + U) - n`` over perturbations with ``|U_ij| <= rho``. The
entrywise 1-norm includes the diagonal. A dual-feasible point certifies the
suboptimality of its inverse through :func:`duality_gap`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np

from .exceptions import (
    DegeneratePenaltyError,
    InfeasibleDualPointError,
    InvalidBoundsError,
)
from .linalg import chol_logdet, inverse_spd, spectral_norm, sym_matrix

#: Absolute slack allowed on the dual box constraint |sigma_hat - sigma| <= rho.
DUAL_FEAS_TOL = 1e-9


class TraceRecord(NamedTuple):
    """One convergence checkpoint: (iteration, elapsed seconds, duality gap)."""

    iteration: int
    seconds: float
    gap: float


@dataclass(frozen=True)
class Problem:
    """Covariance selection instance: sample covariance, penalty, bounds.

    ``sigma`` is validated and symmetrized at construction. ``alpha``/``beta``
    default to the unbounded spectral box (0, inf); solvers that need finite
    bounds substitute :func:`default_bounds` themselves.
    """

    sigma: np.ndarray
    rho: float
    alpha: float = 0.0
    beta: float = math.inf

    def __post_init__(self):
        object.__setattr__(self, "sigma", sym_matrix(self.sigma))
        if not (self.rho >= 0.0 and math.isfinite(self.rho)):
            raise InvalidBoundsError(f"rho must be finite and >= 0, got {self.rho}")
        if not (self.alpha >= 0.0 and self.alpha < self.beta):
            raise InvalidBoundsError(
                f"need 0 <= alpha < beta, got ({self.alpha}, {self.beta})"
            )

    @property
    def n(self) -> int:
        return self.sigma.shape[0]

    def with_default_bounds(self) -> "Problem":
        """Copy of the problem with the a-priori bounds filled in."""
        a, b = default_bounds(self.sigma, self.rho)
        return replace(self, alpha=a, beta=b)


@dataclass
class Solution:
    """Solver output: primal/dual pair with a certified duality gap."""

    x: np.ndarray
    sigma_hat: np.ndarray
    primal_obj: float
    dual_obj: float
    gap: float
    iterations: int
    trace: list = field(default_factory=list)

    @property
    def wall_seconds(self) -> float:
        return self.trace[-1].seconds if self.trace else 0.0


def primal_objective(p: Problem, x: np.ndarray) -> float:
    """log det x - <sigma, x> - rho * sum |x_ij| (diagonal included)."""
    return (
        chol_logdet(x)
        - float(np.sum(p.sigma * x))
        - p.rho * float(np.sum(np.abs(x)))
    )


def _check_dual_feasible(p: Problem, sigma_hat: np.ndarray) -> None:
    viol = float(np.abs(sigma_hat - p.sigma).max()) - p.rho
    if viol > DUAL_FEAS_TOL:
        raise InfeasibleDualPointError(
            f"|sigma_hat - sigma| exceeds rho by {viol:.3e}"
        )


def dual_objective(p: Problem, sigma_hat: np.ndarray) -> float:
    """-log det(sigma_hat) - n for a dual-feasible covariance estimate."""
    _check_dual_feasible(p, sigma_hat)
    return -chol_logdet(sigma_hat) - p.n


def robust_inner_min(x: np.ndarray, rho: float):
    """Worst-case perturbation term: min of <x, U> over |U_ij| <= rho.

    Returns ``(-rho * sum|x_ij|, U_min)`` where U_min has entries
    ``-rho * sign(x_ij)``; adding the value to ``log det x - <sigma, x>``
    reproduces the penalized objective exactly.
    """
    value = -rho * float(np.sum(np.abs(x)))
    return value, -rho * np.sign(x)


def duality_gap(p: Problem, sigma_hat: np.ndarray) -> float:
    """Certified gap <sigma, X> + rho*||X||_1 - n with X = sigma_hat^{-1}.

    Nonnegative for every dual-feasible positive definite sigma_hat, and
    equal to dual_objective(sigma_hat) - primal_objective(X) up to round-off.
    """
    _check_dual_feasible(p, sigma_hat)
    x = inverse_spd(sigma_hat)
    return (
        float(np.sum(p.sigma * x))
        + p.rho * float(np.sum(np.abs(x)))
        - p.n
    )


def default_bounds(sigma: np.ndarray, rho: float):
    """A-priori spectral bounds containing the optimum for rho > 0.

    alpha = 1/(||sigma|| + n*rho) and beta = n/rho; requires rho > 0 since
    no finite beta exists otherwise.
    """
    if rho <= 0.0:
        raise DegeneratePenaltyError("default bounds require rho > 0")
    n = sigma.shape[0]
    return 1.0 / (spectral_norm(sigma) + n * rho), n / rho
