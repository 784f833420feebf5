from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..exceptions import (
    DegenerateNoise,
    IllConditioned,
    NotIdempotent,
    NotPositiveDefinite,
    NumericalFailure,
)
from ..linalg import (
    DEFAULT_TOLERANCE,
    Tolerance,
    antisymmetric_canonical_form,
    norm,
    numerical_rank,
    symmetric_part,
    symplectic_form,
    williamson,
)
from ..logger import create_logger
from .types import GaussianChannel

logger = create_logger(__name__)

NORMAL_FORM_RESIDUAL = 1e-7


@dataclass(frozen=True)
class IdempotentNormalForm:
    """``s x s^-1 = diag(I_2k, 0)`` and ``s y s^T = diag(0, y_1 I_2, ...)``."""

    s: np.ndarray
    k: int
    noise: Tuple[float, ...]


def is_idempotent(c: GaussianChannel, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """``x^2 = x`` and ``x y = 0``."""
    x, y = c.x, c.y
    eps = tol.threshold(1.0)
    return norm(x @ x - x) <= eps * max(1.0, norm(x)) and norm(x @ y) <= eps * max(1.0, norm(y))


def _symplectic_basis(basis: np.ndarray, tol: Tolerance) -> np.ndarray:
    """Columns ``e`` spanning ``basis`` with ``e^T sigma e`` the standard form."""
    if basis.shape[1] == 0:
        return basis
    sigma = symplectic_form(basis.shape[0] // 2)
    restricted = basis.T @ sigma @ basis
    R, b = antisymmetric_canonical_form(restricted, tol)
    if b.size == 0 or b[-1] <= tol.threshold(1.0):
        raise IllConditioned("subspace is not symplectic")
    return basis @ R * np.repeat(1.0 / np.sqrt(b), 2)[np.newaxis, :]


def idempotent_normal_form(
    c: GaussianChannel, tol: Tolerance = DEFAULT_TOLERANCE
) -> IdempotentNormalForm:
    """Symplectic normal form of an idempotent channel.

    The channel is the identity on ``k`` modes and prepares a product of
    thermal-like states with symplectic eigenvalues ``y_j >= 1`` on the rest.
    """
    if not is_idempotent(c, tol):
        raise NotIdempotent("x^2 != x or x y != 0")
    x, y = c.x, c.y
    dim = c.dim
    rank, ambiguous = numerical_rank(x, tol)
    if ambiguous:
        raise IllConditioned("rank of x is within the tolerance band")
    if rank % 2:
        raise IllConditioned(f"rank of an idempotent x must be even, got {rank}")

    u, _, vh = np.linalg.svd(x)
    image_of_transpose = vh[:rank].T
    kernel_of_transpose = u[:, rank:]

    e1 = _symplectic_basis(image_of_transpose, tol)
    e2 = _symplectic_basis(kernel_of_transpose, tol)

    noise: List[float] = []
    q2 = e2
    if e2.shape[1]:
        restricted = symmetric_part(e2.T @ y @ e2)
        try:
            s_noise, noise = williamson(restricted, tol)
        except NotPositiveDefinite as exc:
            raise DegenerateNoise(str(exc)) from exc
        q2 = e2 @ s_noise.T

    s = np.hstack([e1, q2]).T
    k = rank // 2
    target_x = np.diag([1.0] * rank + [0.0] * (dim - rank))
    target_y = np.zeros((dim, dim))
    target_y[rank:, rank:] = np.diag(np.repeat(noise, 2)) if noise else 0.0

    x_residual = norm(s @ x @ np.linalg.inv(s) - target_x)
    y_residual = norm(s @ y @ s.T - target_y)
    if x_residual > NORMAL_FORM_RESIDUAL * max(1.0, norm(x)) or y_residual > (
        NORMAL_FORM_RESIDUAL * max(1.0, norm(y))
    ):
        raise NumericalFailure(
            f"normal form reconstruction failed (x: {x_residual:.3e}, y: {y_residual:.3e})"
        )
    if noise and min(noise) < 1.0 - NORMAL_FORM_RESIDUAL:
        logger.warning("idempotent_normal_form: symplectic eigenvalue %.6g below 1", min(noise))
    return IdempotentNormalForm(s=s, k=k, noise=tuple(noise))
