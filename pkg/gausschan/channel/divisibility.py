"""The p-map onto the positive cone, its right inverse, and two-factor division.

``p(x, y) = i (x sigma x^T - sigma) + y`` is constant on the classes
``(x, y) ~ (x s, y)`` with ``s`` symplectic and its kernel is exactly the
reversible channels. Every non-reversible channel splits into two
non-reversible factors.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from ..exceptions import DimensionMismatch, NotCompletelyPositive, NumericalFailure, Reversible
from ..linalg import (
    DEFAULT_TOLERANCE,
    Tolerance,
    antisym_factor,
    as_real,
    is_singular,
    norm,
    numerical_rank,
    symplectic_form,
)
from ..logger import create_logger
from .operations import compose, is_reversible
from .types import Division, GaussianChannel, PositiveClassRep

logger = create_logger(__name__)

EPSILON_CANDIDATES: Sequence[float] = tuple(2.0**-k for k in range(1, 21))
DIVISION_RESIDUAL = 1e-8


class _RejectedEpsilon(NumericalFailure):
    """Raised inside the epsilon search when a candidate does not work."""


def p_map(c: GaussianChannel, tol: Tolerance = DEFAULT_TOLERANCE) -> PositiveClassRep:
    sigma = symplectic_form(c.modes)
    return PositiveClassRep(1j * (c.x @ sigma @ c.x.T - sigma) + c.y, tol)


def class_compose(p1, x1, p2) -> np.ndarray:
    """p-map image of a product: ``p1 + x1 p2 x1^T``."""
    p1 = np.asarray(getattr(p1, "p", p1), dtype=complex)
    p2 = np.asarray(getattr(p2, "p", p2), dtype=complex)
    x1 = as_real(x1, name="x1")
    if not (p1.shape == p2.shape == x1.shape):
        raise DimensionMismatch(f"shapes {p1.shape}, {x1.shape}, {p2.shape} differ")
    return p1 + x1 @ p2 @ x1.T


def channel_from_positive(
    p, tol: Tolerance = DEFAULT_TOLERANCE
) -> GaussianChannel:
    """A channel in the class of ``p``: ``y = Re p``, ``x sigma x^T = Im p + sigma``.

    ``x`` is the antisymmetric factor of ``Im p + sigma``, so it is only
    determined up to a right symplectic factor. Compare p-map images, not ``x``.
    """
    if not isinstance(p, PositiveClassRep):
        p = PositiveClassRep(p, tol)
    sigma = symplectic_form(p.modes)
    x = antisym_factor(p.p.imag + sigma, sigma, tol)
    return GaussianChannel(x, p.p.real, tol)


def kernel_projector(x: np.ndarray, tol: Tolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    """Orthogonal projector onto the kernel of ``x``."""
    rank, _ = numerical_rank(x, tol)
    _, _, vh = np.linalg.svd(x)
    basis = vh[rank:].T
    return basis @ basis.T


def _residual(c: GaussianChannel, product: GaussianChannel) -> float:
    scale = max(norm(c.x), norm(c.y), 1.0)
    return max(norm(product.x - c.x), norm(product.y - c.y)) / scale


def _divide_positive_class(
    c: GaussianChannel, epsilon: float, tol: Tolerance
) -> Division:
    p = p_map(c, tol).p
    left = channel_from_positive(epsilon * p, tol)
    x1 = left.x
    if is_singular(x1, tol):
        raise _RejectedEpsilon(f"left factor is singular at epsilon={epsilon}")

    x1_inv = np.linalg.inv(x1)
    p2 = (1.0 - epsilon) * (x1_inv @ p @ x1_inv.T)
    p2 = (p2 + p2.conj().T) / 2
    partner = channel_from_positive(p2, tol)

    # x1 x2 and x share a class, so s = x^-1 x1 x2 is symplectic
    s = np.linalg.solve(c.x, x1 @ partner.x)
    try:
        right = GaussianChannel(partner.x @ np.linalg.inv(s), partner.y, tol)
    except NotCompletelyPositive as exc:
        raise _RejectedEpsilon(f"right factor left the CP cone at epsilon={epsilon}") from exc
    residual = _residual(c, compose(left, right, tol))
    if residual > DIVISION_RESIDUAL:
        raise _RejectedEpsilon(f"composition residual {residual:.3e} at epsilon={epsilon}")
    return Division(
        left=left,
        right=right,
        branch="positive_class",
        residual=residual,
        epsilon=epsilon,
    )


def divide(
    c: GaussianChannel,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    epsilon: float | None = None,
) -> Division:
    """Split a non-reversible channel into two non-reversible factors.

    A singular ``x`` splits as ``(x, y) . (I, projector onto ker x)``.
    Otherwise the left factor is taken from ``epsilon * p(c)`` and approaches
    the identity as epsilon shrinks. The tenacity loop walks ``epsilon`` down
    ``EPSILON_CANDIDATES`` (``1/2, 1/4, ..., 2**-20``), one attempt per value,
    and retries only on a rejected candidate: a singular left factor, a right
    factor outside the CP cone, or a product residual above
    ``DIVISION_RESIDUAL``. An explicit ``epsilon`` is a single attempt.
    ``Division.attempts`` records how many were tried.
    """
    if is_reversible(c, tol):
        raise Reversible("reversible channels have no non-trivial division")

    if is_singular(c.x, tol):
        projector = kernel_projector(c.x, tol)
        right = GaussianChannel(np.identity(c.dim), projector, tol)
        residual = _residual(c, compose(c, right, tol))
        logger.debug("divide: singular x, kernel of dimension %d", round(np.trace(projector)))
        return Division(left=c, right=right, branch="kernel_projector", residual=residual)

    if epsilon is not None:
        if not 0.0 < epsilon < 1.0:
            raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
        candidates: Sequence[float] = (float(epsilon),)
    else:
        candidates = EPSILON_CANDIDATES

    try:
        for attempt in Retrying(
            stop=stop_after_attempt(len(candidates)),
            retry=retry_if_exception_type(_RejectedEpsilon),
            reraise=True,
        ):
            with attempt:
                number = attempt.retry_state.attempt_number
                eps = candidates[number - 1]
                logger.debug("divide: trying epsilon=%g", eps)
                division = _divide_positive_class(c, eps, tol)
    except _RejectedEpsilon as exc:
        raise NumericalFailure(
            f"no epsilon in {len(candidates)} candidates gave a valid division: {exc}"
        ) from exc
    return Division(
        left=division.left,
        right=division.right,
        branch=division.branch,
        residual=division.residual,
        epsilon=division.epsilon,
        attempts=number,
    )
