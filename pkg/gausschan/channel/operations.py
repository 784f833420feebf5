"""Channel algebra: complete positivity, products, the pi embedding and the action on states."""

from __future__ import annotations

import numpy as np

from ..exceptions import DimensionMismatch, NotSymmetric
from ..linalg import (
    DEFAULT_TOLERANCE,
    Tolerance,
    as_real,
    min_eig_hermitian,
    norm,
    psd_check,
    require_even,
    symplectic_defect,
    symplectic_form,
)
from ..logger import create_logger
from .types import GaussianChannel, GaussianState, cp_matrix

logger = create_logger(__name__)


def _require_same_modes(*channels) -> int:
    modes = {c.modes for c in channels}
    if len(modes) != 1:
        raise DimensionMismatch(f"mode counts differ: {sorted(modes)}")
    return modes.pop()


def cp_margin(x, y, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Smallest eigenvalue of ``y + i (x sigma x^T - sigma)``."""
    x = as_real(x, name="x")
    y = as_real(y, name="y")
    require_even(x)
    if x.shape != y.shape:
        raise DimensionMismatch(f"x has shape {x.shape}, y has shape {y.shape}")
    if norm(y - y.T) > tol.threshold(norm(y)):
        raise NotSymmetric(f"||y - y^T|| = {norm(y - y.T):.3e}")
    return min_eig_hermitian(cp_matrix(x, (y + y.T) / 2), tol)


def cp_check(x, y, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True iff ``(x, y)`` satisfies ``y >= i (sigma - x sigma x^T)``."""
    x = as_real(x, name="x")
    y = as_real(y, name="y")
    cp_margin(x, y, tol)
    return psd_check(cp_matrix(x, (y + y.T) / 2), tol)


def compose(
    c1: GaussianChannel, c2: GaussianChannel, tol: Tolerance = DEFAULT_TOLERANCE
) -> GaussianChannel:
    """Product ``(x1 x2, y1 + x1 y2 x1^T)``: the signal passes ``c2`` first."""
    _require_same_modes(c1, c2)
    x = c1.x @ c2.x
    y = c1.y + c1.x @ c2.y @ c1.x.T
    cp = cp_matrix(x, (y + y.T) / 2)
    lam = min_eig_hermitian(cp, tol)
    if lam < -tol.threshold(norm(cp)):
        logger.warning("compose: product drifted outside the CP cone (min eigenvalue %.3e)", lam)
    return GaussianChannel._trusted(x, y)


def apply_to_state(c: GaussianChannel, state: GaussianState) -> GaussianState:
    if c.modes != state.modes:
        raise DimensionMismatch(f"channel has {c.modes} modes, state has {state.modes}")
    return GaussianState(c.x @ state.mean, c.x @ state.cov @ c.x.T + c.y)


def embed_pi(c: GaussianChannel) -> np.ndarray:
    """Injective homomorphism into matrices of size ``4n^2 + 2n + 1``.

    ``[[x (x) x, vec y, 0], [0, 1, 0], [0, 0, x]]`` with row-major ``vec``.
    """
    d = c.dim
    size = d * d + 1 + d
    pi = np.zeros((size, size))
    pi[: d * d, : d * d] = np.kron(c.x, c.x)
    pi[: d * d, d * d] = c.y.reshape(-1)
    pi[d * d, d * d] = 1.0
    pi[d * d + 1 :, d * d + 1 :] = c.x
    return pi


def is_reversible(c: GaussianChannel, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Reversible iff ``x`` is symplectic and ``y = 0``."""
    symplectic = symplectic_defect(c.x) <= tol.threshold(norm(c.x) ** 2)
    return symplectic and norm(c.y) <= tol.threshold(1.0)


def distance_from_identity(c: GaussianChannel) -> float:
    """``max(||x - I||, ||y||)``; reported, never used in a verdict."""
    return max(norm(c.x - np.identity(c.dim)), norm(c.y))


def symplectic_conjugate(
    c: GaussianChannel, s, tol: Tolerance = DEFAULT_TOLERANCE
) -> GaussianChannel:
    """``(s, 0) . c . (s^-1, 0)``."""
    s = as_real(s, name="s")
    if s.shape != c.x.shape:
        raise DimensionMismatch(f"s has shape {s.shape}, channel has dimension {c.dim}")
    left = GaussianChannel.reversible(s, tol)
    right = GaussianChannel.reversible(np.linalg.inv(s), tol)
    return compose(compose(left, c, tol), right, tol)


def same_class(
    c1: GaussianChannel, c2: GaussianChannel, tol: Tolerance = DEFAULT_TOLERANCE
) -> bool:
    """Equal p-map images: ``y1 = y2`` and ``x1 sigma x1^T = x2 sigma x2^T``."""
    _require_same_modes(c1, c2)
    sigma = symplectic_form(c1.modes)
    form1 = c1.x @ sigma @ c1.x.T
    form2 = c2.x @ sigma @ c2.x.T
    scale = max(norm(form1), norm(c1.y), 1.0)
    bound = tol.threshold(scale)
    return norm(c1.y - c2.y) <= bound and norm(form1 - form2) <= bound
