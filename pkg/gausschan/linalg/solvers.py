from __future__ import annotations

import numpy as np

from ..exceptions import DimensionMismatch, SingularKroneckerSum
from ..logger import create_logger
from .logarithm import expm
from .spectral import as_real, norm, require_square, symmetric_part
from .tolerance import DEFAULT_TOLERANCE, Tolerance

logger = create_logger(__name__)


def kron_pair_gap(a) -> float:
    """Smallest ``|lambda_i + lambda_j|`` over eigenvalue pairs of ``a``."""
    a = as_real(a)
    require_square(a)
    if a.size == 0:
        return float("inf")
    ev = np.linalg.eigvals(a)
    return float(np.min(np.abs(ev[:, np.newaxis] + ev[np.newaxis, :])))


def kron_sum_is_singular(a, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    a = as_real(a)
    return kron_pair_gap(a) <= tol.threshold(norm(a))


def kron_sum_solve(
    a,
    rhs,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    allow_singular: bool = False,
) -> np.ndarray:
    """Solve ``a Z + Z a^T = rhs``.

    The system is ``(a (x) I + I (x) a) vec(Z) = vec(rhs)`` with row-major
    vectorization. A singular Kronecker sum raises ``SingularKroneckerSum``
    unless ``allow_singular`` is set and the system is consistent, in which
    case the minimum-norm least squares solution is returned.
    """
    a = as_real(a, name="a")
    rhs = as_real(rhs, name="rhs")
    dim = require_square(a)
    if rhs.shape != a.shape:
        raise DimensionMismatch(f"a has shape {a.shape}, rhs has shape {rhs.shape}")
    if dim == 0:
        return rhs.copy()

    identity = np.identity(dim)
    kron_sum = np.kron(a, identity) + np.kron(identity, a)
    target = rhs.reshape(-1)
    gap = kron_pair_gap(a)

    if gap > tol.threshold(norm(a)):
        z = np.linalg.solve(kron_sum, target).reshape(dim, dim)
    else:
        if not allow_singular:
            raise SingularKroneckerSum(gap)
        solution, *_ = np.linalg.lstsq(kron_sum, target, rcond=None)
        residual = float(np.linalg.norm(kron_sum @ solution - target))
        if residual > tol.threshold(max(norm(rhs), 1.0)):
            logger.debug("kron_sum_solve: inconsistent system, residual %.3e", residual)
            raise SingularKroneckerSum(gap)
        logger.debug("kron_sum_solve: singular but consistent, using minimum-norm solution")
        z = solution.reshape(dim, dim)

    if norm(rhs - rhs.T) <= tol.threshold(norm(rhs)):
        z = symmetric_part(z)
    return z


def vanloan_noise_integral(f, c, t: float) -> np.ndarray:
    """Return the integral of ``e^{s f^T} c e^{s f}`` over ``s`` in ``[0, t]``.

    One exponential of ``[[-f^T, c], [0, f]]`` gives ``[[F11, F12], [0, F22]]``
    and the integral is ``F22^T F12``.
    """
    f = as_real(f, name="f")
    c = as_real(c, name="c")
    dim = require_square(f)
    if c.shape != f.shape:
        raise DimensionMismatch(f"f has shape {f.shape}, c has shape {c.shape}")
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    if t == 0 or dim == 0:
        return np.zeros_like(f)

    block = np.zeros((2 * dim, 2 * dim))
    block[:dim, :dim] = -f.T
    block[:dim, dim:] = c
    block[dim:, dim:] = f
    G = expm(block, t)
    return symmetric_part(G[dim:, dim:].T @ G[:dim, dim:])
