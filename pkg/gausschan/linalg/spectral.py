"""Shape checks, norms, and the Hermitian spectral tests behind every PSD verdict."""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np
import scipy.linalg as sla
from scipy.linalg import block_diag

from ..exceptions import DimensionMismatch, NonFinite, NonSquare
from ..logger import create_logger
from .tolerance import DEFAULT_TOLERANCE, Tolerance

logger = create_logger(__name__)


def as_real(m, *, name: str = "matrix") -> np.ndarray:
    """Return ``m`` as a finite float64 2-D array."""
    arr = np.array(m, dtype=float, ndmin=2)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got {arr.ndim} dimensions")
    if not np.all(np.isfinite(arr)):
        raise NonFinite(f"{name} has non-finite entries")
    return arr


def as_complex(m, *, name: str = "matrix") -> np.ndarray:
    """Return ``m`` as a finite complex128 2-D array."""
    arr = np.array(m, dtype=complex, ndmin=2)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got {arr.ndim} dimensions")
    if not (np.all(np.isfinite(arr.real)) and np.all(np.isfinite(arr.imag))):
        raise NonFinite(f"{name} has non-finite entries")
    return arr


def require_square(m: np.ndarray) -> int:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonSquare(m.shape)
    return m.shape[0]


def require_even(m: np.ndarray) -> int:
    dim = require_square(m)
    if dim % 2:
        raise DimensionMismatch(f"phase-space dimension must be even, got {dim}")
    return dim // 2


def norm(m: np.ndarray) -> float:
    """Spectral norm; zero for empty matrices."""
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def symplectic_form(n: int) -> np.ndarray:
    """Interleaved symplectic form: the direct sum of n copies of [[0, 1], [-1, 0]]."""
    one_mode = np.array([[0.0, 1.0], [-1.0, 0.0]])
    if n == 0:
        return np.zeros((0, 0))
    return block_diag(*([one_mode] * n))


def block_symplectic_form(n: int) -> np.ndarray:
    """Symplectic form in (q1..qn, p1..pn) ordering."""
    return np.block(
        [
            [np.zeros((n, n)), np.identity(n)],
            [-np.identity(n), np.zeros((n, n))],
        ]
    )


def symplectic_defect(s: np.ndarray) -> float:
    """Return ``||s sigma s^T - sigma||``."""
    n = require_even(s)
    sigma = symplectic_form(n)
    return norm(s @ sigma @ s.T - sigma)


def is_symplectic(s: np.ndarray, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    s = as_real(s)
    return symplectic_defect(s) <= tol.threshold(norm(s) ** 2)


def hermitian_part(m: np.ndarray, tol: Tolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    m = as_complex(m)
    require_square(m)
    deviation = norm(m - m.conj().T)
    if deviation > tol.rel_eps * norm(m) + tol.abs_eps:
        logger.warning("Symmetrizing a matrix with Hermitian deviation %.3e", deviation)
    return (m + m.conj().T) / 2


def min_eig_hermitian(m, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Smallest eigenvalue of the Hermitian part ``(m + m^*) / 2``."""
    h = hermitian_part(m, tol)
    if h.size == 0:
        return math.inf
    return float(np.linalg.eigvalsh(h)[0])


def psd_check(m, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True iff the Hermitian part of ``m`` is positive semidefinite within ``tol``."""
    m = as_complex(m)
    require_square(m)
    return min_eig_hermitian(m, tol) >= -tol.threshold(norm(m))


def psd_margin(m, tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[bool, float]:
    """Return ``(psd_check(m), min eigenvalue)`` for reports."""
    m = as_complex(m)
    require_square(m)
    lam = min_eig_hermitian(m, tol)
    return lam >= -tol.threshold(norm(m)), lam


def numerical_rank(m: np.ndarray, tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[int, bool]:
    """Rank by the singular value rule, and whether the call was ambiguous.

    Singular values up to ``abs_eps + rel_eps * s_max`` count as zero. A
    singular value above that threshold but below the square root of it
    (scaled by ``s_max``) makes the decision ambiguous.
    """
    if m.size == 0:
        return 0, False
    s = sla.svdvals(m)
    smax = float(s[0])
    threshold = tol.threshold(smax)
    band = math.sqrt(threshold * max(smax, 1.0))
    rank = int(np.sum(s > threshold))
    ambiguous = bool(np.any((s > threshold) & (s < band)))
    return rank, ambiguous


def is_singular(m: np.ndarray, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    if m.size == 0:
        return False
    s = sla.svdvals(m)
    return float(s[-1]) <= tol.threshold(float(s[0]))


def symmetric_part(m: np.ndarray) -> np.ndarray:
    return (m + m.T) / 2


def antisymmetric_part(m: np.ndarray) -> np.ndarray:
    return (m - m.T) / 2
