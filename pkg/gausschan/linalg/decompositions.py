from __future__ import annotations

from typing import List, Tuple

import numpy as np
import scipy.linalg as sla

from ..exceptions import NotAntisymmetric, NotPositiveDefinite, NotSymmetric, Singular
from ..logger import create_logger
from .spectral import (
    antisymmetric_part,
    as_real,
    is_singular,
    norm,
    require_even,
    symmetric_part,
    symplectic_form,
)
from .tolerance import DEFAULT_TOLERANCE, Tolerance

logger = create_logger(__name__)


def antisymmetric_canonical_form(
    m, tol: Tolerance = DEFAULT_TOLERANCE
) -> Tuple[np.ndarray, np.ndarray]:
    """Orthogonal ``R`` and ``b`` (descending, ``b >= 0``) with ``R^T m R = sum b_j sigma1``.

    Each 2x2 block of the real Schur form is oriented to a nonnegative
    parameter by swapping its two basis vectors. One-dimensional zero blocks
    are paired up.
    """
    m = as_real(m)
    dim = 2 * require_even(m)
    if norm(m + m.T) > tol.threshold(norm(m)):
        raise NotAntisymmetric(f"||m + m^T|| = {norm(m + m.T):.3e}")
    if dim == 0:
        return np.zeros((0, 0)), np.zeros(0)
    T, Z = sla.schur(antisymmetric_part(m), output="real")

    blocks: List[Tuple[float, np.ndarray, np.ndarray]] = []
    zeros: List[np.ndarray] = []
    i = 0
    while i < dim:
        if i + 1 < dim and T[i + 1, i] != 0.0:
            b = (T[i, i + 1] - T[i + 1, i]) / 2
            u, v = Z[:, i], Z[:, i + 1]
            if b < 0:
                u, v, b = v, u, -b
            blocks.append((float(b), u, v))
            i += 2
        else:
            zeros.append(Z[:, i])
            i += 1
    for j in range(0, len(zeros), 2):
        blocks.append((0.0, zeros[j], zeros[j + 1]))

    blocks.sort(key=lambda block: -block[0])
    R = np.column_stack([vec for _, u, v in blocks for vec in (u, v)])
    b = np.array([block[0] for block in blocks])
    return R, b


def antisym_factor(
    m, sigma: np.ndarray | None = None, tol: Tolerance = DEFAULT_TOLERANCE
) -> np.ndarray:
    """Return ``N`` with ``N sigma N^T = m`` for antisymmetric ``m``."""
    m = as_real(m)
    n = require_even(m)
    if sigma is not None and norm(as_real(sigma) - symplectic_form(n)) > tol.abs_eps:
        raise ValueError("sigma must be the interleaved symplectic form")
    R, b = antisymmetric_canonical_form(m, tol)
    if R.size == 0:
        return R
    scale = np.repeat(np.sqrt(b), 2)
    return R * scale[np.newaxis, :]


def polar(s, tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[np.ndarray, np.ndarray]:
    """Left polar decomposition ``s = P O``; ``P`` positive definite, ``O`` orthogonal."""
    s = as_real(s)
    if is_singular(s, tol):
        raise Singular("polar decomposition needs a nonsingular matrix")
    O, P = sla.polar(s, side="left")
    return symmetric_part(P), O


def williamson(m, tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[np.ndarray, List[float]]:
    """Symplectic ``S`` with ``S m S^T = sum y_j I_2``; ``y`` ascending.

    Built from the canonical form of ``m^{-1/2} sigma m^{-1/2}``.
    """
    m = as_real(m)
    n = require_even(m)
    if norm(m - m.T) > tol.threshold(norm(m)):
        raise NotSymmetric(f"||m - m^T|| = {norm(m - m.T):.3e}")
    m = symmetric_part(m)
    if n == 0:
        return np.zeros((0, 0)), []
    w, V = np.linalg.eigh(m)
    if w[0] <= tol.threshold(norm(m)):
        raise NotPositiveDefinite(f"min eigenvalue {w[0]:.3e}")
    inv_half = (V / np.sqrt(w)) @ V.T

    R, b = antisymmetric_canonical_form(inv_half @ symplectic_form(n) @ inv_half, tol)
    scale = np.repeat(1.0 / np.sqrt(b), 2)
    S = (scale[:, np.newaxis] * R.T) @ inv_half
    return S, [float(1.0 / bj) for bj in b]
