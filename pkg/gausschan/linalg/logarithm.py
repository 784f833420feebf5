"""Matrix exponential and real logarithm with explicit Jordan bookkeeping.

A real matrix has a real logarithm iff it is nonsingular and, for every
negative eigenvalue, each Jordan block size occurs an even number of times.
The logarithm is assembled from an ordered real Schur form: the principal
branch on everything off the negative axis and a rotation by pi on paired
negative blocks.
"""

from __future__ import annotations

import math
from typing import List, Tuple

import numpy as np
import scipy.linalg as sla

from ..exceptions import IllConditioned, NoRealLog, Overflow
from ..logger import create_logger
from .spectral import as_real, is_singular, norm, numerical_rank, require_square
from .tolerance import DEFAULT_TOLERANCE, JordanNegativeReport, Tolerance

logger = create_logger(__name__)

LOG_RESIDUAL = 1e-6


def expm(m, t: float = 1.0) -> np.ndarray:
    """Return ``e^{t m}`` by scaling and squaring with a Pade approximant."""
    m = as_real(m)
    require_square(m)
    if m.size == 0:
        return m.copy()
    try:
        with np.errstate(over="raise", invalid="raise"):
            result = sla.expm(float(t) * m)
    except (FloatingPointError, OverflowError) as exc:
        raise Overflow("expm") from exc
    if not np.all(np.isfinite(result)):
        raise Overflow("expm")
    return np.real_if_close(result).astype(float)


def _negative_radius(x: np.ndarray, tol: Tolerance) -> float:
    return math.sqrt(tol.threshold(norm(x)))


def _negative_clusters(x: np.ndarray, tol: Tolerance) -> List[Tuple[float, int]]:
    """Group eigenvalues near the negative real axis into (centre, count) pairs."""
    radius = _negative_radius(x, tol)
    eig = np.linalg.eigvals(x)
    negative = sorted(float(ev.real) for ev in eig if ev.real < 0 and abs(ev.imag) <= radius)
    clusters: List[List[float]] = []
    for value in negative:
        if clusters and value - clusters[-1][-1] <= radius * max(1.0, abs(value)):
            clusters[-1].append(value)
        else:
            clusters.append([value])
    return [(float(np.mean(group)), len(group)) for group in clusters]


def _jordan_blocks(x: np.ndarray, lam: float, count: int, tol: Tolerance) -> Tuple[int, ...]:
    dim = x.shape[0]
    shifted = x - lam * np.identity(dim)
    ranks = [dim]
    power = np.identity(dim)
    for k in range(1, count + 2):
        power = power @ shifted
        rank, ambiguous = numerical_rank(power, tol)
        if ambiguous:
            raise IllConditioned(f"rank of (x - ({lam:.6g})I)^{k} is within the tolerance band")
        ranks.append(rank)
        if rank == ranks[-2]:
            break
    while len(ranks) < count + 3:
        ranks.append(ranks[-1])

    sizes: List[int] = []
    for k in range(1, len(ranks) - 1):
        at_least_k = ranks[k - 1] - ranks[k]
        at_least_next = ranks[k] - ranks[k + 1]
        sizes.extend([k] * (at_least_k - at_least_next))
    if sum(sizes) != count:
        raise IllConditioned(
            f"Jordan structure at {lam:.6g} accounts for {sum(sizes)} of {count} eigenvalues"
        )
    return tuple(sorted(sizes, reverse=True))


def real_log_exists(
    x, tol: Tolerance = DEFAULT_TOLERANCE
) -> Tuple[bool, List[JordanNegativeReport]]:
    """Decide whether ``x`` has a real logarithm.

    Returns the verdict and one report per negative real eigenvalue. A
    singular ``x`` gives ``(False, [])``.
    """
    x = as_real(x)
    require_square(x)
    if x.size == 0:
        return True, []
    if is_singular(x, tol):
        logger.debug("real_log_exists: matrix is singular")
        return False, []
    reports = [
        JordanNegativeReport(eigenvalue=lam, block_sizes=_jordan_blocks(x, lam, count, tol))
        for lam, count in _negative_clusters(x, tol)
    ]
    return all(report.paired for report in reports), reports


def split_negative_spectrum(
    x, tol: Tolerance = DEFAULT_TOLERANCE
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Block-diagonalize ``x`` as ``M diag(x_neg, x_rest) M^-1``.

    ``x_neg`` carries exactly the eigenvalues on the negative real axis.
    """
    x = as_real(x)
    dim = require_square(x)
    radius = _negative_radius(x, tol)

    def _on_negative_axis(re, im=0.0):
        return re < 0 and abs(im) <= radius

    try:
        T, Z, k = sla.schur(x, output="real", sort=_on_negative_axis)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise IllConditioned(f"ordered Schur form failed: {exc}") from exc

    if k == 0:
        return np.identity(dim), np.zeros((0, 0)), x.copy()
    if k == dim:
        return np.identity(dim), x.copy(), np.zeros((0, 0))

    T11, T12, T22 = T[:k, :k], T[:k, k:], T[k:, k:]
    W = sla.solve_sylvester(T11, -T22, -T12)
    Q = np.identity(dim)
    Q[:k, k:] = W
    return Z @ Q, T11, T22


def _principal_log(x: np.ndarray) -> np.ndarray:
    if x.size == 0:
        return x.copy()
    L = sla.logm(x)
    if isinstance(L, tuple):
        L = L[0]
    imag = float(np.linalg.norm(np.imag(L)))
    if imag > 1e-8 * max(1.0, float(np.linalg.norm(L))):
        raise IllConditioned(f"principal logarithm has imaginary part {imag:.3e}")
    return np.real(L)


def _paired_negative_log(
    x_neg: np.ndarray, reports: List[JordanNegativeReport]
) -> np.ndarray:
    dim = x_neg.shape[0]
    rotation = np.array([[0.0, math.pi], [-math.pi, 0.0]])
    bases = []
    blocks = []
    for report in reports:
        if any(size > 1 for size in report.block_sizes):
            raise IllConditioned(
                f"negative eigenvalue {report.eigenvalue:.6g} is defective "
                f"(blocks {list(report.block_sizes)})"
            )
        count = report.multiplicity
        _, _, vh = np.linalg.svd(x_neg - report.eigenvalue * np.identity(dim))
        bases.append(vh[dim - count :].T)
        log_abs = math.log(abs(report.eigenvalue))
        blocks.extend([log_abs * np.identity(2) + rotation] * (count // 2))
    P = np.hstack(bases)
    if P.shape[1] != dim:
        raise IllConditioned("negative eigenspaces do not span the negative block")
    return P @ sla.block_diag(*blocks) @ np.linalg.inv(P)


def real_log(x, tol: Tolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    """Return a real ``L`` with ``expm(L) = x``."""
    x = as_real(x)
    dim = require_square(x)
    exists, reports = real_log_exists(x, tol)
    if not exists:
        raise NoRealLog([r for r in reports if not r.paired])

    if not reports:
        L = _principal_log(x)
    else:
        M, x_neg, x_rest = split_negative_spectrum(x, tol)
        L_neg = _paired_negative_log(x_neg, reports)
        L_rest = _principal_log(x_rest)
        L = M @ sla.block_diag(L_neg, L_rest) @ np.linalg.inv(M)
        logger.debug("real_log: paired %d negative eigenvalues", x_neg.shape[0])

    if dim:
        residual = norm(expm(L) - x)
        if residual > LOG_RESIDUAL * max(norm(x), 1.0):
            raise IllConditioned(f"real logarithm round trip residual {residual:.3e}")
    return L
