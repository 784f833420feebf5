"""Embeddability of ``x`` (or of a symplectic ``s``) into a one-parameter semigroup."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, List, Tuple

import numpy as np
import scipy.linalg as sla

from ..exceptions import IllConditioned, NotSymplectic
from ..linalg import (
    DEFAULT_TOLERANCE,
    JordanNegativeReport,
    Tolerance,
    antisymmetric_part,
    as_real,
    is_symplectic,
    norm,
    polar,
    real_log,
    real_log_exists,
    require_even,
    symmetric_part,
    symplectic_form,
)
from ..logger import create_logger
from .generators import Generator

logger = create_logger(__name__)


class EmbeddabilityStatus(str, Enum):
    YES = "yes"
    NO = "no"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True, eq=False)
class EmbeddabilityVerdict:
    """``YES`` carries a generator witness, ``NO`` the violated Jordan reports."""

    status: EmbeddabilityStatus
    generator: Generator | None = None
    reports: List[JordanNegativeReport] = field(default_factory=list)
    detail: str = ""
    hat_semigroup: Any | None = None

    @property
    def is_yes(self) -> bool:
        return self.status is EmbeddabilityStatus.YES


def generator_from_log(
    log_x: np.ndarray,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    reversible: bool = False,
) -> Generator:
    """Generator with drift ``log_x``: ``log_x sigma^T = a - h`` and ``b = ||a|| I``.

    With ``reversible`` the antisymmetric part must vanish and ``b = 0``.
    """
    log_x = as_real(log_x, name="log_x")
    sigma = symplectic_form(require_even(log_x))
    m = log_x @ sigma.T
    a = antisymmetric_part(m)
    h = -symmetric_part(m)
    if reversible:
        if norm(a) > tol.threshold(norm(m)):
            raise IllConditioned(f"logarithm is not Hamiltonian (||a|| = {norm(a):.3e})")
        zeros = np.zeros_like(a)
        return Generator(zeros, zeros, h, tol)
    b = norm(a) * np.identity(a.shape[0])
    return Generator(a, b, h, tol)


def _verdict_from_log(
    x: np.ndarray, tol: Tolerance, *, hamiltonian: bool
) -> EmbeddabilityVerdict:
    try:
        exists, reports = real_log_exists(x, tol)
        if not exists:
            unpaired = [r for r in reports if not r.paired]
            detail = "odd Jordan pairing" if reports else "x is singular"
            return EmbeddabilityVerdict(EmbeddabilityStatus.NO, reports=unpaired, detail=detail)
        log_x = real_log(x, tol)
    except IllConditioned as exc:
        logger.debug("embeddability undecided: %s", exc)
        return EmbeddabilityVerdict(EmbeddabilityStatus.INDETERMINATE, detail=str(exc))

    sigma = symplectic_form(x.shape[0] // 2)
    hamiltonian_part = norm(antisymmetric_part(log_x @ sigma.T))
    reversible = hamiltonian and hamiltonian_part <= tol.threshold(norm(log_x))
    generator = generator_from_log(log_x, tol, reversible=reversible)
    return EmbeddabilityVerdict(
        EmbeddabilityStatus.YES, generator=generator, reports=reports, detail="real logarithm"
    )


def embeddable_x(x, tol: Tolerance = DEFAULT_TOLERANCE) -> EmbeddabilityVerdict:
    """Is ``x`` the ``x_1`` of some one-parameter semigroup?

    Yes iff ``x`` has a real logarithm. The witness uses ``b = ||a|| I``.
    """
    x = as_real(x, name="x")
    require_even(x)
    return _verdict_from_log(x, tol, hamiltonian=False)


def _minus_one_distance(s: np.ndarray) -> float:
    return float(np.min(np.abs(np.linalg.eigvals(s) + 1.0)))


def in_exp_sp(s, tol: Tolerance = DEFAULT_TOLERANCE) -> EmbeddabilityVerdict:
    """Is the symplectic ``s`` an exponential of a Hamiltonian matrix?

    Decided by the real-logarithm test when ``-1`` is not an eigenvalue;
    ``Indeterminate`` otherwise.
    """
    s = as_real(s, name="s")
    if not is_symplectic(s, tol):
        raise NotSymplectic("in_exp_sp needs a symplectic matrix")
    distance = _minus_one_distance(s)
    if distance <= math.sqrt(tol.threshold(norm(s))):
        logger.debug("in_exp_sp: -1 is an eigenvalue (distance %.3e)", distance)
        return EmbeddabilityVerdict(
            EmbeddabilityStatus.INDETERMINATE, detail="-1 is an eigenvalue"
        )
    return _verdict_from_log(s, tol, hamiltonian=True)


def split_exp_sp(s, tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[np.ndarray, np.ndarray]:
    """``s = p o`` with ``p`` positive definite and ``o`` orthogonal, both symplectic."""
    s = as_real(s, name="s")
    if not is_symplectic(s, tol):
        raise NotSymplectic("split_exp_sp needs a symplectic matrix")
    p, o = polar(s, tol)
    return p, o


def hamiltonian_log(s, tol: Tolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    """Logarithm in sp(2n) of a positive definite or orthogonal symplectic matrix.

    A symmetric ``s`` with a non-positive eigenvalue (``-I`` for one) is
    orthogonal, and takes the hat logarithm with angles in ``(-pi, pi]``.
    """
    s = as_real(s, name="s")
    dim = 2 * require_even(s)
    scale = max(1.0, norm(s))
    if norm(s - s.T) <= tol.threshold(scale):
        w, v = np.linalg.eigh(symmetric_part(s))
        if w[0] > tol.threshold(scale):
            return (v * np.log(w)[np.newaxis, :]) @ v.T
    if norm(s @ s.T - np.identity(dim)) <= tol.threshold(scale):
        from ..gauge import hat_matrix, unhat_matrix

        t, w = sla.schur(hat_matrix(s), output="complex")
        angles = np.angle(np.diag(t))
        log_u = (w * (1j * angles)[np.newaxis, :]) @ w.conj().T
        return unhat_matrix(log_u)
    raise ValueError("hamiltonian_log needs a positive definite or orthogonal symplectic matrix")


def split_generators(
    s, tol: Tolerance = DEFAULT_TOLERANCE
) -> Tuple[Generator, Generator]:
    """Reversible generators whose time-one maps are the two polar factors of ``s``."""
    p, o = split_exp_sp(s, tol)
    return (
        generator_from_log(hamiltonian_log(p, tol), tol, reversible=True),
        generator_from_log(hamiltonian_log(o, tol), tol, reversible=True),
    )
