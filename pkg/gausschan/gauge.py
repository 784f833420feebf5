"""Gauge-covariant channels through the hat isomorphism.

A real ``2n x 2n`` matrix commuting with sigma has, in block ordering
``(q1..qn, p1..pn)``, the form ``[[A, B], [-B, A]]``; its hat is the complex
``n x n`` matrix ``A + iB``. The hat is a *-homomorphism with
``hat(sigma) = iI`` and ``hat(M^T) = hat(M)^*``, so gauge-covariant channels
become pairs ``(x_hat, y_hat)`` with ``y_hat >= +-(I - x_hat x_hat^*)``.
"""

from __future__ import annotations

import logging
from dataclasses import InitVar, dataclass, field
from enum import Enum
from typing import Tuple

import numpy as np
import scipy.linalg as sla

from .channel import GaussianChannel
from .exceptions import DimensionMismatch, GaussChanError, NotCP, NotGaugeCovariant, NotHermitian
from .linalg import (
    DEFAULT_TOLERANCE,
    Tolerance,
    as_complex,
    as_real,
    min_eig_hermitian,
    norm,
    psd_check,
    require_even,
    require_square,
    symplectic_form,
)
from .logger import create_logger
from .semigroup import (
    EmbeddabilityStatus,
    EmbeddabilityVerdict,
    embeddable_x,
    evolve,
    generator_from_drift,
)

logger = create_logger(__name__)

MEMBERSHIP_TIMES = (0.5, 1.0)
MEMBERSHIP_RESIDUAL = 1e-6


def interleaved_to_block(n: int) -> np.ndarray:
    """Index permutation taking ``(q1, p1, ..., qn, pn)`` to ``(q1..qn, p1..pn)``."""
    return np.concatenate([np.arange(0, 2 * n, 2), np.arange(1, 2 * n, 2)])


def block_to_interleaved(n: int) -> np.ndarray:
    return np.argsort(interleaved_to_block(n))


def _permute(m: np.ndarray, perm: np.ndarray) -> np.ndarray:
    return m[np.ix_(perm, perm)]


def commutator_with_sigma(m: np.ndarray) -> float:
    sigma = symplectic_form(m.shape[0] // 2)
    return norm(m @ sigma - sigma @ m)


def hat_matrix(m, tol: Tolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    """``A + iB`` for an interleaved real matrix commuting with sigma."""
    m = as_real(m)
    n = require_even(m)
    if commutator_with_sigma(m) > tol.threshold(max(1.0, norm(m))):
        raise NotGaugeCovariant(f"[m, sigma] has norm {commutator_with_sigma(m):.3e}")
    block = _permute(m, interleaved_to_block(n))
    a = (block[:n, :n] + block[n:, n:]) / 2
    b = (block[:n, n:] - block[n:, :n]) / 2
    return a + 1j * b


def unhat_matrix(z) -> np.ndarray:
    """Inverse of :func:`hat_matrix`: ``[[Re z, Im z], [-Im z, Re z]]`` in interleaved order."""
    z = as_complex(z)
    n = require_square(z)
    block = np.block([[z.real, z.imag], [-z.imag, z.real]])
    return _permute(block, block_to_interleaved(n))


def hat_psd_check(m, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """For symmetric ``m`` commuting with sigma: ``m >= 0`` iff ``A +- iB >= 0``."""
    z = hat_matrix(m, tol)
    return psd_check(z, tol) and psd_check(z.conj(), tol)


def is_gauge_covariant(c: GaussianChannel, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    x_ok = commutator_with_sigma(c.x) <= tol.threshold(norm(c.x))
    return x_ok and commutator_with_sigma(c.y) <= tol.threshold(max(1.0, norm(c.y)))


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class GaugeChannel:
    """Hat image ``(x_hat, y_hat)`` of a gauge-covariant channel."""

    x_hat: np.ndarray
    y_hat: np.ndarray
    tol: InitVar[Tolerance] = DEFAULT_TOLERANCE

    def __post_init__(self, tol: Tolerance) -> None:
        x_hat = as_complex(self.x_hat, name="x_hat")
        y_hat = as_complex(self.y_hat, name="y_hat")
        n = require_square(x_hat)
        if y_hat.shape != (n, n):
            raise DimensionMismatch(f"x_hat is {n}x{n}, y_hat has shape {y_hat.shape}")
        if norm(y_hat - y_hat.conj().T) > tol.threshold(norm(y_hat)):
            raise NotHermitian(f"||y_hat - y_hat^*|| = {norm(y_hat - y_hat.conj().T):.3e}")
        y_hat = (y_hat + y_hat.conj().T) / 2
        gap = np.identity(n) - x_hat @ x_hat.conj().T
        for bound in (y_hat - gap, y_hat + gap):
            lam = min_eig_hermitian(bound, tol)
            if lam < -tol.threshold(norm(bound)):
                raise NotCP(lam)
        object.__setattr__(self, "x_hat", _readonly(x_hat))
        object.__setattr__(self, "y_hat", _readonly(y_hat))

    @property
    def modes(self) -> int:
        return self.x_hat.shape[0]

    def __repr__(self) -> str:
        return f"GaugeChannel(modes={self.modes})"

    def compose(
        self, other: "GaugeChannel", tol: Tolerance = DEFAULT_TOLERANCE
    ) -> "GaugeChannel":
        x = self.x_hat
        return GaugeChannel(x @ other.x_hat, self.y_hat + x @ other.y_hat @ x.conj().T, tol)


def gauge_unitary(u, tol: Tolerance = DEFAULT_TOLERANCE) -> GaussianChannel:
    """Reversible channel of a unitary ``u``."""
    u = as_complex(u, name="u")
    return GaussianChannel.reversible(unhat_matrix(u), tol)


def hat(c: GaussianChannel, tol: Tolerance = DEFAULT_TOLERANCE) -> GaugeChannel:
    if not is_gauge_covariant(c, tol):
        raise NotGaugeCovariant("x or y does not commute with sigma")
    x_hat = hat_matrix(c.x, tol)
    y_hat = hat_matrix(c.y, tol)
    if logger.isEnabledFor(logging.DEBUG):
        drift = norm(hat_matrix(c.x @ c.y, tol) - x_hat @ y_hat)
        logger.debug("hat: multiplicativity defect %.3e", drift)
    return GaugeChannel(x_hat, y_hat, tol)


def unhat(g: GaugeChannel, tol: Tolerance = DEFAULT_TOLERANCE) -> GaussianChannel:
    return GaussianChannel(unhat_matrix(g.x_hat), unhat_matrix(g.y_hat), tol)


def polar_split(
    g: GaugeChannel, tol: Tolerance = DEFAULT_TOLERANCE
) -> Tuple[GaugeChannel, GaugeChannel]:
    """``(reversible, rest)`` with ``rest.compose(reversible) == g``.

    ``x_hat^* = U K`` gives ``x_hat = K U^*``; the reversible part carries ``U^*``
    and the rest is ``(K, y_hat)`` with ``K = (x_hat x_hat^*)^{1/2}``.
    """
    u, k = sla.polar(g.x_hat.conj().T, side="right")
    n = g.modes
    reversible = GaugeChannel(u.conj().T, np.zeros((n, n)), tol)
    rest = GaugeChannel((k + k.conj().T) / 2, g.y_hat, tol)
    return reversible, rest


class GaugeCase(str, Enum):
    STATE_PREPARATION = "state_preparation"
    CONTRACTIVE_WITH_INVARIANT = "contractive_with_invariant"
    ADDITIVE_NOISE = "additive_noise"
    AMPLIFYING = "amplifying"
    MIXED = "mixed"


@dataclass(frozen=True, eq=False)
class GaugeClassification:
    case: GaugeCase
    unitary_factor: np.ndarray
    k_hat: np.ndarray
    spectrum: Tuple[float, ...]
    invariant_cov: np.ndarray | None = None
    anchor: np.ndarray | None = None
    components: Tuple["GaugeClassification", ...] = field(default_factory=tuple)


def _band(k: float, eps: float) -> GaugeCase:
    if k <= eps:
        return GaugeCase.STATE_PREPARATION
    if k < 1.0 - eps:
        return GaugeCase.CONTRACTIVE_WITH_INVARIANT
    if k <= 1.0 + eps:
        return GaugeCase.ADDITIVE_NOISE
    return GaugeCase.AMPLIFYING


def schur_anchor(k_hat: np.ndarray, y_hat: np.ndarray) -> np.ndarray:
    """Solve ``Y - K Y K = y_hat`` entrywise in the eigenbasis of ``K``."""
    k, w = np.linalg.eigh(k_hat)
    y_eig = w.conj().T @ y_hat @ w
    nu = y_eig / (1.0 - np.outer(k, k))
    anchor = w @ nu @ w.conj().T
    return (anchor + anchor.conj().T) / 2


def _classify_pure(
    case: GaugeCase,
    rest: GaugeChannel,
    unitary: np.ndarray,
    spectrum: Tuple[float, ...],
    tol: Tolerance,
) -> GaugeClassification:
    k_hat, y_hat = np.array(rest.x_hat), np.array(rest.y_hat)
    n = rest.modes
    identity = np.identity(n)
    result = dict(case=case, unitary_factor=unitary, k_hat=k_hat, spectrum=spectrum)

    if case is GaugeCase.STATE_PREPARATION:
        if not psd_check(y_hat - identity, tol):
            raise NotCP(min_eig_hermitian(y_hat - identity, tol))
        return GaugeClassification(invariant_cov=y_hat, **result)
    if case is GaugeCase.ADDITIVE_NOISE:
        if not psd_check(y_hat, tol):
            raise NotCP(min_eig_hermitian(y_hat, tol))
        return GaugeClassification(**result)

    anchor = schur_anchor(k_hat, y_hat)
    if case is GaugeCase.CONTRACTIVE_WITH_INVARIANT:
        if not psd_check(anchor - identity, tol):
            raise NotCP(min_eig_hermitian(anchor - identity, tol))
        return GaugeClassification(invariant_cov=anchor, anchor=anchor, **result)
    if not psd_check(-identity - anchor, tol):
        raise NotCP(min_eig_hermitian(-identity - anchor, tol))
    return GaugeClassification(anchor=anchor, **result)


def classify(g: GaugeChannel, tol: Tolerance = DEFAULT_TOLERANCE) -> GaugeClassification:
    """Classify by the spectrum of ``K`` after splitting off the unitary factor.

    Pure cases need every eigenvalue of ``K`` in one band. A mixed spectrum is
    decomposed into eigenspace blocks when ``K`` commutes with ``y_hat``.
    """
    reversible, rest = polar_split(g, tol)
    unitary = np.array(reversible.x_hat)
    k, w = np.linalg.eigh(np.array(rest.x_hat))
    spectrum = tuple(float(v) for v in k)
    eps = tol.threshold(1.0)
    bands = [_band(v, eps) for v in k]

    if len(set(bands)) == 1:
        return _classify_pure(bands[0], rest, unitary, spectrum, tol)

    k_hat, y_hat = np.array(rest.x_hat), np.array(rest.y_hat)
    components = []
    if norm(k_hat @ y_hat - y_hat @ k_hat) <= tol.threshold(max(1.0, norm(y_hat))):
        y_eig = w.conj().T @ y_hat @ w
        for case in dict.fromkeys(bands):
            idx = [i for i, band in enumerate(bands) if band is case]
            sub = GaugeChannel(np.diag(k[idx]), y_eig[np.ix_(idx, idx)], tol)
            sub_unitary = np.identity(len(idx), dtype=complex)
            sub_spectrum = tuple(spectrum[i] for i in idx)
            components.append(_classify_pure(case, sub, sub_unitary, sub_spectrum, tol))
    else:
        logger.debug("classify: K does not commute with y_hat, reporting the partition only")
    return GaugeClassification(
        case=GaugeCase.MIXED,
        unitary_factor=unitary,
        k_hat=k_hat,
        spectrum=spectrum,
        components=tuple(components),
    )


def _hermitian_function(m: np.ndarray, fn) -> np.ndarray:
    values, vectors = np.linalg.eigh(m)
    return (vectors * fn(values)[np.newaxis, :]) @ vectors.conj().T


@dataclass(frozen=True, eq=False)
class HatSemigroup:
    """``x_t = K^t`` with ``y_t = Y - K^t Y K^t``, or ``(I, t y)`` when ``K = I``."""

    k_hat: np.ndarray
    anchor: np.ndarray | None = None
    noise_rate: np.ndarray | None = None

    def at(self, t: float, tol: Tolerance = DEFAULT_TOLERANCE) -> GaugeChannel:
        if self.anchor is None:
            n = self.k_hat.shape[0]
            return GaugeChannel(np.identity(n), t * self.noise_rate, tol)
        x_t = _hermitian_function(self.k_hat, lambda v: v**t)
        return GaugeChannel(x_t, self.anchor - x_t @ self.anchor @ x_t, tol)

    def drift(self) -> np.ndarray:
        """Real drift ``f`` with ``e^f = unhat(K)``."""
        if self.anchor is None:
            return np.zeros((2 * self.k_hat.shape[0],) * 2)
        return unhat_matrix(_hermitian_function(self.k_hat, np.log))

    def noise_generator_rate(self) -> np.ndarray:
        """``c = -(f Y + Y f^T)`` so that ``y_t`` is the integral of ``x_s c x_s^T``."""
        if self.anchor is None:
            return unhat_matrix(self.noise_rate)
        f = self.drift()
        anchor = unhat_matrix(self.anchor)
        return -(f @ anchor + anchor @ f.T)


def gauge_semigroup_membership(
    g: GaugeChannel, tol: Tolerance = DEFAULT_TOLERANCE
) -> EmbeddabilityVerdict:
    """Is the gauge channel the time-one map of a semigroup ``(K^t, Y - K^t Y K^t)``?"""
    try:
        classification = classify(g, tol)
    except NotCP as exc:
        return EmbeddabilityVerdict(EmbeddabilityStatus.INDETERMINATE, detail=str(exc))

    n = g.modes
    if norm(classification.unitary_factor - np.identity(n)) > tol.threshold(1.0):
        logger.debug("gauge_semigroup_membership: routing a unitary factor through embeddable_x")
        return embeddable_x(unhat_matrix(g.x_hat), tol)

    case = classification.case
    if case is GaugeCase.STATE_PREPARATION or (
        case is GaugeCase.MIXED and min(classification.spectrum) <= tol.threshold(1.0)
    ):
        return EmbeddabilityVerdict(EmbeddabilityStatus.NO, detail="K has a zero eigenvalue")
    if case is GaugeCase.MIXED:
        return EmbeddabilityVerdict(EmbeddabilityStatus.INDETERMINATE, detail="mixed spectrum")

    if case is GaugeCase.ADDITIVE_NOISE:
        semigroup = HatSemigroup(np.identity(n, dtype=complex), noise_rate=np.array(g.y_hat))
    else:
        semigroup = HatSemigroup(classification.k_hat, anchor=classification.anchor)

    try:
        generator = generator_from_drift(semigroup.drift(), semigroup.noise_generator_rate(), tol)
        for t in MEMBERSHIP_TIMES:
            expected = unhat(semigroup.at(t, tol), tol)
            flow = evolve(generator, t, tol)
            scale = max(1.0, norm(expected.x), norm(expected.y))
            residual = max(norm(flow.x - expected.x), norm(flow.y - expected.y))
            if residual > MEMBERSHIP_RESIDUAL * scale:
                return EmbeddabilityVerdict(
                    EmbeddabilityStatus.INDETERMINATE,
                    detail=f"semigroup cross-check residual {residual:.3e} at t={t}",
                )
    except GaussChanError as exc:
        return EmbeddabilityVerdict(EmbeddabilityStatus.INDETERMINATE, detail=str(exc))

    return EmbeddabilityVerdict(
        EmbeddabilityStatus.YES,
        generator=generator,
        detail=case.value,
        hat_semigroup=semigroup,
    )
