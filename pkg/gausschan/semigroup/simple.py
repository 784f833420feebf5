"""Simple form ``y_t = Y - x_t Y x_t^T`` of a semigroup, bounded noise and invariant states."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from ..channel import GaussianState
from ..exceptions import Indeterminate, NotPSD, NumericalFailure, Overflow, SingularKroneckerSum
from ..linalg import (
    DEFAULT_TOLERANCE,
    Tolerance,
    expm,
    kron_sum_is_singular,
    kron_sum_solve,
    norm,
    psd_check,
    symplectic_form,
)
from ..logger import create_logger
from .generators import Generator, evolve

logger = create_logger(__name__)

PSD_SAMPLE_TIMES = (0.1, 1.0, 10.0)
RECONSTRUCTION_TIMES = (0.5, 1.0, 2.0)
RECONSTRUCTION_RESIDUAL = 1e-6
MAX_HALVINGS = 8


@dataclass(frozen=True, eq=False)
class SimpleForm:
    """Drift ``f`` and symmetric anchor ``Y`` with ``f Y + Y f^T = -c``.

    ``unique`` is False when the Kronecker sum is singular and the anchor is
    the minimum-norm solution of a consistent system.
    """

    generator: Generator
    drift: np.ndarray
    anchor: np.ndarray
    unique: bool = True

    def noise_at(self, t: float) -> np.ndarray:
        x_t = expm(self.drift, t)
        return self.anchor - x_t @ self.anchor @ x_t.T


def simple_form(g: Generator, tol: Tolerance = DEFAULT_TOLERANCE) -> SimpleForm:
    """Solve ``A Y + Y A^T = c`` with ``A = (h - a) sigma = -f``."""
    f = g.drift
    a_tilde = -f
    unique = not kron_sum_is_singular(a_tilde, tol)
    anchor = kron_sum_solve(a_tilde, g.noise_rate, tol, allow_singular=True)
    form = SimpleForm(generator=g, drift=f, anchor=anchor, unique=unique)

    for t in PSD_SAMPLE_TIMES:
        try:
            noise = form.noise_at(t)
        except Overflow:
            logger.debug("simple_form: skipping PSD sample at t=%g (overflow)", t)
            continue
        if not psd_check(noise, tol):
            raise NotPSD(f"reconstructed noise at t={t}", float(np.linalg.eigvalsh(noise)[0]))

    for t in RECONSTRUCTION_TIMES:
        expected = evolve(g, t, tol).y
        residual = norm(form.noise_at(t) - expected)
        if residual > RECONSTRUCTION_RESIDUAL * max(1.0, norm(expected)):
            raise NumericalFailure(f"simple form reconstruction residual {residual:.3e} at t={t}")
    return form


def bounded_noise_check(
    g: Generator, tol: Tolerance = DEFAULT_TOLERANCE
) -> Tuple[bool, np.ndarray | None]:
    """Decide bounded noise through the simple form.

    Raises ``Indeterminate`` when the simple form does not exist or when a
    non-unique anchor fails to be PSD.
    """
    try:
        form = simple_form(g, tol)
    except SingularKroneckerSum as exc:
        raise Indeterminate(f"no simple form: {exc}") from exc

    psd = psd_check(form.anchor, tol)
    if form.unique:
        return (True, form.anchor) if psd else (False, None)
    if psd:
        return True, form.anchor
    logger.debug("bounded_noise_check: non-unique anchor is not PSD")
    raise Indeterminate("anchor is not unique and the minimum-norm anchor is not PSD")


def invariant_state(
    form: SimpleForm, tol: Tolerance = DEFAULT_TOLERANCE
) -> GaussianState | None:
    """The zero-mean state with covariance equal to the anchor, if it is a valid state."""
    anchor = form.anchor
    n = anchor.shape[0] // 2
    if not psd_check(anchor + 1j * symplectic_form(n), tol):
        return None
    return GaussianState(np.zeros(2 * n), anchor, tol)


def perturb_to_simple_form(
    g: Generator,
    delta: float = 1e-3,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> Tuple[Generator, SimpleForm, float]:
    """Shift the drift by ``-delta I`` until a simple form exists.

    ``a + delta sigma`` and ``b + delta I`` keep ``b + i a >= 0``. ``delta`` is
    halved up to eight times; the last ``SingularKroneckerSum`` is re-raised.
    """
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    dim = g.a.shape[0]
    sigma = symplectic_form(g.modes)

    for attempt in Retrying(
        stop=stop_after_attempt(MAX_HALVINGS + 1),
        retry=retry_if_exception_type(SingularKroneckerSum),
        reraise=True,
    ):
        with attempt:
            current = delta / 2 ** (attempt.retry_state.attempt_number - 1)
            perturbed = Generator(
                g.a + current * sigma, g.b + current * np.identity(dim), g.h, tol
            )
            form = simple_form(perturbed, tol)
            logger.debug("perturb_to_simple_form: simple form at delta=%g", current)
    return perturbed, form, current
