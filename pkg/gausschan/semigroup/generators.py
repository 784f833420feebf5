"""Generators ``(a, b, h)`` of one-parameter Gaussian semigroups and their flow.

The semigroup is ``x_t = e^{t f}`` with drift ``f = (a - h) sigma`` and
``y_t`` the integral of ``x_s c x_s^T`` over ``[0, t]`` with ``c = 2 b``.
Since ``f sigma + sigma f^T = -2 a``, the rate ``c + i (f sigma + sigma f^T)``
is ``2 (b - i a)``, so the flow is completely positive for all ``t`` iff
``b + i a >= 0``.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from typing import Tuple

import numpy as np

from ..channel import GaussianChannel, compose
from ..exceptions import DimensionMismatch, NotAntisymmetric, NotPSD, NotSymmetric
from ..linalg import (
    DEFAULT_TOLERANCE,
    Tolerance,
    antisymmetric_part,
    as_real,
    expm,
    min_eig_hermitian,
    norm,
    require_even,
    symmetric_part,
    symplectic_form,
    vanloan_noise_integral,
)
from ..logger import create_logger

logger = create_logger(__name__)


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=float, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Generator:
    """``a`` antisymmetric, ``b`` and ``h`` symmetric, ``b + i a >= 0``."""

    a: np.ndarray
    b: np.ndarray
    h: np.ndarray
    tol: InitVar[Tolerance] = DEFAULT_TOLERANCE

    def __post_init__(self, tol: Tolerance) -> None:
        a = as_real(self.a, name="a")
        b = as_real(self.b, name="b")
        h = as_real(self.h, name="h")
        n = require_even(a)
        if n < 1:
            raise DimensionMismatch("a generator needs at least one mode")
        if not (a.shape == b.shape == h.shape):
            raise DimensionMismatch(f"shapes {a.shape}, {b.shape}, {h.shape} differ")
        if norm(a + a.T) > tol.threshold(norm(a)):
            raise NotAntisymmetric(f"a is not antisymmetric (||a + a^T|| = {norm(a + a.T):.3e})")
        for name, m in (("b", b), ("h", h)):
            if norm(m - m.T) > tol.threshold(norm(m)):
                raise NotSymmetric(f"{name} is not symmetric (||m - m^T|| = {norm(m - m.T):.3e})")
        a, b, h = antisymmetric_part(a), symmetric_part(b), symmetric_part(h)
        constraint = b + 1j * a
        lam = min_eig_hermitian(constraint, tol)
        if lam < -tol.threshold(norm(constraint)):
            raise NotPSD("b + i a", lam)
        object.__setattr__(self, "a", _readonly(a))
        object.__setattr__(self, "b", _readonly(b))
        object.__setattr__(self, "h", _readonly(h))

    @property
    def modes(self) -> int:
        return self.a.shape[0] // 2

    @property
    def drift(self) -> np.ndarray:
        """``f = (a - h) sigma``."""
        return (self.a - self.h) @ symplectic_form(self.modes)

    @property
    def noise_rate(self) -> np.ndarray:
        """``c = 2 b``, the derivative of ``y_t`` at 0."""
        return 2.0 * np.array(self.b)

    def __repr__(self) -> str:
        return f"Generator(modes={self.modes})"

    @classmethod
    def attenuation(cls, n: int = 1, rate: float = 1.0) -> "Generator":
        """Drift ``-rate I`` and noise rate ``2 rate I``."""
        sigma = symplectic_form(n)
        return cls(rate * sigma, rate * np.identity(2 * n), np.zeros((2 * n, 2 * n)))

    @classmethod
    def amplification(cls, n: int = 1, rate: float = 1.0) -> "Generator":
        sigma = symplectic_form(n)
        return cls(-rate * sigma, rate * np.identity(2 * n), np.zeros((2 * n, 2 * n)))

    @classmethod
    def squeezing(cls, b=None) -> "Generator":
        """Single-mode squeezing Hamiltonian ``h = [[0, 1], [1, 0]]``; drift ``diag(1, -1)``."""
        b = np.zeros((2, 2)) if b is None else as_real(b, name="b")
        return cls(np.zeros((2, 2)), b, np.array([[0.0, 1.0], [1.0, 0.0]]))

    @classmethod
    def hamiltonian(cls, h) -> "Generator":
        h = as_real(h, name="h")
        return cls(np.zeros_like(h), np.zeros_like(h), h)


def generator_from_drift(
    f, noise_rate, tol: Tolerance = DEFAULT_TOLERANCE
) -> Generator:
    """Recover ``(a, b, h)`` from the drift ``f`` and the noise rate ``c``."""
    f = as_real(f, name="f")
    c = as_real(noise_rate, name="noise_rate")
    sigma = symplectic_form(require_even(f))
    m = f @ sigma.T
    return Generator(antisymmetric_part(m), 0.5 * c, -symmetric_part(m), tol)


def evolve(g: Generator, t: float, tol: Tolerance = DEFAULT_TOLERANCE) -> GaussianChannel:
    """The channel ``(x_t, y_t)`` at time ``t >= 0``."""
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    f = g.drift
    x = expm(f, t)
    y = vanloan_noise_integral(f.T, g.noise_rate, t)
    return GaussianChannel(x, y, tol)


def semigroup_law_check(
    g: Generator, t: float, s: float, tol: Tolerance = DEFAULT_TOLERANCE
) -> bool:
    """``evolve(t) . evolve(s) = evolve(t + s)`` within ``tol``."""
    product = compose(evolve(g, t, tol), evolve(g, s, tol), tol)
    direct = evolve(g, t + s, tol)
    x_ok = norm(product.x - direct.x) <= tol.threshold(norm(direct.x))
    y_ok = norm(product.y - direct.y) <= tol.threshold(norm(direct.y))
    if not (x_ok and y_ok):
        logger.debug("semigroup_law_check failed at t=%g, s=%g", t, s)
    return x_ok and y_ok


LINDBLAD_RESIDUAL = 1e-9


def lindblad_export(
    g: Generator, tol: Tolerance = DEFAULT_TOLERANCE
) -> Tuple[np.ndarray, np.ndarray]:
    """Hamiltonian coefficients ``h`` and Lindblad rows ``L`` with ``L^* L = b + i a``.

    ``L`` has one row per eigenvalue of ``b + i a`` above the rank threshold,
    so a purely Hamiltonian generator yields a ``0 x 2n`` array.
    """
    m = g.b + 1j * g.a
    w, v = np.linalg.eigh(m)
    threshold = tol.threshold(norm(m))
    if w[0] < -threshold:
        raise NotPSD("b + i a", float(w[0]))
    keep = w > threshold
    rows = (v[:, keep] * np.sqrt(w[keep])[np.newaxis, :]).conj().T
    residual = norm(rows.conj().T @ rows - m) if rows.size else norm(m)
    if residual > LINDBLAD_RESIDUAL * max(1.0, norm(m)) + threshold:
        raise NotPSD("b + i a", float(w[0]))
    return np.array(g.h), rows
