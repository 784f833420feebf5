from __future__ import annotations

import math
from dataclasses import InitVar, dataclass, field

import numpy as np

from ..exceptions import (
    DimensionMismatch,
    NotCompletelyPositive,
    NotHermitian,
    NotPSD,
    NotSymmetric,
    NotSymplectic,
)
from ..linalg import (
    DEFAULT_TOLERANCE,
    Tolerance,
    as_complex,
    as_real,
    is_symplectic,
    min_eig_hermitian,
    norm,
    require_even,
    symmetric_part,
    symplectic_form,
)


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


def cp_matrix(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """``y + i (x sigma x^T - sigma)``; PSD iff (x, y) is a channel."""
    sigma = symplectic_form(x.shape[0] // 2)
    return y + 1j * (x @ sigma @ x.T - sigma)


def _check_symmetric(y: np.ndarray, tol: Tolerance, what: str) -> np.ndarray:
    deviation = norm(y - y.T)
    if deviation > tol.threshold(norm(y)):
        raise NotSymmetric(f"{what} is not symmetric (||m - m^T|| = {deviation:.3e})")
    return symmetric_part(y)


@dataclass(frozen=True, eq=False)
class GaussianChannel:
    """A Gaussian channel acting on moments as ``d -> x d``, ``G -> x G x^T + y``.

    Instances are immutable and always satisfy the complete positivity
    constraint ``y + i (x sigma x^T - sigma) >= 0``.
    """

    x: np.ndarray
    y: np.ndarray
    tol: InitVar[Tolerance] = DEFAULT_TOLERANCE

    def __post_init__(self, tol: Tolerance) -> None:
        x = as_real(self.x, name="x")
        y = as_real(self.y, name="y")
        n = require_even(x)
        if n < 1:
            raise DimensionMismatch("a channel needs at least one mode")
        if y.shape != x.shape:
            raise DimensionMismatch(f"x has shape {x.shape}, y has shape {y.shape}")
        y = _check_symmetric(y, tol, "y")
        cp = cp_matrix(x, y)
        lam = min_eig_hermitian(cp, tol)
        if lam < -tol.threshold(norm(cp)):
            raise NotCompletelyPositive(lam)
        object.__setattr__(self, "x", _readonly(x))
        object.__setattr__(self, "y", _readonly(y))

    @classmethod
    def _trusted(cls, x: np.ndarray, y: np.ndarray) -> "GaussianChannel":
        """Build without the CP check; for results that are CP by construction."""
        obj = cls.__new__(cls)
        object.__setattr__(obj, "x", _readonly(np.asarray(x, dtype=float)))
        object.__setattr__(obj, "y", _readonly(symmetric_part(np.asarray(y, dtype=float))))
        return obj

    @property
    def modes(self) -> int:
        return self.x.shape[0] // 2

    @property
    def dim(self) -> int:
        return self.x.shape[0]

    def __repr__(self) -> str:
        return f"GaussianChannel(modes={self.modes})"

    @classmethod
    def identity(cls, n: int = 1) -> "GaussianChannel":
        return cls._trusted(np.identity(2 * n), np.zeros((2 * n, 2 * n)))

    @classmethod
    def attenuation(cls, eta: float, n: int = 1) -> "GaussianChannel":
        """Beam splitter of transmissivity ``eta`` mixing in vacuum."""
        if not 0.0 <= eta <= 1.0:
            raise ValueError(f"attenuation needs 0 <= eta <= 1, got {eta}")
        return cls(math.sqrt(eta) * np.identity(2 * n), (1.0 - eta) * np.identity(2 * n))

    @classmethod
    def amplification(cls, eta: float, n: int = 1) -> "GaussianChannel":
        if eta < 1.0:
            raise ValueError(f"amplification needs eta >= 1, got {eta}")
        return cls(math.sqrt(eta) * np.identity(2 * n), (eta - 1.0) * np.identity(2 * n))

    @classmethod
    def preparation(cls, cov, tol: Tolerance = DEFAULT_TOLERANCE) -> "GaussianChannel":
        """Discard the input and prepare the state with covariance ``cov``."""
        cov = as_real(cov, name="cov")
        return cls(np.zeros_like(cov), cov, tol)

    @classmethod
    def reversible(cls, s, tol: Tolerance = DEFAULT_TOLERANCE) -> "GaussianChannel":
        s = as_real(s, name="s")
        if not is_symplectic(s, tol):
            raise NotSymplectic("a reversible channel needs a symplectic matrix")
        return cls._trusted(s, np.zeros_like(s))

    @classmethod
    def phase_conjugating_mirror(cls, n: int = 1) -> "GaussianChannel":
        """``x = I_n (x) diag(1, -1)``, ``y = 2 I``; det x = (-1)^n."""
        x = np.kron(np.identity(n), np.diag([1.0, -1.0]))
        return cls(x, 2.0 * np.identity(2 * n))


@dataclass(frozen=True, eq=False)
class GaussianState:
    """First moments ``mean`` and covariance ``cov`` with ``cov + i sigma >= 0``."""

    mean: np.ndarray
    cov: np.ndarray
    tol: InitVar[Tolerance] = DEFAULT_TOLERANCE

    def __post_init__(self, tol: Tolerance) -> None:
        cov = as_real(self.cov, name="cov")
        n = require_even(cov)
        mean = np.array(self.mean, dtype=float).reshape(-1)
        if mean.shape[0] != 2 * n:
            raise DimensionMismatch(f"mean has length {mean.shape[0]}, expected {2 * n}")
        cov = _check_symmetric(cov, tol, "cov")
        bound = cov + 1j * symplectic_form(n)
        lam = min_eig_hermitian(bound, tol)
        if lam < -tol.threshold(norm(bound)):
            raise NotPSD("cov + i sigma", lam)
        object.__setattr__(self, "mean", _readonly(mean))
        object.__setattr__(self, "cov", _readonly(cov))

    @property
    def modes(self) -> int:
        return self.cov.shape[0] // 2

    @classmethod
    def vacuum(cls, n: int = 1) -> "GaussianState":
        return cls(np.zeros(2 * n), np.identity(2 * n))


@dataclass(frozen=True, eq=False)
class PositiveClassRep:
    """Image ``p(x, y) = i (x sigma x^T - sigma) + y``; Hermitian and PSD."""

    p: np.ndarray
    tol: InitVar[Tolerance] = DEFAULT_TOLERANCE

    def __post_init__(self, tol: Tolerance) -> None:
        p = as_complex(self.p, name="p")
        require_even(p)
        deviation = norm(p - p.conj().T)
        if deviation > tol.threshold(norm(p)):
            raise NotHermitian(f"||p - p^*|| = {deviation:.3e}")
        p = (p + p.conj().T) / 2
        lam = min_eig_hermitian(p, tol)
        if lam < -tol.threshold(norm(p)):
            raise NotPSD("p", lam)
        object.__setattr__(self, "p", _readonly(p))

    @property
    def modes(self) -> int:
        return self.p.shape[0] // 2


@dataclass(frozen=True)
class Division:
    """Two non-reversible factors with ``compose(left, right)`` equal to the source."""

    left: GaussianChannel
    right: GaussianChannel
    branch: str
    residual: float
    epsilon: float | None = None
    attempts: int = field(default=1)
