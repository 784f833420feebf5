from __future__ import annotations

from typing import Any, Sequence


class GaussChanError(Exception):
    """Base exception for gausschan errors."""


class MissingConfiguration(GaussChanError):
    """Raised when a configuration value cannot be parsed."""


class ParseError(GaussChanError):
    """Raised for malformed channel or generator files."""

    def __init__(self, path: str, detail: Any) -> None:
        self.path = path
        self.detail = detail
        super().__init__(f"Could not parse {path}: {detail}")


class NonSquare(GaussChanError):
    """Raised when a square matrix is required."""

    def __init__(self, shape: Sequence[int]) -> None:
        self.shape = tuple(shape)
        super().__init__(f"Expected a square matrix, got shape {self.shape}")


class NonFinite(GaussChanError):
    """Raised when a matrix holds NaN or infinite entries."""


class Overflow(GaussChanError):
    """Raised when a result leaves the representable floating point range."""

    def __init__(self, where: str) -> None:
        self.where = where
        super().__init__(f"Overflow in {where}")


class DimensionMismatch(GaussChanError):
    """Raised when operands have incompatible shapes or mode counts."""


class NotSymmetric(GaussChanError):
    """Raised when a matrix must be symmetric."""


class NotAntisymmetric(GaussChanError):
    """Raised when a matrix must be antisymmetric."""


class NotHermitian(GaussChanError):
    """Raised when a complex matrix must be Hermitian."""


class NotPSD(GaussChanError):
    """Raised when a matrix must be positive semidefinite."""

    def __init__(self, what: str, min_eigenvalue: float) -> None:
        self.what = what
        self.min_eigenvalue = min_eigenvalue
        super().__init__(
            f"{what} is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})"
        )


class NotPositiveDefinite(GaussChanError):
    """Raised when a matrix must be positive definite."""


class Singular(GaussChanError):
    """Raised when a nonsingular matrix is required."""


class IllConditioned(GaussChanError):
    """Raised when a rank or spectral decision falls inside the tolerance band."""

    def __init__(self, detail: str) -> None:
        self.detail = detail
        super().__init__(f"Ill-conditioned decision: {detail}")


class NoRealLog(GaussChanError):
    """Raised when a matrix has no real logarithm."""

    def __init__(self, reports: Sequence[Any] = ()) -> None:
        self.reports = list(reports)
        if self.reports:
            info = ", ".join(
                f"lambda={r.eigenvalue:.6g} blocks={list(r.block_sizes)}" for r in self.reports
            )
        else:
            info = "matrix is singular"
        super().__init__(f"No real logarithm: {info}")


class SingularKroneckerSum(GaussChanError):
    """Raised when ``a Z + Z a^T = rhs`` has no (unique) solution."""

    def __init__(self, min_pair_sum: float) -> None:
        self.min_pair_sum = min_pair_sum
        super().__init__(
            f"Kronecker sum is singular: eigenvalue pair sums to {min_pair_sum:.3e}"
        )


class NotCompletelyPositive(GaussChanError):
    """Raised when (X, Y) violates Y >= i(sigma - X sigma X^T)."""

    def __init__(self, min_eigenvalue: float) -> None:
        self.min_eigenvalue = min_eigenvalue
        super().__init__(
            f"Channel is not completely positive (min eigenvalue {min_eigenvalue:.3e})"
        )


NotCP = NotCompletelyPositive


class NotSymplectic(GaussChanError):
    """Raised when a symplectic matrix is required."""


class Reversible(GaussChanError):
    """Raised when an operation needs a non-reversible channel."""


class NumericalFailure(GaussChanError):
    """Raised when a construction cannot reach its accuracy target."""


class NotIdempotent(GaussChanError):
    """Raised when an idempotent channel is required."""


class DegenerateNoise(GaussChanError):
    """Raised when the noise is not positive definite on the complement of X."""


class Indeterminate(GaussChanError):
    """Raised when a property is not decidable by the implemented criteria."""


class NonPositiveDeterminant(GaussChanError):
    """Raised when det X > 0 is required."""

    def __init__(self, det: float) -> None:
        self.det = det
        super().__init__(f"det X = {det:.3e} is not positive")


class NotGreaterNoise(GaussChanError):
    """Raised when the new noise term does not dominate the old one."""


class NotGaugeCovariant(GaussChanError):
    """Raised when X or Y does not commute with sigma."""
