from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Tuple


@dataclass(frozen=True)
class Tolerance:
    """Absolute and relative slack shared by every numerical decision.

    A quantity ``v`` measured against a matrix of norm ``scale`` is treated as
    zero when ``|v| <= abs_eps + rel_eps * scale``.
    """

    abs_eps: float = 1e-9
    rel_eps: float = 1e-9

    def __post_init__(self) -> None:
        for name in ("abs_eps", "rel_eps"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {value!r}")

    @classmethod
    def uniform(cls, eps: float) -> "Tolerance":
        """Tolerance with ``abs_eps == rel_eps == eps`` (the CLI's ``--tol``)."""
        return cls(abs_eps=float(eps), rel_eps=float(eps))

    def threshold(self, scale: float = 0.0) -> float:
        return self.abs_eps + self.rel_eps * abs(scale)


DEFAULT_TOLERANCE = Tolerance()


@dataclass(frozen=True)
class JordanNegativeReport:
    """Jordan structure of one negative real eigenvalue."""

    eigenvalue: float
    block_sizes: Tuple[int, ...] = field(default_factory=tuple)

    @property
    def multiplicity(self) -> int:
        return sum(self.block_sizes)

    @property
    def paired(self) -> bool:
        """True when every block size occurs an even number of times."""
        return all(self.block_sizes.count(size) % 2 == 0 for size in set(self.block_sizes))
