"""Infinitesimal divisibility: the determinant test and certified constructions.

A channel that is a product of channels arbitrarily close to the identity
has ``det x >= 0``. Conversely every ``x`` with ``det x > 0`` is the ``x`` of a
product of two time-one maps of semigroups: the negative real spectrum is
split off as ``-I`` on its invariant subspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..channel import GaussianChannel, compose
from ..exceptions import IllConditioned, Indeterminate, NonPositiveDeterminant, NotGreaterNoise
from ..linalg import (
    DEFAULT_TOLERANCE,
    Tolerance,
    as_real,
    norm,
    psd_margin,
    require_even,
    split_negative_spectrum,
)
from ..logger import create_logger
from .embedding import embeddable_x
from .generators import Generator, evolve

logger = create_logger(__name__)

CONSTRUCTION_RESIDUAL = 1e-8
WITNESS_TIME = 1.0


@dataclass(frozen=True, eq=False)
class InfDivCertificate:
    """``channel = evolve(first, 1) . evolve(second, 1)``; ``first`` is None when ``x1 = I``."""

    first: Generator | None
    second: Generator
    x1: np.ndarray
    x2: np.ndarray
    channel: GaussianChannel


def infdiv_necessary(c: GaussianChannel, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """False certifies that ``c`` is not infinitesimal divisible."""
    return float(np.linalg.det(c.x)) >= -tol.abs_eps


def _check_determinant(x: np.ndarray, tol: Tolerance) -> float:
    det = float(np.linalg.det(x))
    if abs(det) <= tol.abs_eps:
        raise Indeterminate(f"det x = {det:.3e} is zero within tolerance")
    if det < 0:
        raise NonPositiveDeterminant(det)
    return det


def negative_spectrum_factors(
    x, tol: Tolerance = DEFAULT_TOLERANCE
) -> Tuple[np.ndarray, np.ndarray]:
    """Commuting ``x1, x2`` with ``x = x1 x2`` and ``x1^2 = I``.

    ``x2`` has no eigenvalue on the negative real axis.
    """
    x = as_real(x, name="x")
    dim = 2 * require_even(x)
    _check_determinant(x, tol)
    m, x_neg, x_rest = split_negative_spectrum(x, tol)
    k = x_neg.shape[0]
    if k == 0:
        return np.identity(dim), x.copy()
    if k % 2:
        raise IllConditioned(f"negative spectrum has odd dimension {k}")
    m_inv = np.linalg.inv(m)
    sign = np.diag([-1.0] * k + [1.0] * (dim - k))
    flipped = np.zeros((dim, dim))
    flipped[:k, :k] = -x_neg
    flipped[k:, k:] = x_rest
    return m @ sign @ m_inv, m @ flipped @ m_inv


def infdiv_certificate(x, tol: Tolerance = DEFAULT_TOLERANCE) -> InfDivCertificate:
    """Build an infinitesimal divisible channel with the given ``x``."""
    x = as_real(x, name="x")
    x1, x2 = negative_spectrum_factors(x, tol)

    second = embeddable_x(x2, tol)
    if not second.is_yes:
        raise IllConditioned(f"positive factor has no witness: {second.detail}")
    channel = evolve(second.generator, WITNESS_TIME, tol)

    first_generator = None
    if norm(x1 - np.identity(x.shape[0])) > tol.threshold(1.0):
        first = embeddable_x(x1, tol)
        if not first.is_yes:
            raise IllConditioned(f"sign factor has no witness: {first.detail}")
        first_generator = first.generator
        channel = compose(evolve(first_generator, WITNESS_TIME, tol), channel, tol)

    residual = norm(channel.x - x)
    if residual > CONSTRUCTION_RESIDUAL * max(1.0, norm(x)):
        raise IllConditioned(f"constructed x deviates from the input by {residual:.3e}")
    return InfDivCertificate(
        first=first_generator, second=second.generator, x1=x1, x2=x2, channel=channel
    )


def infdiv_construct(x, tol: Tolerance = DEFAULT_TOLERANCE) -> GaussianChannel:
    return infdiv_certificate(x, tol).channel


def infdiv_monotone(
    c: GaussianChannel, y_new, tol: Tolerance = DEFAULT_TOLERANCE
) -> bool:
    """Adding noise keeps an infinitesimal divisibility certificate."""
    y_new = as_real(y_new, name="y_new")
    if y_new.shape != c.y.shape:
        raise NotGreaterNoise(f"y_new has shape {y_new.shape}, expected {c.y.shape}")
    ok, lam = psd_margin(y_new - c.y, tol)
    if not ok:
        raise NotGreaterNoise(f"y_new - y has eigenvalue {lam:.3e}")
    GaussianChannel(c.x, y_new, tol)
    return True
