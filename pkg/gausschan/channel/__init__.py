"""Gaussian channels as matrix pairs ``(x, y)`` and their semigroup algebra."""

from .divisibility import (
    EPSILON_CANDIDATES,
    channel_from_positive,
    class_compose,
    divide,
    kernel_projector,
    p_map,
)
from .idempotent import IdempotentNormalForm, idempotent_normal_form, is_idempotent
from .operations import (
    apply_to_state,
    compose,
    cp_check,
    cp_margin,
    distance_from_identity,
    embed_pi,
    is_reversible,
    same_class,
    symplectic_conjugate,
)
from .types import Division, GaussianChannel, GaussianState, PositiveClassRep, cp_matrix

__all__ = [
    "Division",
    "EPSILON_CANDIDATES",
    "GaussianChannel",
    "GaussianState",
    "IdempotentNormalForm",
    "PositiveClassRep",
    "apply_to_state",
    "channel_from_positive",
    "class_compose",
    "compose",
    "cp_check",
    "cp_margin",
    "cp_matrix",
    "distance_from_identity",
    "divide",
    "embed_pi",
    "idempotent_normal_form",
    "is_idempotent",
    "is_reversible",
    "kernel_projector",
    "p_map",
    "same_class",
    "symplectic_conjugate",
]
