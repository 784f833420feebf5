"""Gaussian quantum channels: composition, division, semigroups and gauge covariance."""

__version__ = "0.1.0"

from .channel import (
    Division,
    GaussianChannel,
    GaussianState,
    IdempotentNormalForm,
    PositiveClassRep,
    compose,
    cp_check,
    divide,
    idempotent_normal_form,
    is_idempotent,
    is_reversible,
    p_map,
)
from .channel_io import load_channel, load_generator, write_channel, write_generator
from .exceptions import (
    GaussChanError,
    Indeterminate,
    MissingConfiguration,
    NotCompletelyPositive,
    NumericalFailure,
    ParseError,
)
from .gauge import GaugeCase, GaugeChannel, classify, hat, unhat
from .ini_manager import IniManager, Settings, resolve_settings
from .linalg import DEFAULT_TOLERANCE, Tolerance
from .semigroup import (
    EmbeddabilityStatus,
    EmbeddabilityVerdict,
    Generator,
    embeddable_x,
    evolve,
    in_exp_sp,
    infdiv_construct,
    infdiv_necessary,
    simple_form,
)

__all__ = [
    "DEFAULT_TOLERANCE",
    "Division",
    "EmbeddabilityStatus",
    "EmbeddabilityVerdict",
    "GaugeCase",
    "GaugeChannel",
    "GaussChanError",
    "GaussianChannel",
    "GaussianState",
    "Generator",
    "IdempotentNormalForm",
    "Indeterminate",
    "IniManager",
    "MissingConfiguration",
    "NotCompletelyPositive",
    "NumericalFailure",
    "ParseError",
    "PositiveClassRep",
    "Settings",
    "Tolerance",
    "classify",
    "compose",
    "cp_check",
    "divide",
    "embeddable_x",
    "evolve",
    "hat",
    "idempotent_normal_form",
    "in_exp_sp",
    "infdiv_construct",
    "infdiv_necessary",
    "is_idempotent",
    "is_reversible",
    "load_channel",
    "load_generator",
    "p_map",
    "resolve_settings",
    "simple_form",
    "unhat",
    "write_channel",
    "write_generator",
    "__version__",
]
