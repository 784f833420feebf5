"""Matrix-analysis kernel shared by the channel, semigroup and gauge packages."""

from .decompositions import antisym_factor, antisymmetric_canonical_form, polar, williamson
from .logarithm import expm, real_log, real_log_exists, split_negative_spectrum
from .solvers import kron_pair_gap, kron_sum_is_singular, kron_sum_solve, vanloan_noise_integral
from .spectral import (
    antisymmetric_part,
    as_complex,
    as_real,
    block_symplectic_form,
    hermitian_part,
    is_singular,
    is_symplectic,
    min_eig_hermitian,
    norm,
    numerical_rank,
    psd_check,
    psd_margin,
    require_even,
    require_square,
    symmetric_part,
    symplectic_defect,
    symplectic_form,
)
from .tolerance import DEFAULT_TOLERANCE, JordanNegativeReport, Tolerance

__all__ = [
    "DEFAULT_TOLERANCE",
    "JordanNegativeReport",
    "Tolerance",
    "antisym_factor",
    "antisymmetric_canonical_form",
    "antisymmetric_part",
    "as_complex",
    "as_real",
    "block_symplectic_form",
    "expm",
    "hermitian_part",
    "is_singular",
    "is_symplectic",
    "kron_pair_gap",
    "kron_sum_is_singular",
    "kron_sum_solve",
    "min_eig_hermitian",
    "norm",
    "numerical_rank",
    "polar",
    "psd_check",
    "psd_margin",
    "real_log",
    "real_log_exists",
    "require_even",
    "require_square",
    "split_negative_spectrum",
    "symmetric_part",
    "symplectic_defect",
    "symplectic_form",
    "vanloan_noise_integral",
    "williamson",
]
