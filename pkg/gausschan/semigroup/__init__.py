"""One-parameter Gaussian semigroups: generators, simple forms and embeddability."""

from .embedding import (
    EmbeddabilityStatus,
    EmbeddabilityVerdict,
    embeddable_x,
    generator_from_log,
    hamiltonian_log,
    in_exp_sp,
    split_exp_sp,
    split_generators,
)
from .generators import (
    Generator,
    evolve,
    generator_from_drift,
    lindblad_export,
    semigroup_law_check,
)
from .infdiv import (
    InfDivCertificate,
    infdiv_certificate,
    infdiv_construct,
    infdiv_monotone,
    infdiv_necessary,
    negative_spectrum_factors,
)
from .simple import (
    SimpleForm,
    bounded_noise_check,
    invariant_state,
    perturb_to_simple_form,
    simple_form,
)

__all__ = [
    "EmbeddabilityStatus",
    "EmbeddabilityVerdict",
    "Generator",
    "InfDivCertificate",
    "SimpleForm",
    "bounded_noise_check",
    "embeddable_x",
    "evolve",
    "generator_from_drift",
    "generator_from_log",
    "hamiltonian_log",
    "in_exp_sp",
    "infdiv_certificate",
    "infdiv_construct",
    "infdiv_monotone",
    "infdiv_necessary",
    "invariant_state",
    "lindblad_export",
    "negative_spectrum_factors",
    "perturb_to_simple_form",
    "semigroup_law_check",
    "simple_form",
    "split_exp_sp",
    "split_generators",
]
