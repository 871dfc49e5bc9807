"""Exact certification of minimality and uniqueness for Waring
decompositions of quaternary sextics.

The package decides, with exact rational arithmetic, whether a given
length-r decomposition F = sum a_i * L_i^6 (r <= 18) is minimal and
unique, or reports an honest Undecided with the evidence gathered.
"""

__version__ = "0.1.0"

from .certify import (
    CertifyConfig,
    candidate_check,
    certify,
    check_nonredundant,
    decompose_coefficients,
    gamma_eval,
    witness_search,
)
from .generators import (
    gen_elliptic_quintic_config,
    gen_example18,
    gen_general_instance,
    gen_nodisj17,
    gen_rational_quintic_config,
)

__all__ = [
    "CertifyConfig",
    "candidate_check",
    "certify",
    "check_nonredundant",
    "decompose_coefficients",
    "gamma_eval",
    "witness_search",
    "gen_elliptic_quintic_config",
    "gen_example18",
    "gen_general_instance",
    "gen_nodisj17",
    "gen_rational_quintic_config",
    "__version__",
]
