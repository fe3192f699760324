"""Entanglement transfer from a two-mode squeezed field to two charge qubits."""
__version__ = "0.1.0"

from .spectrum import SqueezedSpectrum, build_spectrum, chi, truncation_error  # noqa: E402
from .dynamics import (  # noqa: E402
    AbcdCoefficients,
    assemble_density,
    coefficients,
    evolve_from_ground,
    kraus_family,
)
from .oracle import ProductPreparation, evolve, evolve_many, max_abs_diff  # noqa: E402
from .measures import (  # noqa: E402
    EntanglementReport,
    concurrence,
    eof,
    linearized_entropy,
    npt_negativity,
    report,
    teleport_useful,
)

__all__ = [
    "AbcdCoefficients",
    "EntanglementReport",
    "ProductPreparation",
    "SqueezedSpectrum",
    "assemble_density",
    "build_spectrum",
    "chi",
    "coefficients",
    "concurrence",
    "eof",
    "evolve",
    "evolve_from_ground",
    "evolve_many",
    "kraus_family",
    "linearized_entropy",
    "max_abs_diff",
    "npt_negativity",
    "report",
    "teleport_useful",
    "truncation_error",
]
