"""Exact-arithmetic workbench for finite C*-dynamical systems, their transfer
operators and natural extensions."""

from .errors import ContractBreach, DomainError, InputError, NotComplete, StardynError
from .finalg import (
    Element,
    MultiMatrixAlgebra,
    StarEndomorphism,
    classify,
    compose_endo,
    kernel_unit,
)
from .matrix import CMatrix
from .natext import NaturalExtension, TowerElement, normal_form_coordinates
from .pdsys import PartialMap, duality_report, induced_endomorphism
from .scalar import Scalar
from .transfer import (
    canonical_nondegenerate_transfer,
    complete_transfer,
    completeness_report,
    is_transfer,
    uniqueness_check,
)
from .unitize import unitize_kernel

__version__ = "0.1.0"

__all__ = [
    "CMatrix",
    "ContractBreach",
    "DomainError",
    "Element",
    "InputError",
    "MultiMatrixAlgebra",
    "NaturalExtension",
    "NotComplete",
    "PartialMap",
    "Scalar",
    "StarEndomorphism",
    "StardynError",
    "TowerElement",
    "canonical_nondegenerate_transfer",
    "classify",
    "complete_transfer",
    "completeness_report",
    "compose_endo",
    "duality_report",
    "induced_endomorphism",
    "is_transfer",
    "kernel_unit",
    "normal_form_coordinates",
    "uniqueness_check",
    "unitize_kernel",
]
