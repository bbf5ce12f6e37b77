"""Majorization-type preorders on nonnegative vectors and their supporting machinery."""

from .core import (
    DEFAULT_TOL,
    EXACT,
    DomainError,
    ResourceError,
    Status,
    Tolerance,
    Verdict,
    majorizes,
    pnorm,
    rearrange_desc,
    tensor,
    weak_prec,
)
from .relations import prec_1, prec_E, prec_F, prec_L

__all__ = [
    "DEFAULT_TOL", "EXACT", "DomainError", "ResourceError", "Status", "Tolerance", "Verdict",
    "majorizes", "pnorm", "rearrange_desc", "tensor", "weak_prec",
    "prec_1", "prec_E", "prec_F", "prec_L",
]

__version__ = "0.1.0"
