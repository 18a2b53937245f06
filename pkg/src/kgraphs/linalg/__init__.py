"""Exact integer and rational linear algebra."""

from .alternative import PositiveKernel, Witness, stiemke_alternative
from .intmat import (HermiteForm, SmithForm, StableKernel, hermite_normal_form, lattice_member,
                     smith_normal_form, stable_kernel)
from .lp import LPResult, lp_solve_exact

__all__ = [
    "HermiteForm", "SmithForm", "StableKernel", "hermite_normal_form", "smith_normal_form",
    "lattice_member", "stable_kernel", "LPResult", "lp_solve_exact", "stiemke_alternative",
    "Witness", "PositiveKernel",
]
