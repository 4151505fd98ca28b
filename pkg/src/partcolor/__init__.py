"""Partition coloring: pick one vertex per part so the induced graph is k-colorable."""

from partcolor.core import (
    Coloring,
    PcpInstance,
    Selection,
    Solution,
    chromatic_number,
    make_instance,
    oracle_solve,
    validate_instance,
    verify_certificate,
)
from partcolor.exact import power_convolve, solve_exact
from partcolor.field import FieldSpec
from partcolor.lattice import LatticeShape, SemiSelectionTable, subset_convolve
from partcolor.special import DispatchConfig, dispatch, solve_q1, solve_q2k1

__all__ = [
    "Coloring",
    "DispatchConfig",
    "FieldSpec",
    "LatticeShape",
    "PcpInstance",
    "Selection",
    "SemiSelectionTable",
    "Solution",
    "chromatic_number",
    "dispatch",
    "make_instance",
    "oracle_solve",
    "power_convolve",
    "solve_exact",
    "solve_q1",
    "solve_q2k1",
    "subset_convolve",
    "validate_instance",
    "verify_certificate",
]
__version__ = "0.1.0"
