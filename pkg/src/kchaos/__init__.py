"""k-type chaos for Z^d actions: cone orders, exact pair classification on
finite and symbolic systems, and checks of the product, conjugacy and
induced-action constructions."""

from .lattice import ConeIndex, cone_greater, cone_shell, r_eval, scale_cone_unit, solve_cone_unit
from .space import BlockFamily, Dyadic, FiniteSpace, SymbolicConfig, difference_set, symbolic_distance
from .systems import (
    make_conjugate,
    make_finite,
    make_induced,
    make_induced_shift,
    make_product,
    make_rotation_induced,
    make_shift,
)

__version__ = "0.1.0"

__all__ = [
    "BlockFamily",
    "ConeIndex",
    "Dyadic",
    "FiniteSpace",
    "SymbolicConfig",
    "cone_greater",
    "cone_shell",
    "difference_set",
    "make_conjugate",
    "make_finite",
    "make_induced",
    "make_induced_shift",
    "make_product",
    "make_rotation_induced",
    "make_shift",
    "r_eval",
    "scale_cone_unit",
    "solve_cone_unit",
    "symbolic_distance",
]
