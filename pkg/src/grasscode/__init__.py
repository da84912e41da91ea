"""Constant-dimension subspace codes: constructions and distance certificates."""

from .code import Stratum, SubspaceCode
from .constructions import (
    BoundValue,
    best_known_code,
    bound_ia,
    bound_ib,
    bound_ii,
    bound_lifted_mrd,
    construction_ia,
    construction_ib,
    construction_ii,
    extend_code,
    nu_capacity,
    residual_registry,
)
from .field import GF, ext_make, field_make
from .grassmann import (
    FerrersDiagram,
    Subspace,
    ferrers_of_vector,
    gaussian_coefficient,
    subspace_distance,
    subspace_from_filling,
    subspace_from_matrix,
)
from .io import read_code, write_code
from .rankmetric import fdmrd_code, ferrers_dimension_bound, gabidulin_mrd
from .recipe import load_recipe, run_recipe
from .skeleton import construction_0, multilevel, multilevel_code, one_factorization
from .verify import verify_exhaustive, verify_stratified

__version__ = "0.1.0"

__all__ = [
    "Stratum",
    "SubspaceCode",
    "BoundValue",
    "best_known_code",
    "bound_ia",
    "bound_ib",
    "bound_ii",
    "bound_lifted_mrd",
    "construction_ia",
    "construction_ib",
    "construction_ii",
    "extend_code",
    "nu_capacity",
    "residual_registry",
    "GF",
    "ext_make",
    "field_make",
    "FerrersDiagram",
    "Subspace",
    "ferrers_of_vector",
    "gaussian_coefficient",
    "subspace_distance",
    "subspace_from_filling",
    "subspace_from_matrix",
    "read_code",
    "write_code",
    "fdmrd_code",
    "ferrers_dimension_bound",
    "gabidulin_mrd",
    "load_recipe",
    "run_recipe",
    "construction_0",
    "multilevel",
    "multilevel_code",
    "one_factorization",
    "verify_exhaustive",
    "verify_stratified",
]
