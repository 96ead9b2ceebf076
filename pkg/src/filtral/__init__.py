"""Exact filtrations of modules over finite-dimensional algebras over prime fields.

Given a subcategory ``C`` of finitely generated modules, every ``M`` in ``C`` has
a filtration whose factors lie in the over-boundary of ``C`` (no proper
nonzero quotient in ``C``) and a cofiltration whose factors lie in the
under-boundary (no proper nonzero submodule in ``C``).
"""

from .algebra import Algebra, QuiverPresentation, build_quiver_algebra, structure_constant_algebra, validate_algebra
from .config import Budget, default_budget
from .enumerate import enumerate_modules, module_from_arrows
from .errors import FiltralError
from .field import PrimeField
from .filtration import Filtration, convert, theta_filtration
from .homology import PdVerdict, ext_dim, inj_dim, proj_dim
from .io import parse_algebra, parse_module
from .linalg import BACKEND
from .module import Module, Morphism, Submodule, decompose, hom_matrices, is_isomorphic, quotient
from .subcat import (
    OVER,
    UNDER,
    SubcatSpec,
    boundary_member,
    build_cofiltration,
    build_filtration,
    enumerate_boundary,
    findim_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "QuiverPresentation",
    "build_quiver_algebra",
    "structure_constant_algebra",
    "validate_algebra",
    "Budget",
    "default_budget",
    "enumerate_modules",
    "module_from_arrows",
    "FiltralError",
    "PrimeField",
    "Filtration",
    "convert",
    "theta_filtration",
    "PdVerdict",
    "ext_dim",
    "inj_dim",
    "proj_dim",
    "parse_algebra",
    "parse_module",
    "BACKEND",
    "Module",
    "Morphism",
    "Submodule",
    "decompose",
    "hom_matrices",
    "is_isomorphic",
    "quotient",
    "OVER",
    "UNDER",
    "SubcatSpec",
    "boundary_member",
    "build_cofiltration",
    "build_filtration",
    "enumerate_boundary",
    "findim_certificate",
]
