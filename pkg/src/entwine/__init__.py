"""Exact verification of entwining structures, corings and Hopf-Galois data.

Everything lives in finite-dimensional (optionally Z/2-graded) vector spaces
over Q or F_p and every axiom is checked as an exact matrix identity.
"""

__version__ = "0.1.0"

from .linalg import FieldSpec, Matrix, invert, kernel_basis, kronecker, rank, rref, solve
from .monoidal import UNIT, BraidingKind, LinMap, MonoidalCtx, Obj, braiding, identity, tensor_map, tensor_obj
from .report import Check, Report, Witness
from .structures import (
    Algebra,
    Coalgebra,
    LeftModule,
    RightComodule,
    RightModule,
    check_algebra,
    check_coalgebra,
    check_comodule,
    check_module,
    random_structure,
)
from .entwining import (
    Coring,
    EntwinedModule,
    Entwining,
    PreconditionError,
    build_coring,
    check_coring,
    check_entwined,
    check_entwining,
    flip_entwining,
    lambda_from_xi,
    xi_from_lambda,
)
from .galois import (
    BudgetExceeded,
    GroupLike,
    canonical_map,
    coinvariants,
    decide_galois,
    equivalence_battery,
    find_grouplikes,
    flatness,
    verify_grouplike,
)
from .hopf import (
    Bialgebra,
    ComoduleAlgebra,
    HopfAlgebra,
    catalog,
    check_bialgebra,
    check_comodule_algebra,
    check_hopf,
    check_relative_hopf_module,
    entwining_from_comodule_algebra,
    fundamental_theorem_battery,
    x_map,
)

__all__ = [name for name in dir() if not name.startswith("_")]
