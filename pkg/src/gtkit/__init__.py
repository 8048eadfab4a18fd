"""Exact commutative-algebra toolkit for Gelfand-Tsetlin varieties."""
from .errors import BudgetExceeded, GtkitError, NotHomogeneousError, RingMismatchError
from .field import DEFAULT_PRIME, GF, QQ
from .groebner import (Budget, Ideal, groebner_basis, ideal_quotient, ideals_equal, intersect, krull_dimension,
                       membership, normal_form, radical_membership)
from .kostant_wallach import ConcreteMatrix, jacobian_rank_probe, phi, phi_k, same_fiber, strongly_nilpotent
from .regularity import equidimensional_by_ci, is_regular_sequence
from .systems import GTSystem, chi, gamma_bar, partial_system, sigma
from . import lab
from .poly import DEGREVLEX, LEX, MonomialOrder, Polynomial, Ring, RingHom, matrix_ring

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "GtkitError", "NotHomogeneousError", "RingMismatchError",
    "DEFAULT_PRIME", "GF", "QQ",
    "Budget", "Ideal", "groebner_basis", "ideal_quotient", "ideals_equal", "intersect", "krull_dimension",
    "membership", "normal_form", "radical_membership",
    "DEGREVLEX", "LEX", "MonomialOrder", "Polynomial", "Ring", "RingHom", "matrix_ring",
    "ConcreteMatrix", "jacobian_rank_probe", "phi", "phi_k", "same_fiber", "strongly_nilpotent",
    "equidimensional_by_ci", "is_regular_sequence",
    "GTSystem", "chi", "gamma_bar", "partial_system", "sigma", "lab",
    "__version__",
]
