"""Executable Sweedler theory over finite commutative quantales.

Matrices with quantale entries form a double category; its monads are
enriched categories and its comonads are (posetal) cocategories.  This
package computes with them: composition, tensors and internal homs,
(co)modules and changes of base, the measuring cocategory ``P(A, B)`` and
comodule ``Q(M, N)``, the enrichment tensors, and exhaustive law suites.
"""
from .cat import (
    Cofunctor, Functor, QCategory, QCocategory, binary_limits, kleene_star, morphism_check,
    pullback_category, pushforward_cocategory, star_closure, tensor_pair, verify_category,
    verify_cocategory,
)
from .config import limits
from .conv import (
    convolution_category, convolution_module, curry_check, evaluation_check, hom_cocategories,
    hom_comodules,
)
from .errors import (
    BoundaryError, Failure, InvariantError, LawReport, LawViolation, QError, ResourceError,
    ValidationError,
)
from .lawcheck import SUITES, SuiteResult, replay, run_suite
from .mod import (
    QComodule, QModule, cofree_comodule, corestrict_scalars, free_module, mod_morphism_check,
    restrict_scalars, source_reindex, tensor_modcomod, verify_comodule, verify_module,
)
from .quantale import Quantale, builtin, descending_fixpoint, residuate, verify_quantale
from .sweedler import (
    comeasure_Q, cotensor_cat, cotensor_mod, enriched_check, measure_P, tensor_cat, tensor_mod,
    verify_adjunctions,
)
from .vmat import (
    Cell2, FinSet, Function, VMatrix, cell_check, coequalizer_matrices, companion_cells,
    companion_conjoint, coproduct_matrices, exp_set, fiber_colimit, hcompose, hom_transpose_check,
    identity_matrix, internal_hom, product_set, reindex, tensor_matrices,
)
from .workspace import emit, emit_workspace, parse_workspace

__version__ = "0.1.0"
