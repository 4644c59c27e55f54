"""constarm: constacyclic evaluation codes from residue layers of
generalized Reed-Muller codes over F_q.

The toolkit builds the codes as evaluation codes on scalar-orbit
representatives, constructs the explicit minimum-weight pencil words,
evaluates the closed-form distance formulas and bounds, and cross-checks
everything against independent brute-force minimum-weight oracles.
"""

from . import errors
from .gf import (
    ExtCtx,
    FieldCtx,
    element_order,
    field_from_order,
    make_extension,
    make_field,
    mu_subgroup,
    primitive_element,
)
from .rpoly import (
    ReducedPoly,
    evaluate,
    leading_monomial,
    reduce_product,
    residue_class,
    scalar_dilate,
    substitute_linear,
    support_size,
)
from .spaces import (
    CodeParams,
    MonomialSpace,
    admissible_degrees,
    build_space,
    code_space,
    decompose_ab,
    dimension_K,
    translate_L,
)
from .evalcode import (
    Codeword,
    EvalModel,
    build_eval_model,
    constacyclic_shift,
    encode,
    generator_matrix,
    membership,
    orbit_weight_check,
)
from .witnesses import (
    FlagSupport,
    PencilSpec,
    cylinder,
    flag_support,
    pencil,
    pencil_spec,
    root_product,
    standard_flag,
)
from .distance import (
    DistanceReport,
    block_table,
    build_report,
    exact_distance,
    first_layer_scan,
    footprint_product,
    kappa,
    min_distance_exhaustive,
    min_distance_support_search,
    residue_layer_distance,
    rm_weights,
    sdw_bounds,
)

__version__ = "0.1.0"
