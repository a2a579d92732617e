"""Incomplete mutually orthogonal latin squares and the designs that build them."""
from __future__ import annotations

from .admissibility import (
    alpha_beta,
    design_conditions,
    gdd_admissible,
    igdd_admissible,
    imols_bound,
    ipbd_admissible,
    ipbd_inequality,
    ipbd_inequality_tight,
    pbd_admissible,
    rpbd_admissible,
)
from .compositions import (
    ConstructionError,
    MissingIngredient,
    fill_gdd,
    fill_hole,
    fill_igdd,
    glue_ipbd,
    glue_pbd,
    ipbd_from_resolvable,
    replace_blocks,
    truncate_group,
    wilson_expand,
)
from .core import (
    BlockDesign,
    BlockSizeSet,
    ConstructionPlan,
    DesignError,
    GroupedDesign,
    IncompleteSquare,
    PlanNode,
    SquareSet,
)
from .formats import (
    FormatError,
    design_from_json,
    emit_design,
    emit_json,
    emit_square,
    emit_square_set,
    parse_design,
    parse_square,
    parse_square_set,
)
from .galois import FieldError, affine_plane, field, idempotent_mols, mols_from_field, mols_from_td, td_from_mols
from .planner import (
    DecompositionError,
    PlanError,
    decompose_difference,
    find_q,
    mols_plan,
    plan_imols,
    recur_ratio_params,
    table1_congruences,
)
from .search import Outcome, SearchResult, search_block_design, search_square_set
from .verify import (
    Report,
    verify_block_design,
    verify_grouped_design,
    verify_idempotent,
    verify_incomplete_latin,
    verify_orthogonal,
    verify_resolution,
    verify_square_set,
)

__version__ = "0.1.0"
