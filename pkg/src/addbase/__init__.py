"""Additive-basis analysis on finite abelian groups.

Exact sumset arithmetic over dense bitmasks, basis-order and exceptional
element classification via the difference-closure criterion, generators for
the extremal constructions, and exhaustive desk-scale verification of every
bound the package computes.
"""

from ._version import __version__
from .analysis import (
    BadElementReport,
    BoundReport,
    ClassificationReport,
    bad_element_report,
    bound_report,
    bound_x_general,
    bound_x_torsion,
    classify,
    is_basis,
    max_exceptional_count,
    quotient_size_profile,
    removal_witness,
    torsion_cover_check,
    z_profile,
)
from .constructions import (
    DirectSumModel,
    Vs2Check,
    WitnessRecord,
    balanced_ternary,
    fpt_example,
    fpt_extremal_element,
    fpt_params,
    minimal_basis_model,
    minimality_witness_candidate,
    search_x_lower_witness,
    ternary_value,
    vs2_nice_check,
    vsd_basis,
    x_lower_target,
)
from .groups import (
    FiniteAbelianGroup,
    GroupSubset,
    QuotientGroup,
    Subgroup,
    make_group,
    multiples_subgroup,
    parse_group_spec,
    poly_group,
    prime_factor_count,
    quotient_view,
    subgroup_closure,
    subgroup_from_subset,
    symmetric_transversal,
    vector_group,
)
from .sumsets import (
    OrderProfile,
    TruncationWindow,
    difference_set,
    fold_sumset,
    full_window,
    generated_subgroup,
    intersection_chain_check,
    lift_set,
    order_profile,
    set_fold_cache_budget,
    sumset,
    weak_union,
    windowed_covers,
)

__all__ = [name for name in dir() if not name.startswith("_")]
