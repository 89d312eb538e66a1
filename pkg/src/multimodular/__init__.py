"""Multimodular and L-natural convex functions on integer lattices.

Build functions (:mod:`~multimodular.core`), move between the multimodular
and L-natural worlds (:mod:`~multimodular.transforms`), check the defining
inequalities exactly (:mod:`~multimodular.checks`), apply the closure
operations (:mod:`~multimodular.ops`) and minimize
(:mod:`~multimodular.minimize`).
"""

from .core import (
    INF,
    ConstructionError,
    IndicatorSet,
    IntBox,
    QuadraticFunction,
    SeparableFunction,
    TableFunction,
    Witness,
    effective_domain,
    evaluate,
    materialize,
)
from .checks import (
    Verdict,
    direction_set_F,
    is_L_class,
    is_L_convex,
    is_lnat,
    is_lnat_set,
    is_multimodular,
    is_multimodular_set,
    is_quadratic_multimodular,
    is_submodular,
    multimodular_hull,
    validate_witness,
)
from .transforms import (
    bidiagonal_D,
    conjugate_quadratic,
    from_lnat,
    inverse_D,
    lift_lnat,
    lift_multimodular,
    reversal_T,
    reverse_lnat,
    to_lnat,
)
from .ops import (
    add,
    add_linear,
    convolve,
    minkowski_sum,
    negate_vars,
    permute_vars,
    project,
    restrict,
    reverse_vars,
    scale_values,
    scale_vars,
    shift,
    sweep_out,
)
from .minimize import brute_min, check_local_global, directions_T, local_minimize

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
