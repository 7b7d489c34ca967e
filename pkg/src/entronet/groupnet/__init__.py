"""Group-labelled planar networks, twisted evaluations, and cohomology tools."""

from .groups import GModule, Group, GroupValidationError, UElt
from .cohomology import (
    Cocycle1,
    Cocycle2,
    SizeBoundExceeded,
    central_extension,
    coboundary1,
    coboundary2,
    h_solver,
    h_exhaustive,
    is_coboundary2,
    shift_by_coboundary,
    smith_normal_form,
    verify_cocycle1,
    verify_cocycle2,
    is_normalized,
)
from .diagrams import (
    GCapLR,
    GCapRL,
    GCupLR,
    GCupRL,
    GDiagram,
    GDot,
    GFlip,
    GPt,
    T2MergeLL,
    T2MergeRR,
    T2SplitLL,
    T2SplitRR,
    VMergeL,
    VMergeR,
    VSplitL,
    VSplitR,
    eval_alpha_c,
    eval_alpha_cf,
    eval_alpha_f,
    eval_alpha_u,
    g_winding,
    validate_gdiagram,
)
from .catalog import (
    BoundedMonoidCocycle,
    ProbSpace,
    binomial_cocycle,
    carry,
    fontene_ward,
    pmi_cocycle,
    witt,
)

__all__ = [name for name in dir() if not name.startswith("_")]
