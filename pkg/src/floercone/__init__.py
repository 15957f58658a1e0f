"""floercone: exact surgery mapping-cone computations over GF(2)[U]."""

from .algebra import (
    FilteredComplex,
    Generator,
    GradedRanks,
    ReducedForm,
    cancel_pair,
    check_complex,
    homology,
    reduce,
)
from .cone import HatCone, MappingCone, build_cone, hat, include_B, sector_homology
from .contact import (
    DgsExpansion,
    LegendrianData,
    distinctness_pipeline,
    negative_expansion,
    positive_expansion,
)
from .dual import DualCone, build_dual_cone, distinct_classes, g_map, loss_grading, normal_form
from .models import (
    alexander_polynomial,
    box,
    dual_normal_form_model,
    flip,
    hat_knot_homology,
    hfk_minus,
    minus_twist_knot,
    mirror,
    staircase,
    unknot,
)

__version__ = "0.1.0"

__all__ = [
    "FilteredComplex", "Generator", "GradedRanks", "ReducedForm",
    "cancel_pair", "check_complex", "homology", "reduce",
    "HatCone", "MappingCone", "build_cone", "hat", "include_B", "sector_homology",
    "DgsExpansion", "LegendrianData", "distinctness_pipeline",
    "negative_expansion", "positive_expansion",
    "DualCone", "build_dual_cone", "distinct_classes", "g_map",
    "loss_grading", "normal_form",
    "alexander_polynomial", "box", "dual_normal_form_model", "flip",
    "hat_knot_homology", "hfk_minus", "minus_twist_knot", "mirror",
    "staircase", "unknot",
]
