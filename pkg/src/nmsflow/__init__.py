"""Exact-arithmetic classification of flows with one twisted saddle orbit.

The library decides topological equivalence of such flows from their
integer invariant tuples, identifies the ambient 3-manifold, checks
every identification against an independent first-homology oracle, and
enumerates/audits the equivalence-class censuses.
"""

from .homology import (
    AbelianGroup,
    H1MatchReport,
    IntMatrix,
    SurgeryPresentation,
    group_from_presentation,
    h1_match_report,
    h1_of_descriptor,
    smith_normal_form,
    surgery_group,
    surgery_presentation,
)
from .intlat import (
    CurveClass,
    GluingMatrix,
    congruent,
    dual_curve,
    ext_gcd,
    intersection_index,
    inverse_equipment,
    least_residue,
    symmetric_inverse,
    symmetric_residue,
)
from .invariant import (
    ConsistencyWitness,
    FlowInvariant,
    apply_witness,
    canonical_form,
    consistency_witness,
    consistent,
    is_admissible,
    orbit_members,
    parse_invariant,
    render_invariant,
)
from .census import (
    CensusReport,
    CensusWindow,
    ClassCount,
    audit,
    census_report,
    count_classes,
    representatives,
)
from .manifold import (
    LensSpace,
    LensSumRP3,
    Manifold,
    SeifertFibration,
    ambient_branch,
    ambient_manifold,
    lens_homeomorphic,
    lens_normal_form,
    manifold_homeomorphic,
    parse_manifold,
    render_manifold,
    seifert_isomorphic,
    seifert_isomorphism,
    seifert_normalize,
    seifert_to_lens,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "CensusReport",
    "CensusWindow",
    "ClassCount",
    "ConsistencyWitness",
    "CurveClass",
    "FlowInvariant",
    "GluingMatrix",
    "H1MatchReport",
    "IntMatrix",
    "LensSpace",
    "LensSumRP3",
    "Manifold",
    "SeifertFibration",
    "SurgeryPresentation",
    "ambient_branch",
    "ambient_manifold",
    "apply_witness",
    "audit",
    "canonical_form",
    "census_report",
    "congruent",
    "consistency_witness",
    "consistent",
    "count_classes",
    "dual_curve",
    "ext_gcd",
    "group_from_presentation",
    "h1_match_report",
    "h1_of_descriptor",
    "intersection_index",
    "inverse_equipment",
    "is_admissible",
    "least_residue",
    "lens_homeomorphic",
    "lens_normal_form",
    "manifold_homeomorphic",
    "orbit_members",
    "parse_invariant",
    "parse_manifold",
    "render_invariant",
    "render_manifold",
    "representatives",
    "seifert_isomorphic",
    "seifert_isomorphism",
    "seifert_normalize",
    "seifert_to_lens",
    "smith_normal_form",
    "surgery_group",
    "surgery_presentation",
    "symmetric_inverse",
    "symmetric_residue",
]
