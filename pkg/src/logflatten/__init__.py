"""Exact tools for lattice monoids, polyhedral fans, monoid ideals,
chart-level blow-ups, and flattening certificates."""

__version__ = "0.1.0"

from .blowup import BlowupModel, blow_up, chart_monoid, subdivision_to_ideal
from .flatten import (
    FlattenOptions,
    FlatteningCertificate,
    flatten,
    flattening_ideal,
    ray_support_function,
    verify_certificate,
)
from .homs import (
    IntegralityVerdict,
    MonoidHom,
    compose,
    identity_hom,
    is_exact,
    is_integral,
    is_integral_bounded,
    is_local,
    multiplication_map,
    pushout_fine,
    pushout_fs,
    sharpen,
)
from .ideals import (
    MonoidIdeal,
    SupportFunction,
    extend,
    ideal_contains,
    ideal_of_support_function,
    is_principal,
    linearity_fan,
    minimal_generators,
    product,
    support_function,
    support_function_of_ideal,
    unit_ideal,
)
from .lattice import (
    dual_basis,
    extend_to_basis,
    hermite_normal_form,
    primitive,
    smith_normal_form,
    solve_nonneg,
)
from .monoids import (
    FineMonoid,
    cone_of,
    free_monoid,
    hilbert_basis,
    is_saturated,
    is_sharp,
    monoid,
    monoid_contains,
    quotient,
    saturate,
    units,
)
from .polyhedra import (
    Cone,
    Fan,
    FanMap,
    common_refinement_with_preimage,
    dual_cone,
    face_fan,
    faces,
    fan_from_cones,
    is_smooth,
    maps_cones_onto_cones,
    resolve_to_smooth,
    stellar_subdivision,
)
from .serialize import canonical_json, digest

__all__ = [
    "BlowupModel",
    "Cone",
    "Fan",
    "FanMap",
    "FineMonoid",
    "FlattenOptions",
    "FlatteningCertificate",
    "IntegralityVerdict",
    "MonoidHom",
    "MonoidIdeal",
    "SupportFunction",
    "blow_up",
    "canonical_json",
    "chart_monoid",
    "common_refinement_with_preimage",
    "compose",
    "cone_of",
    "digest",
    "dual_basis",
    "dual_cone",
    "extend",
    "extend_to_basis",
    "face_fan",
    "faces",
    "fan_from_cones",
    "flatten",
    "flattening_ideal",
    "free_monoid",
    "hermite_normal_form",
    "hilbert_basis",
    "ideal_contains",
    "ideal_of_support_function",
    "identity_hom",
    "is_exact",
    "is_integral",
    "is_integral_bounded",
    "is_local",
    "is_principal",
    "is_saturated",
    "is_sharp",
    "is_smooth",
    "linearity_fan",
    "maps_cones_onto_cones",
    "minimal_generators",
    "monoid",
    "monoid_contains",
    "multiplication_map",
    "primitive",
    "product",
    "pushout_fine",
    "pushout_fs",
    "quotient",
    "ray_support_function",
    "resolve_to_smooth",
    "saturate",
    "sharpen",
    "smith_normal_form",
    "solve_nonneg",
    "stellar_subdivision",
    "subdivision_to_ideal",
    "support_function",
    "support_function_of_ideal",
    "unit_ideal",
    "units",
    "verify_certificate",
]
