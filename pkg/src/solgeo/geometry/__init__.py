"""Geometry of Sol^4_0 and its hypersurfaces."""

from . import families, hypersurface, normal_forms, ode, oracles, solgroup

from .solgroup import (
    IDENTITY,
    METRIC,
    Isometry,
    LeftTranslation,
    Metric4,
    Point,
    TangentVector,
    VectorFieldFn,
    XYRotation,
    ZReflection,
    apply_Jminus,
    apply_Jplus,
    apply_P,
    covariant_derivative,
    curvature_apply,
    curvature_invariant,
    curvature_table,
    curvature_tensor,
    frame_at,
    group_inv,
    group_mul,
    isometry_check,
    lie_bracket_frame,
    metric_eval,
    nabla_E4,
    nabla_frame,
    nabla_J,
    nabla_P,
    nijenhuis,
    sectional_curvature,
)

from .oracles import (
    ClosednessSweep,
    OracleReport,
    closedness_sweep,
    curvature_direct_oracle,
    dform_closedness_oracle,
    exterior_derivative,
    koszul_oracle,
    nabla_tensor_oracle,
    run_suite,
)

from .hypersurface import (
    FundamentalForms,
    GaussCodazziResidual,
    Immersion,
    ambient_derivatives,
    classify,
    coordinate_tangents,
    gauss_codazzi_check,
    gauss_formula_christoffel,
    induced_christoffel,
    induced_metric,
    induced_sectional_curvature,
    intrinsic_curvature,
    nabla_h,
    second_fundamental_form,
    shape_operator,
    umbilical_codazzi_residual,
    unit_normal,
    weingarten_residual,
)

from .normal_forms import (
    NormalForm,
    codazzi_normal_form,
    codazzi_obstruction,
    umbilical_normal_form,
)

from .families import (
    BetaSolution,
    PlaneCurve,
    UmbilicalProfile,
    beta_closed_form,
    cylinder_normal_curvature,
    family_cylinder,
    family_t_plane,
    family_umbilical,
    family_vertical_plane,
    family_z_plane,
    family_zt_curve,
    mean_curvature_closed_form,
    mean_curvature_vector_closed_form,
    ode_residual,
    plane_curve_curvature,
    profile_normal_curvature,
    solve_beta,
    umbilical_profile,
    zt_curve_normal,
)

__all__ = [
    "solgroup",
    "oracles",
    "hypersurface",
    "normal_forms",
    "families",
    "ode",
    "Point",
    "IDENTITY",
    "TangentVector",
    "VectorFieldFn",
    "Metric4",
    "METRIC",
    "group_mul",
    "group_inv",
    "frame_at",
    "metric_eval",
    "lie_bracket_frame",
    "nabla_frame",
    "covariant_derivative",
    "curvature_table",
    "curvature_tensor",
    "curvature_apply",
    "curvature_invariant",
    "sectional_curvature",
    "apply_Jplus",
    "apply_Jminus",
    "apply_P",
    "nijenhuis",
    "nabla_J",
    "nabla_P",
    "nabla_E4",
    "Isometry",
    "LeftTranslation",
    "XYRotation",
    "ZReflection",
    "isometry_check",
    "OracleReport",
    "koszul_oracle",
    "curvature_direct_oracle",
    "exterior_derivative",
    "dform_closedness_oracle",
    "ClosednessSweep",
    "closedness_sweep",
    "nabla_tensor_oracle",
    "run_suite",
    "Immersion",
    "FundamentalForms",
    "GaussCodazziResidual",
    "coordinate_tangents",
    "unit_normal",
    "induced_metric",
    "ambient_derivatives",
    "second_fundamental_form",
    "shape_operator",
    "induced_christoffel",
    "gauss_formula_christoffel",
    "intrinsic_curvature",
    "nabla_h",
    "gauss_codazzi_check",
    "weingarten_residual",
    "umbilical_codazzi_residual",
    "induced_sectional_curvature",
    "classify",
    "NormalForm",
    "codazzi_obstruction",
    "codazzi_normal_form",
    "umbilical_normal_form",
    "PlaneCurve",
    "plane_curve_curvature",
    "family_z_plane",
    "family_t_plane",
    "family_vertical_plane",
    "family_cylinder",
    "cylinder_normal_curvature",
    "BetaSolution",
    "solve_beta",
    "beta_closed_form",
    "UmbilicalProfile",
    "umbilical_profile",
    "family_zt_curve",
    "family_umbilical",
    "zt_curve_normal",
    "ode_residual",
    "profile_normal_curvature",
    "mean_curvature_closed_form",
    "mean_curvature_vector_closed_form",
]
