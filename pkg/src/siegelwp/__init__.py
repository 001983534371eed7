"""Composition operators of circle maps on a truncated Fourier model,
their block structure, the induced disc geometry, and hyperbolic-area
integrals of Beltrami coefficients.
"""

from .beltrami import (
    BeltramiField,
    DiscGrid,
    HolomorphicPolynomial,
    beltrami_of_grid_map,
    field_from_csv_text,
    field_to_csv_text,
    harmonic_beltrami,
    harmonic_beltrami_values,
    hyperbolic_l2,
    linear_dilatation,
    monomial_norm_exact,
    wp_pairing,
)
from .circlemaps import (
    CircleMap,
    ComposedMap,
    FlowMap,
    InverseMap,
    MoebiusMap,
    SampledLift,
    VectorField,
    compose,
    fit_moebius_three_points,
    flow_map,
    invert,
    map_from_spec,
    normalize_fixing_three_points,
    qs_grid,
    qs_profile,
    qs_ratio,
)
from .composition import (
    SymplecticBlockMatrix,
    action_composition_residual,
    block_decompose,
    block_relation_defects,
    composition_matrix,
    hs_offdiag,
    symplectic_defect,
)
from .errors import (
    AliasingError,
    ConfigError,
    DivergenceError,
    GridMismatchError,
    IllConditionedError,
    MonotonicityError,
)
from .fourier import (
    FourierVector,
    analyze,
    h_half_inner,
    hilbert_transform,
    modes_for,
    project,
    symplectic_form,
    synthesize,
)
from .siegel import (
    DiscDiagnostics,
    SiegelPoint,
    disc_membership,
    hyperbolic_metric,
    metric_at_zero,
    moebius_action,
    period_point,
    su11_block,
    su11_orbit,
)
from .wp import (
    MetricForms,
    PullbackStudy,
    project_psu11,
    pullback_ratio,
    pullback_study,
    tangent_period,
    wp_forms,
)

__version__ = "0.1.0"

__all__ = [
    "AliasingError",
    "BeltramiField",
    "CircleMap",
    "ComposedMap",
    "ConfigError",
    "DiscDiagnostics",
    "DiscGrid",
    "DivergenceError",
    "FlowMap",
    "FourierVector",
    "GridMismatchError",
    "HolomorphicPolynomial",
    "IllConditionedError",
    "InverseMap",
    "MetricForms",
    "MoebiusMap",
    "MonotonicityError",
    "PullbackStudy",
    "SampledLift",
    "SiegelPoint",
    "SymplecticBlockMatrix",
    "VectorField",
    "action_composition_residual",
    "analyze",
    "beltrami_of_grid_map",
    "block_decompose",
    "block_relation_defects",
    "compose",
    "composition_matrix",
    "disc_membership",
    "field_from_csv_text",
    "field_to_csv_text",
    "fit_moebius_three_points",
    "flow_map",
    "h_half_inner",
    "harmonic_beltrami",
    "harmonic_beltrami_values",
    "hilbert_transform",
    "hs_offdiag",
    "hyperbolic_l2",
    "hyperbolic_metric",
    "invert",
    "linear_dilatation",
    "map_from_spec",
    "metric_at_zero",
    "modes_for",
    "moebius_action",
    "monomial_norm_exact",
    "normalize_fixing_three_points",
    "period_point",
    "project",
    "project_psu11",
    "pullback_ratio",
    "pullback_study",
    "qs_grid",
    "qs_profile",
    "qs_ratio",
    "su11_block",
    "su11_orbit",
    "symplectic_defect",
    "symplectic_form",
    "synthesize",
    "tangent_period",
    "wp_forms",
    "wp_pairing",
]
