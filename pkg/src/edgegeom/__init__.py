"""edgegeom: jets, plane-curve germs, singular surface edges, and their invariants.

A symbolic-numeric toolkit that classifies m-type and (m,n)-type surface
edges, reduces surface and plane-curve germs to normal form, computes
cuspidal curvatures, biases, singular/normal curvature, cuspidal torsion,
Gaussian/mean curvature orders, and the (normalized) curvature invariants
of curves passing through the singular point, with exact rational order
arithmetic cross-checked by numeric sampling.
"""

from .jets import (
    FLOAT,
    RATIONAL,
    Jet1,
    Jet2,
    JetError,
    NeedsFloat,
    Vec3,
    invert_map2,
)
from .orders import (
    OrderValue,
    QuotientExpr,
    numeric_order,
    rational_order,
    richardson_limit,
    sample_grid,
)
from .plane_curves import (
    CurveNormalForm,
    PlaneCurveGerm,
    PreconditionError,
    ScaledPower,
    bias_behavior,
    closed_form_oracle_m3,
    curve_normal_form,
    cuspidal_curvature,
    mn_type,
    multiplicity,
    normalized_plane_curvature,
    psi_series_oracle,
    r_closed_form_general,
)
from .edge_model import (
    AdaptedEdge,
    Classification,
    EdgeNormalForm,
    adapt,
    check_criteria,
    classify,
    surface_normal_form,
)
from .edge_invariants import (
    VectorField,
    fundamental_forms,
    gauss_mean_orders,
    is_front,
    kappa_s_nu_t,
    kappa_t_general,
    omega,
    omega_general,
)
from .curve_on_edge import (
    ContactData,
    LaurentInvariant,
    contact_data,
    kg_kn_tg,
    normalized_kg_kn_tg,
    predict_orders,
    sample_graphs,
    transform_curve,
    verify_orders,
)
from .cli import GermSpec, SpecError, load_spec, parse_spec

__version__ = "0.1.0"
