"""cfdyn: exact continued-fraction dynamics on the hyperbolic boundary.

The package implements the regular and even continued-fraction systems
(Gauss/Farey maps and their even counterparts), their natural extensions,
the cross-section maps on geodesic endpoint pairs, geodesic cutting
sequences against the even tessellation, and the invariant densities,
with every identity checkable in exact rational arithmetic.
"""

from .boundary import (
    INFINITY,
    BoundaryPoint,
    DomainError,
    Surd,
    bp_abs,
    bp_compare,
    bp_floor,
    bp_sign,
    bp_to_float,
    make_surd,
    parse_boundary_point,
    rational_arith,
    render_boundary_point,
)
from .moebius import Moebius, apply, compose, derivative_at, group_membership, inverse
from .cf import (
    RcfExpansion,
    farey_natext_step,
    farey_slowdown_check,
    farey_step,
    gauss_natext_step,
    gauss_step,
    rcf_eval,
    rcf_expand,
)
from .ecf import (
    EcfDigit,
    EcfExpansion,
    ExtDigit,
    ExtEcfExpansion,
    ecf_eval,
    ecf_expand,
    even_farey_natext_step,
    even_farey_step,
    even_gauss_natext_step,
    even_gauss_step,
    even_slowdown_check,
    ext_ecf_eval,
    ext_ecf_expand,
)
from .section import (
    CuspError,
    EndpointPair,
    SignedSquarePoint,
    conjugacy_table,
    lehner_dual_natext_step,
    lehner_dual_step,
    lehner_natext_step,
    lehner_step,
    rho_e_step,
    rho_step,
    sigma_L_step,
    sigma_e_step,
    sigma_step,
    tilde_even_farey_step,
    tilde_even_gauss_step,
    verify_conjugacy,
)
from .cutting import (
    CuttingSequence,
    TessellationEdge,
    cell_walk,
    classify_farey_edge,
    classify_point,
    even_sequence_from_digits,
    even_sequence_geometric,
    recode_series_to_even,
    series_sequence_from_digits,
    xi_eta_points,
)
from .measure import (
    birkhoff_average,
    density_eval,
    gauss_total_mass,
    marginal_check,
    pushforward_residual,
)

__version__ = "0.1.0"
